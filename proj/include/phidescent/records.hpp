#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "phidescent/fast_descent.hpp"

namespace phidescent {

enum class Format { csv, json, text };

Format parse_format(const std::string& name);

/// One analyzed D, ready for output.
struct SieveRecord {
  DescentReport report;
  /// S(E_-), S(E'_-), S(E_+), S(E'_+) when members were requested.
  std::optional<std::array<SelmerGroup, 4>> members;
};

inline constexpr std::size_t kMemberListBound = 20;

/// Analyzes D (validating every report invariant) and optionally lists the
/// four full Selmer groups.
SieveRecord make_record(const FactoredD& ctx, bool with_members);

/// Literal marker carried by every rank-1 row.
inline constexpr const char* kConditionalNote = "conditional-BSD";

void write_csv_header(std::ostream& out, bool with_members);
void write_csv_row(std::ostream& out, const SieveRecord& record);
nlohmann::ordered_json to_json(const SieveRecord& record);
void write_text(std::ostream& out, const SieveRecord& record);

/// csv: one row; json: one object on one line; text: a short block.
void write_record(std::ostream& out, const SieveRecord& record, Format format);

/// "3;17", with "^3" on cubed primes.
std::string primes_field(const FactoredD& ctx);

}  // namespace phidescent
