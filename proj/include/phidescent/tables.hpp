#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "phidescent/local_descent.hpp"

namespace phidescent {

/// One row of the published n = 2 enumeration (D = pq), entries verbatim.
struct PrintedRow {
  int p_mod8;
  int q_mod8;
  int p_over_q;
  int q_over_p;
  const char* first;   // table 1: S(E_-);  table 2: S(E'_+)
  const char* second;  // table 1: S(E'_-); table 2: S(E_+)
};

const std::vector<PrintedRow>& printed_table(int table);

/// Families of the two entry columns of a table, by header meaning.
std::pair<CurveFamily, CurveFamily> table_columns(int table);

/// Parses a printed entry such as "1,-p,2q,-2pq" with p and q substituted.
/// Tolerates '.' as a separator and a missing comma before '-'.
std::vector<std::int64_t> parse_table_entry(std::string_view entry, std::int64_t p,
                                            std::int64_t q);

/// A known misprint: `token` appears in the printed entry but does not belong.
struct Erratum {
  int table;
  int row;     // 0-based
  int column;  // 0 = first entry column, 1 = second
  const char* token;
  const char* reason;
};

const std::vector<Erratum>& table_errata();

enum class RowStatus { pass, pass_with_erratum, fail, inconclusive };

std::string to_string(RowStatus status);

struct RowResult {
  int table = 0;
  int row = 0;
  PrintedRow printed{};
  std::optional<std::pair<std::uint64_t, std::uint64_t>> witness;
  RowStatus status = RowStatus::inconclusive;
  std::string detail;
};

/// Finds the first (p, q) below max_prime (p ascending, then q) with the
/// row's residues mod 8 and (p/q), then compares the oracle's full Selmer
/// groups with the printed entries as sets of square classes.
RowResult verify_row(int table, int row, std::uint64_t max_prime);

std::vector<RowResult> verify_tables(std::uint64_t max_prime);

}  // namespace phidescent
