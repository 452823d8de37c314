#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "phidescent/records.hpp"

namespace phidescent {

/// Odd primes p with 3 <= p < bound.
std::vector<std::uint64_t> odd_primes_below(std::uint64_t bound);

/// Every product of 1..n_max distinct odd primes below prime_bound, as
/// squarefree FactoredD values in ascending order of D.
std::vector<FactoredD> enumerate_d(std::uint64_t prime_bound, std::size_t n_max);

struct SieveOptions {
  std::uint64_t prime_bound = 100;
  std::size_t n_max = 3;
  Format format = Format::csv;
  bool flagged_only = false;
  bool with_members = false;
  std::size_t parallel = 1;
};

struct SieveStats {
  std::size_t analyzed = 0;
  std::size_t emitted = 0;
  std::size_t rank0 = 0;
  std::size_t rank1_conditional = 0;
};

/// Analyzes every D in range across `parallel` workers and writes records in
/// ascending D order; output is identical for any worker count. With
/// flagged_only, only rank0 or rank1_conditional rows are written.
SieveStats run_sieve(const SieveOptions& options, std::ostream& out);

struct Mismatch {
  std::string D;
  std::string family;
  std::string what;
  std::optional<std::int64_t> d;

  std::string describe() const;
};

/// Compares fast and oracle Selmer groups for one D: restricted and full
/// member sets, per-element membership predicates, and group sizes.
std::optional<Mismatch> crosscheck_one(const FactoredD& ctx);

struct CrosscheckSummary {
  std::size_t tested = 0;
  std::optional<Mismatch> first_mismatch;
};

/// crosscheck_one over enumerate_d(prime_bound, n_max), stopping at the
/// first mismatch. n_max must be within the oracle bound.
CrosscheckSummary crosscheck(std::uint64_t prime_bound, std::size_t n_max);

}  // namespace phidescent
