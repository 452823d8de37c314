#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "phidescent/bit_matrix.hpp"
#include "phidescent/local_descent.hpp"
#include "phidescent/square_class.hpp"

namespace phidescent {

/// Bit i of g(d), d in Q_2D: Legendre symbol (d/p_i) when p_i does not divide
/// d and (2D/d / p_i) when it does, with -1 encoded as 1.
BitVector g_map(const SquareClass& d, const FactoredD& ctx);

/// Bit i of f(d), d in Q_-2D: as g_map with 2D replaced by -2D.
BitVector f_map(const SquareClass& d, const FactoredD& ctx);

/// n x n, row i = g(p_i), so entry (i, j) = x_j(p_i).
BitMatrix build_X(const FactoredD& ctx);

/// (n+1) x n, rows f(p_1) .. f(p_n) then f(-1).
BitMatrix build_Y(const FactoredD& ctx);

/// X and Y for one D, built once and shared by every membership query.
class SymbolTables {
 public:
  explicit SymbolTables(FactoredD ctx);

  const FactoredD& ctx() const { return ctx_; }
  std::size_t n() const { return ctx_.n(); }
  const BitMatrix& x_bits() const { return x_; }
  const BitMatrix& y_bits() const { return y_; }

  /// delta(d): sum of y_i(-1) over the primes dividing d.
  bool delta(const SquareClass& d) const;

 private:
  FactoredD ctx_;
  BitMatrix x_;
  BitMatrix y_;
};

/// d in s_-: the columns of Y indexed by the primes of d sum to zero.
bool fast_member_s_minus(const SquareClass& d, const SymbolTables& tables);

/// d in s'_-: the rows of Y indexed by the generators of d (row n for -1) sum
/// to zero.
bool fast_member_s_minus_prime(const SquareClass& d, const SymbolTables& tables);

/// For positive d1: if the columns of X indexed by the primes of d1 sum to
/// zero, the unique sign s with s*d1 in s_+ (+1 when d1 = 1 mod 8, -1 when
/// d1 = 7 mod 8); otherwise nullopt.
std::optional<int> fast_member_s_plus_pair(const SquareClass& d1, const SymbolTables& tables);

/// d in s'_+: the rows of X indexed by the primes of d sum to zero.
bool fast_member_s_plus_prime(const SquareClass& d, const SymbolTables& tables);

/// Membership of d in the restricted group of `family`, via the matching
/// fast_member_* predicate.
bool fast_member(CurveFamily family, const SquareClass& d, const SymbolTables& tables);

/// The restricted group built from a nullspace basis of X or Y (no
/// enumeration of Q(S,2)). Sizes are 2^(basis size), so keep n modest.
SelmerGroup fast_subgroup_selmer(CurveFamily family, const SymbolTables& tables);
SelmerGroup fast_full_selmer(CurveFamily family, const SymbolTables& tables);

/// log2 of |S(E_-)|, |S(E'_-)|, |S(E_+)|, |S(E'_+)|.
struct SelmerDims {
  std::size_t s_minus = 0;
  std::size_t s_minus_prime = 0;
  std::size_t s_plus = 0;
  std::size_t s_plus_prime = 0;

  std::size_t of(CurveFamily family) const;
  friend bool operator==(const SelmerDims&, const SelmerDims&) = default;
};

SelmerDims selmer_sizes(std::size_t rank_X, std::size_t rank_Y, std::size_t n);

/// 2^dim, or std::overflow_error past 63.
std::uint64_t pow2(std::size_t dim);

/// T = 2^(-t), kept as the exponent t so the ratio is exact at any size.
struct TamagawaRatio {
  int t = 0;

  std::string to_string() const;  // "1/2", "1", "2", ...
  friend bool operator==(const TamagawaRatio&, const TamagawaRatio&) = default;
};

struct TamagawaRatios {
  TamagawaRatio minus;  // |S(E_-)| / |S(E'_-)|
  TamagawaRatio plus;   // |S(E_+)| / |S(E'_+)|
};

/// Raised when a computed quantity contradicts a proven identity.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Ratios from the computed group sizes; throws InvariantViolation unless they
/// come out as 1/2 and 1.
TamagawaRatios tamagawa_ratios(const SelmerDims& dims);
TamagawaRatios tamagawa_ratios(const FactoredD& ctx);

struct DimensionSums {
  long minus = 0;  // 2n + 1 - 2 rank(Y)
  long plus = 0;   // 2n - 2 rank(X)
};
DimensionSums rank_dimension_sums(std::size_t rank_X, std::size_t rank_Y, std::size_t n);
DimensionSums rank_dimension_sums(const FactoredD& ctx);

struct SieveFlags {
  /// rank(X) = n: E_+ : y^2 = x^3 + 2Dx has Mordell-Weil rank 0.
  bool rank0 = false;
  /// rank(Y) = n: E_- : y^2 = x^3 - 2Dx has rank 1, assuming BSD and the
  /// root-number parity argument. Never unconditional.
  bool rank1_conditional = false;
};
SieveFlags sieve_flags(std::size_t rank_X, std::size_t rank_Y, std::size_t n);
SieveFlags sieve_flags(const FactoredD& ctx);

struct DescentReport {
  FactoredD ctx;
  std::size_t rank_X = 0;
  std::size_t rank_Y = 0;
  SelmerDims dims;
  TamagawaRatios tamagawa;
  DimensionSums dimsum;
  SieveFlags flags;

  /// Re-checks parities, size relations and ratios; throws InvariantViolation.
  void validate() const;
};

DescentReport analyze(const FactoredD& ctx);

}  // namespace phidescent
