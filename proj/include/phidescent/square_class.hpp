#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "phidescent/arith.hpp"
#include "phidescent/bit_matrix.hpp"

namespace phidescent {

/// D = p_1^e_1 ... p_n^e_n with distinct odd primes and e_i in {1, 3}.
/// Primes are stored in increasing order; the constructor sorts its input.
class FactoredD {
 public:
  /// Exponents default to all 1. Throws std::invalid_argument naming the
  /// offending value for non-prime, even, duplicate or badly-exponented input.
  explicit FactoredD(std::vector<std::uint64_t> primes, std::vector<int> exponents = {});

  std::size_t n() const { return primes_.size(); }
  const std::vector<OddPrime>& primes() const { return primes_; }
  const std::vector<int>& exponents() const { return exponents_; }
  const OddPrime& prime(std::size_t i) const { return primes_[i]; }
  int exponent(std::size_t i) const { return exponents_[i]; }

  std::optional<std::size_t> index_of(std::uint64_t p) const;

  /// D as a 64-bit integer, or nullopt if it does not fit.
  std::optional<std::int64_t> value() const;
  /// D in decimal, at any size.
  std::string value_string() const;
  /// D mod 8 (exponents honored).
  int value_mod8() const;

  /// Same D with every exponent reset to 1.
  FactoredD squarefree() const;

  bool same_primes(const FactoredD& other) const { return primes_ == other.primes_; }
  friend bool operator==(const FactoredD&, const FactoredD&) = default;

 private:
  std::vector<OddPrime> primes_;
  std::vector<int> exponents_;
};

/// Element of Q(S,2) = <-1, 2, p_1..p_n> in Q^x / Q^x2. The group law is XOR on
/// all three fields.
struct SquareClass {
  bool sign = false;
  bool two = false;
  BitVector mask;

  static SquareClass identity(std::size_t n) { return {false, false, BitVector(n)}; }
  static SquareClass of_prime(std::size_t n, std::size_t index);
  static SquareClass minus_one(std::size_t n) { return {true, false, BitVector(n)}; }

  std::size_t width() const { return mask.size(); }
  bool is_identity() const { return !sign && !two && mask.none(); }
  bool in_q2d() const { return !sign && !two; }
  bool in_q_minus_2d() const { return !two; }

  friend bool operator==(const SquareClass&, const SquareClass&) = default;
  /// Ordered by (sign, two, mask as an integer), the order enumerate_subgroup
  /// produces.
  friend bool operator<(const SquareClass& a, const SquareClass& b);
};

/// Throws std::invalid_argument when the widths differ.
SquareClass multiply(const SquareClass& a, const SquareClass& b);
inline SquareClass operator*(const SquareClass& a, const SquareClass& b) { return multiply(a, b); }

/// Square class of a nonzero integer whose odd prime support lies in ctx.
SquareClass class_of(std::int64_t value, const FactoredD& ctx);

/// The class of sign * 2D.
SquareClass class_of_two_d(const FactoredD& ctx, int sign);

/// Canonical signed representative (-1)^sign 2^two prod_{i in mask} p_i.
/// Throws std::overflow_error if it does not fit in 64 bits.
std::int64_t representative(const SquareClass& d, const FactoredD& ctx);

/// Canonical representative modulo 8; d must be odd (no factor 2).
int representative_mod8(const SquareClass& d, const FactoredD& ctx);

std::string to_string(const SquareClass& d, const FactoredD& ctx);

/// members union multiplier * members, sorted. The multiplier must not lie in
/// members (for a subgroup, that is the same as lying outside its span).
std::vector<SquareClass> coset_expand(const std::vector<SquareClass>& members,
                                      const SquareClass& multiplier);

enum class Subgroup { q2d, q_minus_2d, full };

inline constexpr std::size_t kDefaultEnumerationBound = 20;

/// Every class of the chosen subgroup, sign outermost, then the factor 2, then
/// the prime mask counting upward.
std::vector<SquareClass> enumerate_subgroup(const FactoredD& ctx, Subgroup which,
                                            std::size_t max_n = kDefaultEnumerationBound);

}  // namespace phidescent
