#pragma once

#include <cstdint>
#include <stdexcept>

namespace phidescent {

/// Deterministic primality test for the full 64-bit range (Miller-Rabin with
/// the first twelve prime bases).
bool is_prime(std::uint64_t m);

/// An odd prime p >= 3. Construction validates primality.
class OddPrime {
 public:
  explicit OddPrime(std::uint64_t value);

  std::uint64_t value() const { return value_; }
  operator std::uint64_t() const { return value_; }

  friend auto operator<=>(const OddPrime&, const OddPrime&) = default;

 private:
  std::uint64_t value_;
};

/// Jacobi symbol (a/n) for odd n >= 1, by binary reciprocity.
int jacobi(std::uint64_t a, std::uint64_t n);

/// Legendre symbol (a/p) in {-1, 0, +1}. Negative a is handled by pulling
/// out (-1/p).
int legendre(std::int64_t a, const OddPrime& p);

/// (-1/p) = (-1)^((p-1)/2)
int legendre_minus_one(const OddPrime& p);

/// (2/p) = (-1)^((p^2-1)/8)
int legendre_two(const OddPrime& p);

/// Least positive residue of an odd integer modulo 8, one of {1,3,5,7}.
/// Throws std::invalid_argument on even input.
int mod8(std::int64_t m);

/// (a * b) mod m without overflow.
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

}  // namespace phidescent
