#include "phidescent/arith.hpp"

#include <array>
#include <string>

namespace phidescent {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool is_prime(std::uint64_t m) {
  if (m < 2) return false;
  static constexpr std::array<std::uint64_t, 12> kBases = {2,  3,  5,  7,  11, 13,
                                                           17, 19, 23, 29, 31, 37};
  for (std::uint64_t p : kBases) {
    if (m % p == 0) return m == p;
  }
  std::uint64_t d = m - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are a deterministic witness set for m < 3.3e24.
  for (std::uint64_t a : kBases) {
    std::uint64_t x = powmod(a, d, m);
    if (x == 1 || x == m - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, m);
      if (x == m - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

OddPrime::OddPrime(std::uint64_t value) : value_(value) {
  if (value < 3 || value % 2 == 0 || !is_prime(value)) {
    throw std::invalid_argument("not an odd prime: " + std::to_string(value));
  }
}

int jacobi(std::uint64_t a, std::uint64_t n) {
  if (n == 0 || n % 2 == 0) throw std::invalid_argument("jacobi: modulus must be odd");
  a %= n;
  int t = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      std::uint64_t r = n % 8;
      if (r == 3 || r == 5) t = -t;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) t = -t;
    a %= n;
  }
  return n == 1 ? t : 0;
}

int legendre_minus_one(const OddPrime& p) { return p.value() % 4 == 1 ? 1 : -1; }

int legendre_two(const OddPrime& p) {
  std::uint64_t r = p.value() % 8;
  return (r == 1 || r == 7) ? 1 : -1;
}

int legendre(std::int64_t a, const OddPrime& p) {
  if (a >= 0) return jacobi(static_cast<std::uint64_t>(a), p.value());
  // -a may not fit for INT64_MIN; go through unsigned negation.
  std::uint64_t magnitude = 0 - static_cast<std::uint64_t>(a);
  return legendre_minus_one(p) * jacobi(magnitude, p.value());
}

int mod8(std::int64_t m) {
  if (m % 2 == 0) throw std::invalid_argument("mod8: even input " + std::to_string(m));
  int r = static_cast<int>(m % 8);
  return r < 0 ? r + 8 : r;
}

}  // namespace phidescent
