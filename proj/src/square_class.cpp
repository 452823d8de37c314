#include "phidescent/square_class.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace phidescent {

FactoredD::FactoredD(std::vector<std::uint64_t> primes, std::vector<int> exponents) {
  if (primes.empty()) throw std::invalid_argument("D needs at least one prime factor");
  if (exponents.empty()) exponents.assign(primes.size(), 1);
  if (exponents.size() != primes.size()) {
    throw std::invalid_argument("got " + std::to_string(exponents.size()) + " exponents for " +
                                std::to_string(primes.size()) + " primes");
  }
  std::vector<std::size_t> order(primes.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return primes[a] < primes[b]; });
  for (std::size_t k = 0; k < order.size(); ++k) {
    std::uint64_t p = primes[order[k]];
    int e = exponents[order[k]];
    if (k > 0 && primes_.back().value() == p) {
      throw std::invalid_argument("duplicate prime: " + std::to_string(p));
    }
    if (e != 1 && e != 3) {
      throw std::invalid_argument("exponent must be 1 or 3, got " + std::to_string(e) +
                                  " for prime " + std::to_string(p));
    }
    primes_.emplace_back(p);
    exponents_.push_back(e);
  }
}

std::optional<std::size_t> FactoredD::index_of(std::uint64_t p) const {
  auto it = std::lower_bound(primes_.begin(), primes_.end(), p,
                             [](const OddPrime& a, std::uint64_t b) { return a.value() < b; });
  if (it == primes_.end() || it->value() != p) return std::nullopt;
  return static_cast<std::size_t>(it - primes_.begin());
}

std::optional<std::int64_t> FactoredD::value() const {
  std::int64_t acc = 1;
  for (std::size_t i = 0; i < n(); ++i) {
    for (int k = 0; k < exponents_[i]; ++k) {
      if (__builtin_mul_overflow(acc, static_cast<std::int64_t>(primes_[i].value()), &acc)) {
        return std::nullopt;
      }
    }
  }
  return acc;
}

std::string FactoredD::value_string() const {
  boost::multiprecision::cpp_int acc = 1;
  for (std::size_t i = 0; i < n(); ++i) {
    for (int k = 0; k < exponents_[i]; ++k) acc *= primes_[i].value();
  }
  return acc.str();
}

int FactoredD::value_mod8() const {
  int r = 1;
  for (std::size_t i = 0; i < n(); ++i) {
    for (int k = 0; k < exponents_[i]; ++k) r = r * static_cast<int>(primes_[i].value() % 8) % 8;
  }
  return r;
}

FactoredD FactoredD::squarefree() const {
  std::vector<std::uint64_t> ps;
  for (const auto& p : primes_) ps.push_back(p.value());
  return FactoredD(std::move(ps));
}

SquareClass SquareClass::of_prime(std::size_t n, std::size_t index) {
  SquareClass c = identity(n);
  c.mask.set(index);
  return c;
}

bool operator<(const SquareClass& a, const SquareClass& b) {
  if (a.sign != b.sign) return !a.sign;
  if (a.two != b.two) return !a.two;
  return a.mask < b.mask;
}

SquareClass multiply(const SquareClass& a, const SquareClass& b) {
  if (a.width() != b.width()) throw std::invalid_argument("square classes from different contexts");
  return {a.sign != b.sign, a.two != b.two, a.mask ^ b.mask};
}

SquareClass class_of(std::int64_t value, const FactoredD& ctx) {
  if (value == 0) throw std::invalid_argument("zero has no square class");
  SquareClass c = SquareClass::identity(ctx.n());
  c.sign = value < 0;
  std::uint64_t rest = value < 0 ? 0 - static_cast<std::uint64_t>(value) : value;
  while (rest % 2 == 0) {
    rest /= 2;
    c.two = !c.two;
  }
  for (std::size_t i = 0; i < ctx.n() && rest > 1; ++i) {
    std::uint64_t p = ctx.prime(i).value();
    while (rest % p == 0) {
      rest /= p;
      c.mask.flip(i);
    }
  }
  if (rest != 1) {
    throw std::invalid_argument(std::to_string(value) + " has prime factors outside D");
  }
  return c;
}

SquareClass class_of_two_d(const FactoredD& ctx, int sign) {
  SquareClass c = SquareClass::identity(ctx.n());
  c.sign = sign < 0;
  c.two = true;
  // Exponents are odd, so every prime of D survives mod squares.
  for (std::size_t i = 0; i < ctx.n(); ++i) c.mask.set(i);
  return c;
}

std::int64_t representative(const SquareClass& d, const FactoredD& ctx) {
  if (d.width() != ctx.n()) throw std::invalid_argument("square class from a different context");
  std::int64_t acc = d.two ? 2 : 1;
  for (std::size_t i : d.mask.ones()) {
    if (__builtin_mul_overflow(acc, static_cast<std::int64_t>(ctx.prime(i).value()), &acc)) {
      throw std::overflow_error("square class representative exceeds 64 bits");
    }
  }
  return d.sign ? -acc : acc;
}

int representative_mod8(const SquareClass& d, const FactoredD& ctx) {
  if (d.two) throw std::invalid_argument("representative_mod8: class contains the factor 2");
  int r = 1;
  for (std::size_t i : d.mask.ones()) r = r * static_cast<int>(ctx.prime(i).value() % 8) % 8;
  return d.sign ? (8 - r) % 8 : r;
}

std::string to_string(const SquareClass& d, const FactoredD& ctx) {
  return std::to_string(representative(d, ctx));
}

std::vector<SquareClass> coset_expand(const std::vector<SquareClass>& members,
                                      const SquareClass& multiplier) {
  if (std::find(members.begin(), members.end(), multiplier) != members.end()) {
    throw std::invalid_argument("coset_expand: multiplier already lies in the subgroup");
  }
  std::vector<SquareClass> out = members;
  out.reserve(2 * members.size());
  for (const auto& m : members) out.push_back(multiply(m, multiplier));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<SquareClass> enumerate_subgroup(const FactoredD& ctx, Subgroup which,
                                            std::size_t max_n) {
  const std::size_t n = ctx.n();
  if (n > max_n || n >= 62) {
    throw std::length_error("enumeration bound exceeded: n = " + std::to_string(n) +
                            " > " + std::to_string(max_n));
  }
  const int sign_options = which == Subgroup::q2d ? 1 : 2;
  const int two_options = which == Subgroup::full ? 2 : 1;
  std::vector<SquareClass> out;
  out.reserve(static_cast<std::size_t>(sign_options * two_options) << n);
  for (int s = 0; s < sign_options; ++s) {
    for (int t = 0; t < two_options; ++t) {
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
        SquareClass c = SquareClass::identity(n);
        c.sign = s != 0;
        c.two = t != 0;
        for (std::size_t i = 0; i < n; ++i) {
          if ((m >> i) & 1U) c.mask.set(i);
        }
        out.push_back(std::move(c));
      }
    }
  }
  return out;
}

}  // namespace phidescent
