#include <limits>
#include <utility>
#include <vector>

#include "phidescent/local_descent.hpp"

namespace phidescent {

int default_deep_precision(std::uint64_t place) { return place == 2 ? 12 : 8; }

namespace {

struct Quartic {
  // a X^4 + b Z^4, coefficients reduced modulo `modulus`.
  std::uint64_t a;
  std::uint64_t b;
};

std::uint64_t reduce_signed(bool negative, std::uint64_t magnitude, std::uint64_t modulus) {
  std::uint64_t r = magnitude % modulus;
  return negative && r != 0 ? modulus - r : r;
}

class PadicSquareSearch {
 public:
  PadicSquareSearch(std::uint64_t p, int depth, Quartic f)
      : p_(p), depth_(depth), f_(f) {
    modulus_ = 1;
    for (int k = 0; k < depth; ++k) {
      if (modulus_ > std::numeric_limits<std::uint64_t>::max() / 4 / p) {
        throw PrecisionError("deep_local_check: p^precision does not fit in 64 bits");
      }
      modulus_ *= p;
    }
    f_.a %= modulus_;
    f_.b %= modulus_;
  }

  std::uint64_t modulus() const { return modulus_; }

  // Is there t in Z_p with a + b t^4 a square (chart X = 1), or s in pZ_p with
  // a s^4 + b a square (chart Z = 1)?
  bool solvable() {
    undecided_ = false;
    if (search(/*swap=*/false, 0, 0)) return true;
    if (search(/*swap=*/true, 0, 1)) return true;
    if (undecided_) {
      throw PrecisionError("deep_local_check: precision too small to certify at p = " +
                           std::to_string(p_));
    }
    return false;
  }

 private:
  std::uint64_t eval(bool swap, std::uint64_t t) const {
    std::uint64_t t2 = mulmod(t, t, modulus_);
    std::uint64_t t4 = mulmod(t2, t2, modulus_);
    std::uint64_t one_term = swap ? f_.b : f_.a;
    std::uint64_t quartic_term = mulmod(swap ? f_.a : f_.b, t4, modulus_);
    return (one_term + quartic_term) % modulus_;
  }

  // Class {t : t = t0 mod p^j}.
  bool search(bool swap, std::uint64_t t0, int j) {
    std::vector<std::pair<std::uint64_t, int>> stack{{t0, j}};
    while (!stack.empty()) {
      auto [t, level] = stack.back();
      stack.pop_back();
      bool refine = level == 0;
      if (!refine) {
        std::uint64_t pj = 1;
        for (int k = 0; k < level; ++k) pj *= p_;
        std::uint64_t u = eval(swap, t) % pj;
        if (u == 0) {
          refine = true;
        } else {
          int v = 0;
          while (u % p_ == 0) {
            u /= p_;
            ++v;
          }
          if (v % 2 == 1) continue;
          const int known = level - v;  // unit part known mod p^known
          if (p_ == 2) {
            if (known >= 3) {
              if (u % 8 == 1) return true;
              continue;
            }
            refine = true;
          } else {
            if (jacobi(u % p_, p_) == 1) return true;
            continue;
          }
        }
      }
      if (level >= depth_) {
        undecided_ = true;
        continue;
      }
      std::uint64_t step = 1;
      for (int k = 0; k < level; ++k) step *= p_;
      for (std::uint64_t digit = 0; digit < p_; ++digit) {
        stack.emplace_back(t + digit * step, level + 1);
      }
    }
    return false;
  }

  std::uint64_t p_;
  int depth_;
  Quartic f_;
  std::uint64_t modulus_ = 1;
  bool undecided_ = false;
};

}  // namespace

bool deep_local_check(CurveFamily family, const SquareClass& d, const FactoredD& ctx,
                      std::uint64_t place, int precision) {
  if (d.width() != ctx.n()) throw std::invalid_argument("square class from a different context");
  if (place != 2 && !ctx.index_of(place)) {
    throw std::invalid_argument("place " + std::to_string(place) + " is not 2 or a prime of D");
  }
  const int minimum = place == 2 ? 4 : 2;
  if (precision < minimum) {
    throw PrecisionError("deep_local_check: precision " + std::to_string(precision) +
                         " below minimum " + std::to_string(minimum));
  }

  // Exact modulus: build the search first so p^precision is known.
  PadicSquareSearch probe(place, precision, Quartic{0, 0});
  const std::uint64_t m = probe.modulus();

  // a = d, b = c/d = sign * 2^(t - two) * prod p_i^(e_i - [p_i | d]).
  std::uint64_t a = d.two ? 2 % m : 1 % m;
  std::uint64_t b = 1 % m;
  for (int k = 0; k < family.coefficient_two_power() - (d.two ? 1 : 0); ++k) b = mulmod(b, 2, m);
  for (std::size_t i = 0; i < ctx.n(); ++i) {
    const std::uint64_t p = ctx.prime(i).value() % m;
    const bool divides = d.mask.get(i);
    if (divides) a = mulmod(a, p, m);
    for (int k = 0; k < ctx.exponent(i) - (divides ? 1 : 0); ++k) b = mulmod(b, p, m);
  }
  const bool b_negative = (family.coefficient_sign() < 0) != d.sign;
  a = reduce_signed(d.sign, a, m);
  b = reduce_signed(b_negative, b, m);

  PadicSquareSearch search(place, precision, Quartic{a, b});
  return search.solvable();
}

}  // namespace phidescent
