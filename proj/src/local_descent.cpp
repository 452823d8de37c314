#include "phidescent/local_descent.hpp"

#include <algorithm>
#include <bit>

namespace phidescent {

int CurveFamily::coefficient_sign() const {
  if (sigma == Sigma::minus) return role == Role::base ? 1 : -1;
  return role == Role::base ? -1 : 1;
}

Subgroup CurveFamily::restricted_subgroup() const {
  return coefficient_sign() > 0 ? Subgroup::q2d : Subgroup::q_minus_2d;
}

std::string CurveFamily::name() const {
  std::string s = role == Role::base ? "S(E" : "S(E'";
  s += sigma == Sigma::minus ? "-)" : "+)";
  return s;
}

namespace {

void check_width(const SquareClass& d, const FactoredD& ctx) {
  if (d.width() != ctx.n()) throw std::invalid_argument("square class from a different context");
}

// (2D/d) mod 8 with signed representatives: the sign of d carries over and
// each prime of d keeps exponent e_i - 1.
int two_d_over_d_mod8(const SquareClass& d, const FactoredD& ctx) {
  int r = 2;
  for (std::size_t i = 0; i < ctx.n(); ++i) {
    int e = ctx.exponent(i) - (d.mask.get(i) ? 1 : 0);
    for (int k = 0; k < e; ++k) r = r * static_cast<int>(ctx.prime(i).value() % 8) % 8;
  }
  return d.sign ? (8 - r) % 8 : r;
}

int power_sign(int symbol, int exponent) { return (exponent % 2 == 0) ? 1 : symbol; }

}  // namespace

bool locally_solvable_at_2(CurveFamily family, const SquareClass& d, const FactoredD& ctx) {
  check_width(d, ctx);
  if (d.two) throw std::invalid_argument("locally_solvable_at_2: d contains the factor 2");
  const int dm = representative_mod8(d, ctx);
  if (dm == 1) return true;
  if (family.role == Role::base) return false;
  const int q = two_d_over_d_mod8(d, ctx);
  const int combined = ((dm + family.coefficient_sign() * q) % 8 + 8) % 8;
  return combined == 1;
}

bool locally_solvable_at_p(CurveFamily family, const SquareClass& d, std::size_t p_index,
                           const FactoredD& ctx) {
  check_width(d, ctx);
  if (p_index >= ctx.n()) throw std::out_of_range("prime index out of range");
  const OddPrime& p = ctx.prime(p_index);
  int symbol = 1;
  if (!d.mask.get(p_index)) {
    // (d/p)
    if (d.sign) symbol *= legendre_minus_one(p);
    if (d.two) symbol *= legendre_two(p);
    for (std::size_t j : d.mask.ones()) {
      symbol *= legendre(static_cast<std::int64_t>(ctx.prime(j).value()), p);
    }
    return symbol == 1;
  }
  // (+-2D / (d p^(e-1)) / p), the sign fixed by the family.
  const bool negative = (family.coefficient_sign() < 0) != d.sign;
  if (negative) symbol *= legendre_minus_one(p);
  // 2D/d carries 2^(1 - two).
  if (!d.two) symbol *= legendre_two(p);
  for (std::size_t j = 0; j < ctx.n(); ++j) {
    if (j == p_index) continue;
    int e = ctx.exponent(j) - (d.mask.get(j) ? 1 : 0);
    symbol *= power_sign(legendre(static_cast<std::int64_t>(ctx.prime(j).value()), p), e);
  }
  return symbol == 1;
}

bool locally_solvable_at_infinity(CurveFamily family, const SquareClass& d) {
  // W^2 = d + (c/d) Z^4: c/d has sign coefficient_sign * sign(d).
  if (!d.sign) return true;
  return family.coefficient_sign() < 0;
}

bool locally_solvable_everywhere(CurveFamily family, const SquareClass& d, const FactoredD& ctx) {
  if (!locally_solvable_at_infinity(family, d)) return false;
  if (!locally_solvable_at_2(family, d, ctx)) return false;
  for (std::size_t i = 0; i < ctx.n(); ++i) {
    if (!locally_solvable_at_p(family, d, i, ctx)) return false;
  }
  return true;
}

SelmerGroup SelmerGroup::from_members(CurveFamily family, FactoredD ctx,
                                      std::vector<SquareClass> members) {
  std::sort(members.begin(), members.end());
  if (members.empty() || !std::has_single_bit(members.size())) {
    throw std::logic_error("Selmer set of size " + std::to_string(members.size()) +
                           " is not a group");
  }
  std::size_t dim = static_cast<std::size_t>(std::countr_zero(members.size()));
  return SelmerGroup{family, std::move(ctx), std::move(members), dim};
}

bool SelmerGroup::contains(const SquareClass& d) const {
  return std::binary_search(members.begin(), members.end(), d);
}

std::vector<std::int64_t> SelmerGroup::representatives() const {
  std::vector<std::int64_t> out;
  out.reserve(members.size());
  for (const auto& m : members) out.push_back(representative(m, ctx));
  return out;
}

SelmerGroup oracle_subgroup_selmer(CurveFamily family, const FactoredD& ctx, std::size_t max_n) {
  if (ctx.n() > max_n) {
    throw std::length_error("oracle bound exceeded: n = " + std::to_string(ctx.n()) + " > " +
                            std::to_string(max_n));
  }
  std::vector<SquareClass> kept;
  for (auto& d : enumerate_subgroup(ctx, family.restricted_subgroup(), max_n)) {
    if (locally_solvable_everywhere(family, d, ctx)) kept.push_back(std::move(d));
  }
  return SelmerGroup::from_members(family, ctx, std::move(kept));
}

SelmerGroup oracle_full_selmer(CurveFamily family, const FactoredD& ctx, std::size_t max_n) {
  SelmerGroup part = oracle_subgroup_selmer(family, ctx, max_n);
  auto full = coset_expand(part.members, class_of_two_d(ctx, family.multiplier_sign()));
  return SelmerGroup::from_members(family, ctx, std::move(full));
}

}  // namespace phidescent
