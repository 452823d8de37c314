#include "phidescent/fast_descent.hpp"

#include <algorithm>

namespace phidescent {

namespace {

// Bit for the Legendre symbol of (d / p_i) or (base * D / d / p_i), where base
// is +2 or -2.
bool symbol_bit(const SquareClass& d, const FactoredD& ctx, std::size_t i, bool base_negative) {
  const OddPrime& p = ctx.prime(i);
  int symbol = 1;
  if (!d.mask.get(i)) {
    if (d.sign) symbol *= legendre_minus_one(p);
    for (std::size_t j : d.mask.ones()) {
      symbol *= legendre(static_cast<std::int64_t>(ctx.prime(j).value()), p);
    }
  } else {
    if (base_negative != d.sign) symbol *= legendre_minus_one(p);
    symbol *= legendre_two(p);
    for (std::size_t j = 0; j < ctx.n(); ++j) {
      if (j == i) continue;
      int e = ctx.exponent(j) - (d.mask.get(j) ? 1 : 0);
      if (e % 2 == 1) symbol *= legendre(static_cast<std::int64_t>(ctx.prime(j).value()), p);
    }
  }
  return symbol == -1;
}

BitVector symbol_vector(const SquareClass& d, const FactoredD& ctx, bool base_negative) {
  if (d.width() != ctx.n()) throw std::invalid_argument("square class from a different context");
  BitVector out(ctx.n());
  for (std::size_t i = 0; i < ctx.n(); ++i) {
    if (symbol_bit(d, ctx, i, base_negative)) out.set(i);
  }
  return out;
}

BitVector with_sign_bit(const SquareClass& d) {
  BitVector w(d.width() + 1);
  for (std::size_t i : d.mask.ones()) w.set(i);
  if (d.sign) w.set(d.width());
  return w;
}

}  // namespace

BitVector g_map(const SquareClass& d, const FactoredD& ctx) {
  if (!d.in_q2d()) throw std::invalid_argument("g_map: d must lie in Q_2D");
  return symbol_vector(d, ctx, false);
}

BitVector f_map(const SquareClass& d, const FactoredD& ctx) {
  if (!d.in_q_minus_2d()) throw std::invalid_argument("f_map: d must lie in Q_-2D");
  return symbol_vector(d, ctx, true);
}

BitMatrix build_X(const FactoredD& ctx) {
  const std::size_t n = ctx.n();
  BitMatrix x(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    BitVector row = g_map(SquareClass::of_prime(n, i), ctx);
    for (std::size_t j : row.ones()) x.set(i, j);
  }
  return x;
}

BitMatrix build_Y(const FactoredD& ctx) {
  const std::size_t n = ctx.n();
  BitMatrix y(n + 1, n);
  for (std::size_t i = 0; i < n; ++i) {
    BitVector row = f_map(SquareClass::of_prime(n, i), ctx);
    for (std::size_t j : row.ones()) y.set(i, j);
  }
  BitVector last = f_map(SquareClass::minus_one(n), ctx);
  for (std::size_t j : last.ones()) y.set(n, j);
  return y;
}

SymbolTables::SymbolTables(FactoredD ctx)
    : ctx_(std::move(ctx)), x_(build_X(ctx_)), y_(build_Y(ctx_)) {}

bool SymbolTables::delta(const SquareClass& d) const {
  bool acc = false;
  for (std::size_t i : d.mask.ones()) acc ^= y_.get(n(), i);
  return acc;
}

bool fast_member_s_minus(const SquareClass& d, const SymbolTables& tables) {
  if (!d.in_q2d()) throw std::invalid_argument("s_- membership needs d in Q_2D");
  return tables.y_bits().multiply(d.mask).none();
}

bool fast_member_s_minus_prime(const SquareClass& d, const SymbolTables& tables) {
  if (!d.in_q_minus_2d()) throw std::invalid_argument("s'_- membership needs d in Q_-2D");
  return tables.y_bits().left_multiply(with_sign_bit(d)).none();
}

std::optional<int> fast_member_s_plus_pair(const SquareClass& d1, const SymbolTables& tables) {
  if (!d1.in_q2d()) throw std::invalid_argument("s_+ pair membership needs positive d1 in Q_2D");
  if (tables.x_bits().multiply(d1.mask).any()) return std::nullopt;
  switch (representative_mod8(d1, tables.ctx())) {
    case 1:
      return 1;
    case 7:
      return -1;
    default:
      throw InvariantViolation("X-column relation holds but d1 is not +-1 mod 8");
  }
}

bool fast_member_s_plus_prime(const SquareClass& d, const SymbolTables& tables) {
  if (!d.in_q2d()) throw std::invalid_argument("s'_+ membership needs d in Q_2D");
  return tables.x_bits().left_multiply(d.mask).none();
}

bool fast_member(CurveFamily family, const SquareClass& d, const SymbolTables& tables) {
  if (family == kEMinus) return fast_member_s_minus(d, tables);
  if (family == kEMinusPrime) return fast_member_s_minus_prime(d, tables);
  if (family == kEPlusPrime) return fast_member_s_plus_prime(d, tables);
  if (!d.in_q_minus_2d()) throw std::invalid_argument("s_+ membership needs d in Q_-2D");
  SquareClass positive = d;
  positive.sign = false;
  auto sign = fast_member_s_plus_pair(positive, tables);
  return sign && ((*sign < 0) == d.sign);
}

SelmerGroup fast_subgroup_selmer(CurveFamily family, const SymbolTables& tables) {
  const std::size_t n = tables.n();
  std::vector<SquareClass> members;
  auto from_mask = [n](const BitVector& v) {
    SquareClass c = SquareClass::identity(n);
    for (std::size_t i : v.ones()) {
      if (i < n) {
        c.mask.set(i);
      } else {
        c.sign = true;
      }
    }
    return c;
  };
  if (family == kEMinus) {
    for (const auto& v : span_elements(tables.y_bits().column_nullspace_basis(), n)) {
      members.push_back(from_mask(v));
    }
  } else if (family == kEMinusPrime) {
    for (const auto& v : span_elements(tables.y_bits().row_nullspace_basis(), n + 1)) {
      members.push_back(from_mask(v));
    }
  } else if (family == kEPlus) {
    for (const auto& v : span_elements(tables.x_bits().column_nullspace_basis(), n)) {
      SquareClass c = from_mask(v);
      auto sign = fast_member_s_plus_pair(c, tables);
      if (!sign) throw InvariantViolation("nullspace vector of X fails its own relation");
      c.sign = *sign < 0;
      members.push_back(std::move(c));
    }
  } else {
    for (const auto& v : span_elements(tables.x_bits().row_nullspace_basis(), n)) {
      members.push_back(from_mask(v));
    }
  }
  return SelmerGroup::from_members(family, tables.ctx(), std::move(members));
}

SelmerGroup fast_full_selmer(CurveFamily family, const SymbolTables& tables) {
  SelmerGroup part = fast_subgroup_selmer(family, tables);
  auto full = coset_expand(part.members, class_of_two_d(tables.ctx(), family.multiplier_sign()));
  return SelmerGroup::from_members(family, tables.ctx(), std::move(full));
}

std::size_t SelmerDims::of(CurveFamily family) const {
  if (family == kEMinus) return s_minus;
  if (family == kEMinusPrime) return s_minus_prime;
  if (family == kEPlus) return s_plus;
  return s_plus_prime;
}

SelmerDims selmer_sizes(std::size_t rank_X, std::size_t rank_Y, std::size_t n) {
  if (rank_X > n || rank_Y > n) throw std::invalid_argument("rank exceeds n");
  return SelmerDims{n + 1 - rank_Y, n + 2 - rank_Y, n + 1 - rank_X, n + 1 - rank_X};
}

std::uint64_t pow2(std::size_t dim) {
  if (dim >= 64) throw std::overflow_error("2^" + std::to_string(dim) + " exceeds 64 bits");
  return std::uint64_t{1} << dim;
}

std::string TamagawaRatio::to_string() const {
  if (t == 0) return "1";
  auto power = [](int k) { return std::to_string(pow2(static_cast<std::size_t>(k))); };
  return t > 0 ? "1/" + power(t) : power(-t);
}

TamagawaRatios tamagawa_ratios(const SelmerDims& dims) {
  TamagawaRatios r{
      TamagawaRatio{static_cast<int>(dims.s_minus_prime) - static_cast<int>(dims.s_minus)},
      TamagawaRatio{static_cast<int>(dims.s_plus_prime) - static_cast<int>(dims.s_plus)}};
  if (r.minus.t != 1) {
    throw InvariantViolation("|S(E_-)|/|S(E'_-)| = " + r.minus.to_string() + ", expected 1/2");
  }
  if (r.plus.t != 0) {
    throw InvariantViolation("|S(E_+)|/|S(E'_+)| = " + r.plus.to_string() + ", expected 1");
  }
  return r;
}

namespace {

// Group dimensions from nullspace sizes: every restricted group is a
// nullspace of X or Y, and the full group doubles it.
SelmerDims dims_from_nullspaces(const SymbolTables& tables) {
  return SelmerDims{tables.y_bits().column_nullspace_basis().size() + 1,
                    tables.y_bits().row_nullspace_basis().size() + 1,
                    tables.x_bits().column_nullspace_basis().size() + 1,
                    tables.x_bits().row_nullspace_basis().size() + 1};
}

}  // namespace

TamagawaRatios tamagawa_ratios(const FactoredD& ctx) {
  return tamagawa_ratios(dims_from_nullspaces(SymbolTables(ctx)));
}

DimensionSums rank_dimension_sums(std::size_t rank_X, std::size_t rank_Y, std::size_t n) {
  const long nn = static_cast<long>(n);
  return DimensionSums{2 * nn + 1 - 2 * static_cast<long>(rank_Y),
                       2 * nn - 2 * static_cast<long>(rank_X)};
}

DimensionSums rank_dimension_sums(const FactoredD& ctx) {
  return rank_dimension_sums(build_X(ctx).rank(), build_Y(ctx).rank(), ctx.n());
}

SieveFlags sieve_flags(std::size_t rank_X, std::size_t rank_Y, std::size_t n) {
  return SieveFlags{rank_X == n, rank_Y == n};
}

SieveFlags sieve_flags(const FactoredD& ctx) {
  return sieve_flags(build_X(ctx).rank(), build_Y(ctx).rank(), ctx.n());
}

void DescentReport::validate() const {
  const std::size_t n = ctx.n();
  if (rank_X > n || rank_Y > n) throw InvariantViolation("rank exceeds n");
  if (!(dims == selmer_sizes(rank_X, rank_Y, n))) {
    throw InvariantViolation("Selmer dimensions disagree with rank-nullity");
  }
  if (dims.s_minus_prime != dims.s_minus + 1) throw InvariantViolation("|S(E'_-)| != 2|S(E_-)|");
  if (dims.s_plus_prime != dims.s_plus) throw InvariantViolation("|S(E'_+)| != |S(E_+)|");
  if (tamagawa.minus.t != 1 || tamagawa.plus.t != 0) {
    throw InvariantViolation("Tamagawa ratios are not 1/2 and 1");
  }
  if (dimsum.minus % 2 != 1) throw InvariantViolation("dimsum_minus is even");
  if (dimsum.plus % 2 != 0) throw InvariantViolation("dimsum_plus is odd");
  const long phi_minus = static_cast<long>(dims.s_minus + dims.s_minus_prime) - 2;
  const long phi_plus = static_cast<long>(dims.s_plus + dims.s_plus_prime) - 2;
  if (phi_minus != dimsum.minus || phi_plus != dimsum.plus) {
    throw InvariantViolation("dimension sums disagree with Selmer dimensions");
  }
}

DescentReport analyze(const FactoredD& ctx) {
  SymbolTables tables(ctx);
  DescentReport report{ctx, tables.x_bits().rank(), tables.y_bits().rank(), {}, {}, {}, {}};
  report.dims = dims_from_nullspaces(tables);
  report.tamagawa = tamagawa_ratios(report.dims);
  report.dimsum = rank_dimension_sums(report.rank_X, report.rank_Y, ctx.n());
  report.flags = sieve_flags(report.rank_X, report.rank_Y, ctx.n());
  report.validate();
  return report;
}

}  // namespace phidescent
