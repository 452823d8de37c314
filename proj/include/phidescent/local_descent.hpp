#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "phidescent/square_class.hpp"

namespace phidescent {

enum class Sigma { minus, plus };
enum class Role { base, isogenous };

/// One of the four homogeneous-space families W^2 = d + c Z^4 / d:
///   E_-  (sigma -, base)      c = +8D
///   E'_- (sigma -, isogenous) c = -2D
///   E_+  (sigma +, base)      c = -8D
///   E'_+ (sigma +, isogenous) c = +2D
/// E_- is y^2 = x^3 - 2Dx and E_+ is y^2 = x^3 + 2Dx; the primed curves are
/// their 2-isogenous partners y^2 = x^3 +- 8Dx.
struct CurveFamily {
  Sigma sigma;
  Role role;

  /// Sign of c.
  int coefficient_sign() const;
  /// c = coefficient_sign * 2^coefficient_two_power * D.
  int coefficient_two_power() const { return role == Role::base ? 3 : 1; }
  /// Q_2D or Q_-2D: the odd part of the Selmer group lives here.
  Subgroup restricted_subgroup() const;
  /// The full group is the restricted part and its translate by sign * 2D.
  int multiplier_sign() const { return coefficient_sign(); }

  std::string name() const;

  friend bool operator==(const CurveFamily&, const CurveFamily&) = default;
};

inline constexpr CurveFamily kEMinus{Sigma::minus, Role::base};
inline constexpr CurveFamily kEMinusPrime{Sigma::minus, Role::isogenous};
inline constexpr CurveFamily kEPlus{Sigma::plus, Role::base};
inline constexpr CurveFamily kEPlusPrime{Sigma::plus, Role::isogenous};
inline constexpr std::array<CurveFamily, 4> kAllFamilies{kEMinus, kEMinusPrime, kEPlus,
                                                         kEPlusPrime};

/// Solvability over Q_2 by the mod-8 criteria. d and 2D/d are read as their
/// canonical signed integers. Throws if d contains the factor 2.
bool locally_solvable_at_2(CurveFamily family, const SquareClass& d, const FactoredD& ctx);

/// Solvability over Q_{p_i} by the Legendre-symbol criteria.
bool locally_solvable_at_p(CurveFamily family, const SquareClass& d, std::size_t p_index,
                           const FactoredD& ctx);

/// Solvability over R: fails exactly when both d and c/d are negative.
bool locally_solvable_at_infinity(CurveFamily family, const SquareClass& d);

bool locally_solvable_everywhere(CurveFamily family, const SquareClass& d, const FactoredD& ctx);

/// A subgroup of Q(S,2) given by explicit sorted members.
struct SelmerGroup {
  CurveFamily family;
  FactoredD ctx;
  std::vector<SquareClass> members;
  std::size_t dim = 0;

  /// Validates that the member count is a power of two.
  static SelmerGroup from_members(CurveFamily family, FactoredD ctx,
                                  std::vector<SquareClass> members);

  std::size_t size() const { return members.size(); }
  bool contains(const SquareClass& d) const;
  std::vector<std::int64_t> representatives() const;
};

inline constexpr std::size_t kDefaultOracleBound = 16;

/// Brute force over the restricted subgroup: s_-, s'_-, s_+ or s'_+.
SelmerGroup oracle_subgroup_selmer(CurveFamily family, const FactoredD& ctx,
                                   std::size_t max_n = kDefaultOracleBound);

/// The full phi-Selmer group, by coset expansion of the restricted part.
SelmerGroup oracle_full_selmer(CurveFamily family, const FactoredD& ctx,
                               std::size_t max_n = kDefaultOracleBound);

class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Default lifting depth for deep_local_check: enough for every D with
/// exponents in {1,3}.
int default_deep_precision(std::uint64_t place);

/// Independent Q_p solvability test by p-adic search. Residue classes of the
/// affine parameter are refined until the value of the quartic on the class
/// has a fixed valuation and a fixed unit part mod p (mod 8 for p = 2), which
/// decides squareness for the whole class. d may contain the factor 2.
///
/// place must be 2 or a prime of D. precision bounds the lifting depth; it
/// must be at least 4 at 2 and 2 at odd places, and PrecisionError is thrown
/// when some class is still undecided at that depth.
bool deep_local_check(CurveFamily family, const SquareClass& d, const FactoredD& ctx,
                      std::uint64_t place, int precision);

inline bool deep_local_check(CurveFamily family, const SquareClass& d, const FactoredD& ctx,
                             std::uint64_t place) {
  return deep_local_check(family, d, ctx, place, default_deep_precision(place));
}

}  // namespace phidescent
