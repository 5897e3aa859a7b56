// The non-abelian exterior square of a finite group, built by coset
// enumeration, with the maps to K and the subgroup J attached to a star.

#ifndef MLSCHUR_EXTERIOR_HPP_
#define MLSCHUR_EXTERIOR_HPP_

#include <cstddef>
#include <vector>

#include "group.hpp"
#include "mla.hpp"
#include "presentation.hpp"

namespace mlschur {

/// Largest |K| accepted by exterior_square.
inline constexpr int max_exterior_order = 64;

struct ExteriorSquare {
  FiniteGroup base;
  FiniteGroup square;
  std::vector<Elem> wedge_table;  // x ^ y at x * |K| + y
  GroupHom chi;                   // x ^ y -> [x,y]
  EnumerationStats stats;

  Elem wedge(Elem x, Elem y) const {
    return wedge_table[std::size_t(x) * std::size_t(base.order()) + std::size_t(y)];
  }
};

/// Presentation on generators w_{x,y} with relators w_{x,x},
/// w_{xy,z}^-1 w_{^xy,^xz} w_{x,z} and w_{x,yz}^-1 w_{x,y} w_{^yx,^yz}.
Presentation exterior_presentation(const FiniteGroup& k);

/// Throws GroupError above max_exterior_order, EnumerationOverflow from the
/// enumeration, std::logic_error if chi fails to be a homomorphism.
ExteriorSquare exterior_square(const FiniteGroup& k, std::size_t max_cosets = 200000);

/// Invariants of ker chi (checked abelian and central).
AbelianInvariants schur_multiplier(const ExteriorSquare& e);
AbelianInvariants schur_multiplier(const FiniteGroup& k, std::size_t max_cosets = 200000);

/// phi(x ^ y) = x * y. Throws Inconsistent naming the defining relation
/// (1, 2 or 3) the star breaks.
GroupHom attach_phi(const ExteriorSquare& e, const StarTable& s);

struct JSubgroup {
  Subgroup generated;
  Subgroup closure;  // normal closure in the square
  bool normal;       // generated == closure
};

/// J = < ((x*y) ^ ^y z)((y*z) ^ ^z x)((z*x) ^ ^x y) >.
JSubgroup j_subgroup(const ExteriorSquare& e, const StarTable& s);

/// Hom(square / J, C*) via the abelianization of the quotient by the normal
/// closure of J.
AbelianInvariants mod_j_dual_invariants(const ExteriorSquare& e, const StarTable& s);

} // namespace mlschur

#endif
