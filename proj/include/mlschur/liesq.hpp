// The Lie exterior square of a finite multiplicative Lie algebra, built
// from its presentation on symbols a^b and [a,b]_0.

#ifndef MLSCHUR_LIESQ_HPP_
#define MLSCHUR_LIESQ_HPP_

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "group.hpp"
#include "mla.hpp"
#include "presentation.hpp"

namespace mlschur {

/// Largest |K| accepted by lie_exterior_square.
inline constexpr int max_lie_square_order = 8;

struct StarExtensionInconsistent : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LieExteriorSquare {
  FiniteGroup base;
  StarTable star;
  FiniteGroup group_part;
  std::vector<Elem> wedge_table;    // a^b at a * |K| + b
  std::vector<Elem> bracket_table;  // [a,b]_0 at a * |K| + b
  StarTable tilde_star;
  GroupHom to_target;  // a^b -> a*b, [a,b]_0 -> [a,b]
  EnumerationStats stats;

  Elem wedge_gen(Elem a, Elem b) const {
    return wedge_table[std::size_t(a) * std::size_t(base.order()) + std::size_t(b)];
  }
  Elem bracket_gen(Elem a, Elem b) const {
    return bracket_table[std::size_t(a) * std::size_t(base.order()) + std::size_t(b)];
  }
};

/// Generators w_{a,b} (first |K|^2) and c_{a,b}; relators from the group
/// relations of the definition, with the mixed relation imposed as
/// [w_{a,b}, w_{u,v}] = [c_{a,b}, w_{u,v}].
Presentation lie_exterior_presentation(const FiniteGroup& k);

/// Throws GroupError for |K| above max_lie_square_order or an invalid star,
/// EnumerationOverflow, or StarExtensionInconsistent when the star on the
/// generators does not extend to a valid structure.
LieExteriorSquare lie_exterior_square(const FiniteGroup& k, const StarTable& s,
                                      std::size_t max_cosets = 200000);

/// |group_part| = |tilde_m| |(K*K)[K,K]|, and ker to_target has invariants tilde_m.
bool verify_sequence3(const LieExteriorSquare& l, const AbelianInvariants& tilde_m);

/// Every relation family of the definition, evaluated in the result. Returns
/// the number (1..9) of the first family that fails, or 0.
int check_lie_relations(const LieExteriorSquare& l);

} // namespace mlschur

#endif
