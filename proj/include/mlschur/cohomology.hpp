// Second cohomology with trivial Z/m coefficients: ordinary H^2 and the
// multiplicative Lie version H^2_ML, plus the coefficient tower that stands
// in for C* coefficients.
//
// Values are additive: k in Z/m stands for exp(2 pi i k / m).

#ifndef MLSCHUR_COHOMOLOGY_HPP_
#define MLSCHUR_COHOMOLOGY_HPP_

#include <optional>
#include <stdexcept>
#include <vector>

#include "group.hpp"
#include "mla.hpp"
#include "zlinalg.hpp"

namespace mlschur {

/// Degree 1: values[x]. Degree 2: values[x * n + y]. Degree 3: values[(x * n + y) * n + z].
struct Cochain {
  int degree = 0;
  Residue modulus = 0;
  std::vector<Residue> values;

  Residue operator()(Elem x) const { return values[std::size_t(x)]; }
};

/// d2 g (x,y) = g(y) - g(xy) + g(x); d3 f (x,y,z) = f(y,z) - f(xy,z) + f(x,yz) - f(x,y).
Cochain bar_differential(const FiniteGroup& k, const Cochain& c);

/// (f, h) with f and h both tables on K x K at x * n + y.
struct MlCocyclePair {
  Residue modulus = 0;
  std::vector<Residue> f, h;
};

struct CohomologyGroup {
  Residue modulus = 0;
  AbelianInvariants invariants;
  /// One representative per invariant factor (H^2: only f is filled).
  std::vector<MlCocyclePair> generators;
};

CohomologyGroup h2_group(const FiniteGroup& k, Residue m);

/// H^2(K, Z_m) against Ext(K^ab, Z_m) + Hom(M(K), Z_m), with M(K) from the
/// exterior square.
bool universal_coefficients_check(const FiniteGroup& k, Residue m);

/// Condition 0 is the group cocycle condition on f; 1..5 are the ML conditions.
struct ConditionViolation {
  int condition = 0;
  std::vector<Elem> witness;
};

std::optional<ConditionViolation> ml_cocycle_check(const FiniteGroup& k, const StarTable& s,
                                                   const MlCocyclePair& p);

/// chi(g) = (delta g, g*) for an identity-preserving g (degree-1 cochain).
MlCocyclePair coboundary_pair(const FiniteGroup& k, const StarTable& s, const Cochain& g);

CohomologyGroup h2ml_group(const FiniteGroup& k, const StarTable& s, Residue m);

/// ker of H^2_ML -> H^2: classes (f,h) with f a coboundary.
AbelianInvariants ptilde_kernel(const FiniteGroup& k, const StarTable& s, Residue m);

/// Image of H^2_ML(K, Z_m) in H^2_ML(K, Z_mk) under multiplication by k.
AbelianInvariants transition_image(const FiniteGroup& k, const StarTable& s, Residue m,
                                   Residue factor);

struct NoStabilization : std::runtime_error {
  explicit NoStabilization(int t_max);
  int t_max;
};

/// Stable image along Z_N -> Z_N^2 -> ... with N = |K|; the first D_t equal
/// to D_t+1 is returned.
AbelianInvariants tilde_schur(const FiniteGroup& k, const StarTable& s, int t_max = 4);

/// Invariant factors > 1 of the integer matrix of all ML conditions. Equals
/// H^2_ML(K, Q/Z) when the returned flag is set (rank of the conditions plus
/// rank of the coboundary map fills all 2|K|^2 coordinates).
struct IntegralTilde {
  AbelianInvariants torsion;
  bool complete = false;
};
IntegralTilde tilde_schur_integral(const FiniteGroup& k, const StarTable& s);

/// Some h making (f, h) an ML cocycle, with f mod m embedded into Z/m_target
/// by multiplication with m_target / m; nullopt if none exists.
std::optional<std::vector<Residue>> lift_h(const FiniteGroup& k, const StarTable& s,
                                           const Cochain& f, Residue m_target);

/// ker p~ against Hom(square / J, Z_m).
bool kernel_exact_sequence_check(const FiniteGroup& k, const StarTable& s, Residue m);

/// Rows of the ML system over the 2 n^2 unknowns (f block, then h block);
/// coefficients are small integers. Without include_cocycle the d3 f = 0
/// block is left out.
std::vector<std::vector<std::pair<std::uint32_t, long long>>>
ml_condition_rows(const FiniteGroup& k, const StarTable& s, bool include_cocycle = true);

} // namespace mlschur

#endif
