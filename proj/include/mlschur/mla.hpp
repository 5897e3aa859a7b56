// Multiplicative Lie algebra structures on finite groups: validation of the
// five axioms, expansion from generator pairs, enumeration and classification.

#ifndef MLSCHUR_MLA_HPP_
#define MLSCHUR_MLA_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "group.hpp"

namespace mlschur {

/// x * y for every pair, stored row-major.
class StarTable {
public:
  StarTable() = default;
  StarTable(int n, Elem fill) : n_(n), t_(std::size_t(n) * std::size_t(n), fill) {}
  explicit StarTable(const std::vector<std::vector<Elem>>& rows);

  int size() const { return n_; }
  Elem operator()(Elem x, Elem y) const { return t_[std::size_t(x) * std::size_t(n_) + std::size_t(y)]; }
  void set(Elem x, Elem y, Elem v) { t_[std::size_t(x) * std::size_t(n_) + std::size_t(y)] = v; }
  const std::vector<Elem>& data() const { return t_; }
  std::vector<std::vector<Elem>> rows() const;

  bool operator==(const StarTable& o) const { return n_ == o.n_ && t_ == o.t_; }
  bool operator<(const StarTable& o) const { return t_ < o.t_; }

private:
  int n_ = 0;
  std::vector<Elem> t_;
};

/// A failed axiom (1..5) or identity, with the offending tuple.
struct AxiomViolation {
  int axiom = 0;
  std::vector<Elem> witness;
  std::string str() const;
};

/// Full scan of the five axioms; axioms are tried in order and within each
/// the lexicographically smallest failing tuple is reported.
std::optional<AxiomViolation> check_star_axioms(const FiniteGroup& g, const StarTable& s);
/// The five derived identities (numbered 1..5), same reporting rule.
std::optional<AxiomViolation> check_derived_identities(const FiniteGroup& g, const StarTable& s);

StarTable trivial_star(const FiniteGroup& g);
StarTable commutator_star(const FiniteGroup& g);

struct Inconsistent : std::runtime_error {
  Inconsistent(const std::string& what, int axiom, std::vector<Elem> witness);
  int axiom;
  std::vector<Elem> witness;
};

struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(std::size_t budget);
  std::size_t budget;
};

/// x * y = value for a pair of marked generators.
struct StarAssignment {
  Elem x, y, value;
};

/// The unique table determined by values on pairs of marked generators
/// (every unordered pair of distinct generators must be covered; the
/// diagonal is 1 and the reverse pair is the inverse). Rows are filled by
/// axiom 2 along shortest generator words, then by axiom 3, and the result is
/// checked against all five axioms. Throws Inconsistent otherwise.
StarTable expand_star_from_generators(const FiniteGroup& g, std::span<const StarAssignment> pairs);
/// Same, with an explicit generating set instead of the marked generators.
StarTable expand_star_from_generators(const FiniteGroup& g, std::span<const Elem> gens,
                                      std::span<const StarAssignment> pairs);

/// A map from the commutator subgroup into G; images[i] is the image of
/// domain.members[i].
struct EquivariantMap {
  Subgroup domain;
  std::vector<Elem> images;
};

/// x * y = phi([x,y]). Throws GroupError if phi is not an equivariant
/// homomorphism, Inconsistent if the resulting table breaks an axiom.
StarTable star_from_equivariant_hom(const FiniteGroup& g, const EquivariantMap& phi);
/// All G-equivariant homomorphisms [G,G] -> G.
std::vector<EquivariantMap> equivariant_homs(const FiniteGroup& g);

enum class StarClass { trivial, improper, proper };
std::string to_string(StarClass c);

struct MlaStructure {
  StarTable star;
  StarClass classification;
};

/// Every valid structure, found by trying all values on pairs of a minimal
/// generating set. Sorted by table; budget bounds the number of candidate
/// tables tried.
std::vector<MlaStructure> enumerate_stars(const FiniteGroup& g, std::size_t budget = 200000);

StarClass classify_star(const FiniteGroup& g, const StarTable& s);

/// No proper structure exists. Uses equivariant homomorphisms when the Schur
/// multiplier is trivial, else enumeration (bounded by budget).
bool is_lie_simple(const FiniteGroup& g, std::size_t budget = 200000);

/// K*K and (K*K)[K,K].
Subgroup star_image_subgroup(const FiniteGroup& g, const StarTable& s);
Subgroup star_commutator_product(const FiniteGroup& g, const StarTable& s);

/// Orbits of the structures under Aut(G) acting by relabeling.
std::size_t orbit_count(const FiniteGroup& g, std::span<const MlaStructure> stars);

// text format: "star <label>", "order <n>", "table", then n rows

StarTable parse_star(const std::string& text, const FiniteGroup& g);
std::string format_star(const FiniteGroup& g, const StarTable& s);

/// "trivial", "commutator", or comma-separated assignments like
/// "a*b=b^2, a*c=1" on marked generator names.
StarTable parse_star_sugar(const std::string& text, const FiniteGroup& g);

} // namespace mlschur

#endif
