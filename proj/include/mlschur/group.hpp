// Finite groups as Cayley tables, with the subgroup, quotient and
// abelian-invariant primitives used by every other part of the library.

#ifndef MLSCHUR_GROUP_HPP_
#define MLSCHUR_GROUP_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mlschur {

using Elem = int;

struct GroupError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A named element used for echoing presentations, e.g. {"a", 1}.
struct MarkedGenerator {
  std::string name;
  Elem element;
};

/// Finite group given by its multiplication table over indices 0..n-1.
/// Immutable after construction; the constructor checks the group axioms
/// (associativity fully for n <= 64, by fixed-seed sampling above).
class FiniteGroup {
public:
  FiniteGroup() : FiniteGroup("1", {{0}}) {}
  FiniteGroup(std::string label, std::vector<std::vector<Elem>> cayley,
              std::vector<MarkedGenerator> generators = {});

  int order() const { return n_; }
  Elem identity() const { return id_; }
  Elem mul(Elem a, Elem b) const { return table_[std::size_t(a) * n_ + b]; }
  Elem inv(Elem a) const { return inv_[a]; }
  /// x y x^-1 (left action, written ^x y)
  Elem conj(Elem x, Elem y) const { return mul(mul(x, y), inv_[x]); }
  /// [x,y] = x y x^-1 y^-1
  Elem comm(Elem x, Elem y) const { return mul(mul(x, y), mul(inv_[x], inv_[y])); }
  Elem pow(Elem g, long long k) const;
  Elem product(std::span<const Elem> elems) const;

  const std::string& label() const { return label_; }
  const std::vector<MarkedGenerator>& generators() const { return gens_; }
  std::vector<Elem> generator_elements() const;
  std::optional<Elem> generator(const std::string& name) const;

  /// Shortest word in the marked generators ("1", "a", "b^2", "a b^-1").
  const std::string& element_name(Elem g) const { return names_[g]; }

  bool is_abelian() const;
  std::vector<std::vector<Elem>> cayley() const;
  std::span<const Elem> row(Elem a) const {
    return {table_.data() + std::size_t(a) * n_, std::size_t(n_)};
  }

  FiniteGroup relabeled(std::string label) const;
  FiniteGroup with_generators(std::vector<MarkedGenerator> gens) const;

private:
  void compute_names();

  int n_ = 1;
  std::vector<Elem> table_;
  Elem id_ = 0;
  std::vector<Elem> inv_;
  std::string label_;
  std::vector<MarkedGenerator> gens_;
  std::vector<std::string> names_;
};

/// Sorted member list plus the generators it was built from.
/// A Subgroup is only meaningful together with the group it came from.
struct Subgroup {
  std::vector<Elem> members;
  std::vector<Elem> generators;

  int order() const { return int(members.size()); }
  bool contains(Elem g) const;
  bool operator==(const Subgroup& o) const { return members == o.members; }
};

/// Homomorphism given by the image of every domain element.
struct GroupHom {
  std::vector<Elem> images;
  Elem operator()(Elem g) const { return images[g]; }
};

/// Invariant factors d1 | d2 | ... | dk, each >= 2. Empty means trivial.
struct AbelianInvariants {
  std::vector<long long> factors;

  long long order() const;
  bool trivial() const { return factors.empty(); }
  bool operator==(const AbelianInvariants& o) const { return factors == o.factors; }
  std::string str() const;
};

std::ostream& operator<<(std::ostream& os, const AbelianInvariants& a);

/// Puts any list of cyclic orders (e.g. [2, 3, 4]) into invariant-factor form.
AbelianInvariants normalize_invariants(std::span<const long long> cyclic_orders);
AbelianInvariants direct_sum(const AbelianInvariants& a, const AbelianInvariants& b);

// constructors

FiniteGroup cyclic(int n);
FiniteGroup klein_four();
/// D_n = <a,b | a^2 = b^n = 1, aba = b^-1>, order 2n; element b^r a^s at r + n*s.
FiniteGroup dihedral(int n);
/// Q_n = <a,b | a^2 = b^n, aba^-1 = b^-1>, order 4n.
FiniteGroup dicyclic(int n);
/// <a,b | a^m = b^n = 1, a^-1 b a = b^alpha>, order m*n.
FiniteGroup metacyclic(int m, int n, int alpha);
FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h);
FiniteGroup sl_2_3();

// structure

Subgroup subgroup_generated(const FiniteGroup& g, std::span<const Elem> gens);
Subgroup normal_closure(const FiniteGroup& g, std::span<const Elem> gens);
Subgroup center(const FiniteGroup& g);
Subgroup commutator_subgroup(const FiniteGroup& g);
Subgroup whole_group(const FiniteGroup& g);
Subgroup trivial_subgroup(const FiniteGroup& g);
bool is_normal(const FiniteGroup& g, const Subgroup& n);
bool is_central(const FiniteGroup& g, const Subgroup& n);
bool is_abelian(const FiniteGroup& g, const Subgroup& h);

/// The subgroup as a group in its own right; element i is h.members[i].
FiniteGroup subgroup_as_group(const FiniteGroup& g, const Subgroup& h,
                              std::string label = {});

struct Quotient {
  FiniteGroup group;
  GroupHom projection;
};
Quotient quotient(const FiniteGroup& g, const Subgroup& n);

/// Small generating set, found greedily (deterministic).
std::vector<Elem> small_generating_set(const FiniteGroup& g);
/// Generating set of minimum size among sets of size <= 3, else greedy.
std::vector<Elem> minimal_generating_set(const FiniteGroup& g);

int element_order(const FiniteGroup& g, Elem x);
long long exponent(const FiniteGroup& g);
Elem conjugate(const FiniteGroup& g, Elem x, Elem y);

bool is_homomorphism(const FiniteGroup& dom, const FiniteGroup& cod, const GroupHom& f);
Subgroup kernel(const FiniteGroup& dom, const FiniteGroup& cod, const GroupHom& f);
Subgroup image(const FiniteGroup& dom, const FiniteGroup& cod, const GroupHom& f);

/// Extends generator images to a homomorphism by walking the Cayley graph.
/// Returns nullopt if the assignment is not consistent.
std::optional<GroupHom> extend_hom(const FiniteGroup& dom, const FiniteGroup& cod,
                                   std::span<const Elem> gens,
                                   std::span<const Elem> gen_images);

/// Invariant factors of an abelian group (throws GroupError otherwise).
AbelianInvariants abelian_invariants(const FiniteGroup& g);
AbelianInvariants abelian_invariants(const FiniteGroup& g, const Subgroup& h);
/// Invariants of G/[G,G].
AbelianInvariants abelianization_invariants(const FiniteGroup& g);

/// Hom(A, C*) for finite abelian A; returns A.
AbelianInvariants dual_invariants(const AbelianInvariants& a);
/// Hom(+Z_di, Z_m) = +Z_gcd(di, m).
AbelianInvariants hom_invariants_to_cyclic(const AbelianInvariants& a, long long m);
/// Ext(+Z_di, Z_m) = +Z_gcd(di, m).
AbelianInvariants ext_invariants_to_cyclic(const AbelianInvariants& a, long long m);

/// Automorphisms as permutations of 0..n-1 (brute force over images of a
/// minimal generating set; intended for small groups).
std::vector<std::vector<Elem>> automorphisms(const FiniteGroup& g);

// text format: "group <label>", "order <n>", "table", then n rows

FiniteGroup parse_group(std::istream& in);
FiniteGroup parse_group(const std::string& text);
std::string format_group(const FiniteGroup& g);

} // namespace mlschur

#endif
