#include "mlschur/exterior.hpp"

#include <set>

namespace mlschur {

Presentation exterior_presentation(const FiniteGroup& k) {
  const int n = k.order();
  Presentation p;
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      p.generator_names.push_back("w" + std::to_string(x) + "_" + std::to_string(y));
  auto w = [n](Elem x, Elem y) { return x * n + y + 1; };
  for (Elem x = 0; x < n; ++x)
    p.relators.push_back({w(x, x)});
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      for (Elem z = 0; z < n; ++z) {
        p.relators.push_back({-w(k.mul(x, y), z), w(k.conj(x, y), k.conj(x, z)), w(x, z)});
        p.relators.push_back({-w(x, k.mul(y, z)), w(x, y), w(k.conj(y, x), k.conj(y, z))});
      }
  return p;
}

ExteriorSquare exterior_square(const FiniteGroup& k, std::size_t max_cosets) {
  const int n = k.order();
  if (n > max_exterior_order)
    throw GroupError("exterior square needs |K| <= " + std::to_string(max_exterior_order));
  auto res = todd_coxeter(exterior_presentation(k), max_cosets);
  ExteriorSquare e{k, res.group.relabeled(k.label() + "^" + k.label()), res.generator_images,
                   {}, res.stats};
  std::vector<Elem> gens, imgs;
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      gens.push_back(e.wedge(x, y));
      imgs.push_back(k.comm(x, y));
    }
  auto chi = extend_hom(e.square, k, gens, imgs);
  if (!chi)
    throw std::logic_error("x^y -> [x,y] does not define a homomorphism");
  e.chi = *chi;
  return e;
}

AbelianInvariants schur_multiplier(const ExteriorSquare& e) {
  Subgroup ker = kernel(e.square, e.base, e.chi);
  if (!is_abelian(e.square, ker) || !is_central(e.square, ker))
    throw std::logic_error("ker chi is not central");
  return abelian_invariants(e.square, ker);
}

AbelianInvariants schur_multiplier(const FiniteGroup& k, std::size_t max_cosets) {
  return schur_multiplier(exterior_square(k, max_cosets));
}

GroupHom attach_phi(const ExteriorSquare& e, const StarTable& s) {
  const FiniteGroup& k = e.base;
  const int n = k.order();
  if (s.size() != n)
    throw GroupError("star table does not match the group");
  for (Elem x = 0; x < n; ++x)
    if (s(x, x) != k.identity())
      throw Inconsistent("x*x != 1", 1, {x});
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      for (Elem z = 0; z < n; ++z) {
        if (s(k.mul(x, y), z) != k.mul(s(k.conj(x, y), k.conj(x, z)), s(x, z)))
          throw Inconsistent("xy*z != (^xy * ^xz)(x*z)", 2, {x, y, z});
        if (s(x, k.mul(y, z)) != k.mul(s(x, y), s(k.conj(y, x), k.conj(y, z))))
          throw Inconsistent("x*yz != (x*y)(^yx * ^yz)", 3, {x, y, z});
      }
  std::vector<Elem> gens, imgs;
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      gens.push_back(e.wedge(x, y));
      imgs.push_back(s(x, y));
    }
  auto phi = extend_hom(e.square, k, gens, imgs);
  if (!phi)
    throw std::logic_error("phi does not extend although the relations hold");
  return *phi;
}

JSubgroup j_subgroup(const ExteriorSquare& e, const StarTable& s) {
  const FiniteGroup& k = e.base;
  const FiniteGroup& q = e.square;
  const int n = k.order();
  std::set<Elem> gens;
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      for (Elem z = 0; z < n; ++z) {
        Elem a = e.wedge(s(x, y), k.conj(y, z));
        Elem b = e.wedge(s(y, z), k.conj(z, x));
        Elem c = e.wedge(s(z, x), k.conj(x, y));
        gens.insert(q.mul(q.mul(a, b), c));
      }
  std::vector<Elem> g(gens.begin(), gens.end());
  JSubgroup j{subgroup_generated(q, g), normal_closure(q, g), false};
  j.normal = j.generated == j.closure;
  return j;
}

AbelianInvariants mod_j_dual_invariants(const ExteriorSquare& e, const StarTable& s) {
  auto j = j_subgroup(e, s);
  auto quo = quotient(e.square, j.closure);
  return dual_invariants(abelianization_invariants(quo.group));
}

} // namespace mlschur
