#include "mlschur/liesq.hpp"

#include <set>

namespace mlschur {

namespace {

Word comm(int x, int y) { return {x, y, -x, -y}; }

} // namespace

Presentation lie_exterior_presentation(const FiniteGroup& k) {
  const int n = k.order();
  Presentation p;
  for (const char* sym : {"w", "c"})
    for (Elem x = 0; x < n; ++x)
      for (Elem y = 0; y < n; ++y)
        p.generator_names.push_back(sym + std::to_string(x) + "_" + std::to_string(y));
  auto w = [n](Elem x, Elem y) { return x * n + y + 1; };
  auto c = [n](Elem x, Elem y) { return n * n + x * n + y + 1; };
  const Elem e = k.identity();
  auto& r = p.relators;

  // (1) and (2), both symbol families
  for (Elem a = 0; a < n; ++a) {
    r.push_back({w(a, a)});
    r.push_back({c(a, a)});
    if (a == e)
      continue;
    r.push_back({w(e, a)});
    r.push_back({w(a, e)});
    r.push_back({c(e, a)});
    r.push_back({c(a, e)});
  }
  for (Elem a = 0; a < n; ++a)
    for (Elem b = a + 1; b < n; ++b) {
      r.push_back({w(a, b), w(b, a)});
      r.push_back({c(a, b), c(b, a)});
    }
  // (3), (4), (6), (7)
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      for (Elem x = 0; x < n; ++x) {
        Elem ba = k.conj(b, a), bx = k.conj(b, x), ab = k.conj(a, b), ax = k.conj(a, x);
        r.push_back({-w(a, k.mul(b, x)), w(a, b), w(ba, bx)});
        r.push_back({-c(a, k.mul(b, x)), c(a, b), c(ba, bx)});
        r.push_back({-w(k.mul(a, b), x), w(ab, ax), w(a, x)});
        r.push_back({-c(k.mul(a, b), x), c(ab, ax), c(a, x)});
        // (a^b)(^xb ^ ^xa) = (^{ab}a^-1 ^ ^ax)(a ^ x)
        Elem u = k.conj(k.mul(a, b), k.inv(a));
        Elem xb = k.conj(x, b), xa = k.conj(x, a);
        r.push_back({w(a, b), w(xb, xa), -w(a, x), -w(u, ax)});
        r.push_back({c(a, b), c(xb, xa), -c(a, x), -c(u, ax)});
      }
  // (5) group part and (8)
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      if (a == b || a == e || b == e)
        continue;
      for (Elem u = 0; u < n; ++u)
        for (Elem v = 0; v < n; ++v) {
          if (u == v || u == e || v == e)
            continue;
          Word lhs = comm(w(a, b), w(u, v)), rhs = comm(c(a, b), w(u, v));
          Word rel = lhs;
          for (auto it = rhs.rbegin(); it != rhs.rend(); ++it)
            rel.push_back(-*it);
          r.push_back(free_reduce(rel));
          Word cc = comm(c(a, b), c(u, v));
          cc.push_back(-c(k.comm(a, b), k.comm(u, v)));
          r.push_back(cc);
        }
    }
  return p;
}

LieExteriorSquare lie_exterior_square(const FiniteGroup& k, const StarTable& s,
                                      std::size_t max_cosets) {
  const int n = k.order();
  if (n > max_lie_square_order)
    throw GroupError("Lie exterior square needs |K| <= " + std::to_string(max_lie_square_order));
  if (s.size() != n)
    throw GroupError("star table does not match the group");
  if (auto bad = check_star_axioms(k, s))
    throw GroupError("not a multiplicative Lie algebra: " + bad->str());

  auto res = todd_coxeter(lie_exterior_presentation(k), max_cosets);
  const std::size_t nn = std::size_t(n) * std::size_t(n);
  LieExteriorSquare l;
  l.base = k;
  l.star = s;
  l.group_part = res.group.relabeled(k.label() + "^L" + k.label());
  l.wedge_table.assign(res.generator_images.begin(), res.generator_images.begin() + long(nn));
  l.bracket_table.assign(res.generator_images.begin() + long(nn), res.generator_images.end());
  l.stats = res.stats;
  const FiniteGroup& g = l.group_part;

  // seeds: w * w' by (9), c * w' and c * c' by (5)
  std::vector<StarAssignment> seeds;
  std::vector<Elem> gens;
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      gens.push_back(l.wedge_gen(a, b));
      gens.push_back(l.bracket_gen(a, b));
    }
  const Elem ge = g.identity();
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      for (Elem u = 0; u < n; ++u)
        for (Elem v = 0; v < n; ++v) {
          Elem wab = l.wedge_gen(a, b), wuv = l.wedge_gen(u, v), cab = l.bracket_gen(a, b),
               cuv = l.bracket_gen(u, v);
          Elem cw = g.comm(cab, wuv);
          for (auto [x, y, val] : {StarAssignment{wab, wuv, l.wedge_gen(s(a, b), s(u, v))},
                                   StarAssignment{cab, wuv, cw}, StarAssignment{cab, cuv, cw}}) {
            if (x == ge || y == ge) {
              if (val != ge)
                throw StarExtensionInconsistent("a symbol equal to 1 has a nontrivial product");
              continue;
            }
            seeds.push_back({x, y, val});
          }
        }
  try {
    l.tilde_star = expand_star_from_generators(g, gens, seeds);
  } catch (const Inconsistent& ex) {
    throw StarExtensionInconsistent(std::string("star does not extend: ") + ex.what());
  }

  std::vector<Elem> imgs;
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      imgs.push_back(s(a, b));
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      imgs.push_back(k.comm(a, b));
  std::vector<Elem> syms(res.generator_images.begin(), res.generator_images.end());
  auto chi = extend_hom(g, k, syms, imgs);
  if (!chi)
    throw StarExtensionInconsistent("a^b -> a*b, [a,b]_0 -> [a,b] is not a homomorphism");
  l.to_target = *chi;
  if (int bad = check_lie_relations(l))
    throw StarExtensionInconsistent("relation (" + std::to_string(bad) + ") fails");
  return l;
}

int check_lie_relations(const LieExteriorSquare& l) {
  const FiniteGroup& k = l.base;
  const FiniteGroup& g = l.group_part;
  const StarTable& t = l.tilde_star;
  const int n = k.order();
  const Elem e = k.identity(), ge = g.identity();
  auto w = [&](Elem a, Elem b) { return l.wedge_gen(a, b); };
  auto c = [&](Elem a, Elem b) { return l.bracket_gen(a, b); };
  auto m = [&](Elem x, Elem y) { return g.mul(x, y); };

  for (Elem a = 0; a < n; ++a)
    for (Elem x : {w(e, a), w(a, e), w(a, a), c(e, a), c(a, e), c(a, a)})
      if (x != ge)
        return 1;
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (m(w(a, b), w(b, a)) != ge || m(c(a, b), c(b, a)) != ge)
        return 2;
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      for (Elem x = 0; x < n; ++x)
        if (w(a, k.mul(b, x)) != m(w(a, b), w(k.conj(b, a), k.conj(b, x))) ||
            c(a, k.mul(b, x)) != m(c(a, b), c(k.conj(b, a), k.conj(b, x))))
          return 3;
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      for (Elem x = 0; x < n; ++x)
        if (w(k.mul(a, b), x) != m(w(k.conj(a, b), k.conj(a, x)), w(a, x)) ||
            c(k.mul(a, b), x) != m(c(k.conj(a, b), k.conj(a, x)), c(a, x)))
          return 4;
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      for (Elem u = 0; u < n; ++u)
        for (Elem v = 0; v < n; ++v) {
          Elem x = g.comm(w(a, b), w(u, v));
          if (x != g.comm(c(a, b), w(u, v)) || x != t(c(a, b), w(u, v)) ||
              x != t(c(a, b), c(u, v)))
            return 5;
        }
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      for (Elem x = 0; x < n; ++x) {
        Elem u = k.conj(k.mul(a, b), k.inv(a)), ax = k.conj(a, x);
        Elem xb = k.conj(x, b), xa = k.conj(x, a);
        if (m(w(a, b), w(xb, xa)) != m(w(u, ax), w(a, x)))
          return 6;
        if (m(c(a, b), c(xb, xa)) != m(c(u, ax), c(a, x)))
          return 7;
      }
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      for (Elem u = 0; u < n; ++u)
        for (Elem v = 0; v < n; ++v)
          if (g.comm(c(a, b), c(u, v)) != c(k.comm(a, b), k.comm(u, v)))
            return 8;
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      for (Elem u = 0; u < n; ++u)
        for (Elem v = 0; v < n; ++v)
          if (t(w(a, b), w(u, v)) != w(l.star(a, b), l.star(u, v)))
            return 9;
  return 0;
}

bool verify_sequence3(const LieExteriorSquare& l, const AbelianInvariants& tilde_m) {
  Subgroup target = star_commutator_product(l.base, l.star);
  Subgroup img = image(l.group_part, l.base, l.to_target);
  if (img.members != target.members)
    return false;
  if (std::size_t(l.group_part.order()) != std::size_t(tilde_m.order()) * std::size_t(target.order()))
    return false;
  Subgroup ker = kernel(l.group_part, l.base, l.to_target);
  if (!is_abelian(l.group_part, ker))
    return false;
  return abelian_invariants(l.group_part, ker) == tilde_m;
}

} // namespace mlschur
