#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "mlschur/group.hpp"

using namespace mlschur;

namespace {

// brute-force isomorphism test for tiny groups: try all bijections fixing the
// identity that respect a generating set
bool isomorphic(const FiniteGroup& g, const FiniteGroup& h) {
  if (g.order() != h.order())
    return false;
  auto gens = minimal_generating_set(g);
  std::vector<std::vector<Elem>> cands;
  for (Elem s : gens) {
    std::vector<Elem> c;
    for (Elem x = 0; x < h.order(); ++x)
      if (element_order(h, x) == element_order(g, s))
        c.push_back(x);
    cands.push_back(c);
  }
  std::vector<std::size_t> idx(gens.size(), 0);
  while (true) {
    std::vector<Elem> imgs;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (cands[i].empty())
        return false;
      imgs.push_back(cands[i][idx[i]]);
    }
    if (auto f = extend_hom(g, h, gens, imgs)) {
      std::set<Elem> im(f->images.begin(), f->images.end());
      if (int(im.size()) == g.order())
        return true;
    }
    std::size_t i = 0;
    while (i < gens.size() && ++idx[i] == cands[i].size())
      idx[i++] = 0;
    if (i == gens.size())
      return false;
  }
}

int count_order(const FiniteGroup& g, int k) {
  int c = 0;
  for (Elem x = 0; x < g.order(); ++x)
    c += element_order(g, x) == k;
  return c;
}

} // namespace

TEST(GroupCore, Cyclic) {
  EXPECT_EQ(cyclic(1).order(), 1);
  auto c5 = cyclic(5);
  EXPECT_EQ(c5.order(), 5);
  EXPECT_EQ(exponent(c5), 5);
  EXPECT_EQ(abelian_invariants(cyclic(6)).factors, (std::vector<long long>{6}));
  EXPECT_EQ(abelian_invariants(cyclic(12)).factors, (std::vector<long long>{12}));
}

TEST(GroupCore, KleinFour) {
  auto v = klein_four();
  EXPECT_EQ(v.order(), 4);
  EXPECT_EQ(exponent(v), 2);
  EXPECT_EQ(abelian_invariants(v).factors, (std::vector<long long>{2, 2}));
  EXPECT_EQ(commutator_subgroup(v).order(), 1);
}

TEST(GroupCore, Dihedral) {
  auto d3 = dihedral(3);
  EXPECT_EQ(d3.order(), 6);
  auto c = commutator_subgroup(d3);
  EXPECT_EQ(c.order(), 3);
  EXPECT_TRUE(isomorphic(subgroup_as_group(d3, c), cyclic(3)));
  EXPECT_EQ(center(dihedral(4)).order(), 2);
  EXPECT_TRUE(isomorphic(dihedral(2), klein_four()));
  // relations a^2 = b^n = 1, aba = b^-1
  for (int n = 2; n <= 8; ++n) {
    auto d = dihedral(n);
    Elem a = *d.generator("a"), b = *d.generator("b");
    EXPECT_EQ(element_order(d, a), 2);
    EXPECT_EQ(element_order(d, b), n);
    EXPECT_EQ(d.mul(d.mul(a, b), a), d.inv(b));
  }
  EXPECT_EQ(commutator_subgroup(dihedral(5)).order(), 5);
}

TEST(GroupCore, Dicyclic) {
  auto q2 = dicyclic(2);
  EXPECT_EQ(q2.order(), 8);
  EXPECT_EQ(count_order(q2, 2), 1);
  EXPECT_EQ(element_order(q2, *q2.generator("a")), 4);
  for (int n = 2; n <= 6; ++n) {
    auto q = dicyclic(n);
    Elem a = *q.generator("a"), b = *q.generator("b");
    EXPECT_EQ(q.order(), 4 * n);
    EXPECT_EQ(element_order(q, b), 2 * n);
    EXPECT_EQ(q.mul(a, a), q.pow(b, n));
    EXPECT_EQ(q.conj(a, b), q.inv(b));
    // [Q_n, Q_n] = <b^2>
    Elem b2 = q.mul(b, b);
    EXPECT_EQ(commutator_subgroup(q), subgroup_generated(q, std::vector<Elem>{b2}));
  }
  EXPECT_TRUE(isomorphic(subgroup_as_group(dicyclic(3), commutator_subgroup(dicyclic(3))),
                         cyclic(3)));
}

TEST(GroupCore, Metacyclic) {
  auto m = metacyclic(8, 3, 2);
  EXPECT_EQ(m.order(), 24);
  Elem a = *m.generator("a"), b = *m.generator("b");
  EXPECT_EQ(m.mul(m.mul(m.inv(a), b), a), m.inv(b));
  EXPECT_EQ(metacyclic(8, 5, 2).order(), 40);
  for (int n = 3; n <= 7; ++n)
    EXPECT_TRUE(isomorphic(metacyclic(2, n, n - 1), dihedral(n)));
  EXPECT_THROW(metacyclic(2, 5, 2), GroupError);
}

TEST(GroupCore, DirectProduct) {
  EXPECT_TRUE(isomorphic(direct_product(cyclic(2), cyclic(2)), klein_four()));
  EXPECT_EQ(direct_product(dicyclic(2), cyclic(3)).order(), 24);
  EXPECT_EQ(abelian_invariants(direct_product(cyclic(4), cyclic(6))).factors,
            (std::vector<long long>{2, 12}));
  EXPECT_EQ(abelian_invariants(direct_product(cyclic(2), cyclic(4))).factors,
            (std::vector<long long>{2, 4}));
}

TEST(GroupCore, SL23) {
  auto s = sl_2_3();
  EXPECT_EQ(s.order(), 24);
  auto c = commutator_subgroup(s);
  EXPECT_EQ(c.order(), 8);
  EXPECT_TRUE(isomorphic(subgroup_as_group(s, c), dicyclic(2)));
  EXPECT_EQ(abelianization_invariants(s).factors, (std::vector<long long>{3}));
  // oracle: count 2x2 matrices over F3 with determinant 1
  int count = 0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c2 = 0; c2 < 3; ++c2)
        for (int d = 0; d < 3; ++d)
          count += ((a * d - b * c2) % 3 + 3) % 3 == 1;
  EXPECT_EQ(count, 24);
}

TEST(GroupCore, SubgroupsAndQuotients) {
  auto d3 = dihedral(3);
  Elem b = *d3.generator("b"), a = *d3.generator("a");
  auto sb = subgroup_generated(d3, std::vector<Elem>{b});
  EXPECT_EQ(sb.order(), 3);
  auto q = quotient(d3, sb);
  EXPECT_TRUE(isomorphic(q.group, cyclic(2)));
  EXPECT_TRUE(is_homomorphism(d3, q.group, q.projection));
  EXPECT_EQ(kernel(d3, q.group, q.projection), sb);
  auto d4 = dihedral(4);
  EXPECT_EQ(normal_closure(d4, std::vector<Elem>{*d4.generator("a")}).order(), 4);
  EXPECT_THROW(quotient(d3, subgroup_generated(d3, std::vector<Elem>{a})), GroupError);
}

TEST(GroupCore, NormalClosureD4) {
  // oracle: closure of {a} and all its conjugates, computed by hand iteration
  auto d4 = dihedral(4);
  Elem a = *d4.generator("a");
  std::set<Elem> s{d4.identity(), a};
  bool grew = true;
  while (grew) {
    grew = false;
    std::set<Elem> t = s;
    for (Elem x : s)
      for (Elem y : s)
        t.insert(d4.mul(x, y));
    for (Elem x : s)
      for (Elem g = 0; g < 8; ++g)
        t.insert(d4.conj(g, x));
    if (t.size() != s.size()) {
      s = t;
      grew = true;
    }
  }
  EXPECT_EQ(normal_closure(d4, std::vector<Elem>{a}).order(), int(s.size()));
  // the closure of {a, b} is the whole group
  EXPECT_EQ(normal_closure(d4, std::vector<Elem>{a, *d4.generator("b")}).order(), 8);
}

TEST(GroupCore, ConjugationConvention) {
  auto d3 = dihedral(3);
  Elem a = *d3.generator("a"), b = *d3.generator("b");
  EXPECT_EQ(conjugate(d3, a, b), d3.inv(b));
  EXPECT_EQ(conjugate(d3, d3.identity(), b), b);
  EXPECT_EQ(d3.comm(a, b), d3.mul(d3.mul(a, b), d3.mul(d3.inv(a), d3.inv(b))));
}

TEST(GroupCore, HomInvariants) {
  EXPECT_EQ(hom_invariants_to_cyclic({{2, 2}}, 2).factors, (std::vector<long long>{2, 2}));
  EXPECT_EQ(hom_invariants_to_cyclic({{6}}, 4).factors, (std::vector<long long>{2}));
  EXPECT_TRUE(hom_invariants_to_cyclic({{7}}, 1).trivial());
  // brute force: homomorphisms Z6 -> Z4 are determined by the image of 1,
  // which must have order dividing 6
  int homs = 0;
  for (int x = 0; x < 4; ++x)
    homs += (6 * x) % 4 == 0;
  EXPECT_EQ(homs, 2);
  EXPECT_EQ(dual_invariants({{2, 2}}).factors, (std::vector<long long>{2, 2}));
  EXPECT_TRUE(dual_invariants({}).trivial());
}

TEST(GroupCore, NormalizeInvariants) {
  std::vector<long long> v{2, 3, 4};
  EXPECT_EQ(normalize_invariants(v).factors, (std::vector<long long>{2, 12}));
  std::vector<long long> w{1, 6, 9};
  EXPECT_EQ(normalize_invariants(w).factors, (std::vector<long long>{3, 18}));
}

TEST(GroupCore, ParseFormatRoundTrip) {
  auto g = dihedral(4);
  auto text = format_group(g);
  auto h = parse_group(text);
  EXPECT_EQ(h.cayley(), g.cayley());
  EXPECT_EQ(h.label(), "D4");
  EXPECT_THROW(parse_group("group x\norder 2\ntable\n0 1\n1 1\n"), GroupError);
  EXPECT_THROW(parse_group("group x\norder 2\ntable\n0 1\n"), GroupError);
  EXPECT_THROW(parse_group("grp x\n"), GroupError);
  EXPECT_NO_THROW(parse_group("group z2\norder 2  \ntable\n0 1 \n1 0\n"));
}

TEST(GroupCore, RejectsNonAssociative) {
  // Latin square with identity 0 that is not associative (order 5 loop)
  std::vector<std::vector<Elem>> t = {{0, 1, 2, 3, 4},
                                      {1, 0, 3, 4, 2},
                                      {2, 4, 0, 1, 3},
                                      {3, 2, 4, 0, 1},
                                      {4, 3, 1, 2, 0}};
  EXPECT_THROW(FiniteGroup("loop", t), GroupError);
}

TEST(GroupCore, RejectsNonAbelianInvariants) {
  EXPECT_THROW(abelian_invariants(dihedral(3)), GroupError);
}

TEST(GroupCore, Automorphisms) {
  EXPECT_EQ(automorphisms(klein_four()).size(), 6u);
  EXPECT_EQ(automorphisms(cyclic(8)).size(), 4u);
  EXPECT_EQ(automorphisms(dihedral(3)).size(), 6u);
  EXPECT_EQ(automorphisms(dicyclic(2)).size(), 24u);
}

TEST(GroupCore, ElementNames) {
  auto d3 = dihedral(3);
  EXPECT_EQ(d3.element_name(d3.identity()), "1");
  EXPECT_EQ(d3.element_name(*d3.generator("a")), "a");
  EXPECT_EQ(d3.element_name(*d3.generator("b")), "b");
}
