#include <gtest/gtest.h>

#include <random>

#include "mlschur/presentation.hpp"

using namespace mlschur;

namespace {

int count_order(const FiniteGroup& g, int k) {
  int c = 0;
  for (Elem x = 0; x < g.order(); ++x)
    c += element_order(g, x) == k;
  return c;
}

// same multiset of element orders and same center/commutator sizes
bool same_fingerprint(const FiniteGroup& a, const FiniteGroup& b) {
  if (a.order() != b.order())
    return false;
  for (int k = 1; k <= a.order(); ++k)
    if (count_order(a, k) != count_order(b, k))
      return false;
  return center(a).order() == center(b).order() &&
         commutator_subgroup(a).order() == commutator_subgroup(b).order();
}

} // namespace

TEST(Presentation, ParseBasics) {
  auto p = parse_presentation("gens: a b ; rels: a^2, b^3, (a b)^2");
  EXPECT_EQ(p.generator_count(), 2);
  ASSERT_EQ(p.relators.size(), 3u);
  EXPECT_EQ(p.relators[0], (Word{1, 1}));
  EXPECT_EQ(p.relators[1], (Word{2, 2, 2}));
  EXPECT_EQ(p.relators[2], (Word{1, 2, 1, 2}));
  auto z5 = parse_presentation("gens: a ; rels: a^5");
  EXPECT_EQ(z5.relators[0].size(), 5u);
  auto q8 = parse_presentation("gens: a b ; rels: a^2 b^-2, a b a^-1 b");
  EXPECT_EQ(q8.relators[0], (Word{1, 1, -2, -2}));
  auto c = parse_presentation("gens: x y ; rels: [x, y], x = y^2");
  EXPECT_EQ(c.relators[0], (Word{1, 2, -1, -2}));
  EXPECT_EQ(c.relators[1], (Word{1, -2, -2}));
}

TEST(Presentation, ParseErrors) {
  try {
    parse_presentation("gens: a b ;\nrels: a^2, c");
    FAIL();
  } catch (const PresentationError& e) {
    EXPECT_EQ(e.line, 2);
    EXPECT_EQ(e.column, 12);
  }
  EXPECT_THROW(parse_presentation("gens a ; rels: a"), PresentationError);
  EXPECT_THROW(parse_presentation("gens: a ; rels: a^"), PresentationError);
  EXPECT_THROW(parse_presentation("gens: a a ; rels: a"), PresentationError);
  EXPECT_THROW(parse_presentation("gens: a ; rels: (a"), PresentationError);
}

TEST(Presentation, RoundTrip) {
  for (const char* s : {"gens: a b ; rels: a^2, b^3, (a b)^2",
                        "gens: a b c ; rels: a^-3 b c^2, [a, b], c a c^-1 b^-1"}) {
    auto p = parse_presentation(s);
    auto q = parse_presentation(format_presentation(p));
    EXPECT_EQ(p.generator_names, q.generator_names);
    EXPECT_EQ(p.relators, q.relators);
  }
}

TEST(Presentation, ToddCoxeterSmall) {
  auto d3 = todd_coxeter(parse_presentation("gens: a b ; rels: a^2, b^3, (a b)^2"));
  EXPECT_EQ(d3.group.order(), 6);
  EXPECT_TRUE(same_fingerprint(d3.group, dihedral(3)));
  auto z5 = todd_coxeter(parse_presentation("gens: a ; rels: a^5"));
  EXPECT_EQ(z5.group.order(), 5);
  EXPECT_EQ(z5.evaluate({1, 1, 1, 1, 1}), z5.group.identity());
  auto q8 = todd_coxeter(parse_presentation("gens: a b ; rels: a^2 b^-2, a b a^-1 b"));
  EXPECT_EQ(q8.group.order(), 8);
  EXPECT_EQ(count_order(q8.group, 2), 1);
  EXPECT_TRUE(same_fingerprint(q8.group, dicyclic(2)));
}

TEST(Presentation, ToddCoxeterFamilies) {
  for (int n = 2; n <= 10; ++n) {
    auto p = parse_presentation("gens: a b ; rels: a^2, b^" + std::to_string(n) +
                                ", a b a b");
    auto r = todd_coxeter(p);
    EXPECT_EQ(r.group.order(), 2 * n);
    EXPECT_TRUE(same_fingerprint(r.group, dihedral(n)));
  }
  for (int n = 2; n <= 6; ++n) {
    auto p = parse_presentation("gens: a b ; rels: a^2 b^-" + std::to_string(n) +
                                ", a b a^-1 b");
    EXPECT_TRUE(same_fingerprint(todd_coxeter(p).group, dicyclic(n)));
  }
  // SL(2,3) as the binary tetrahedral group
  auto t = todd_coxeter(parse_presentation("gens: r s t ; rels: r^2 = s^3, s^3 = t^3, t^3 = r s t"));
  EXPECT_EQ(t.group.order(), 24);
  EXPECT_TRUE(same_fingerprint(t.group, sl_2_3()));
  // the trivial group and a collapse
  EXPECT_EQ(todd_coxeter(parse_presentation("gens: a b ; rels: a, b")).group.order(), 1);
  EXPECT_EQ(
      todd_coxeter(parse_presentation("gens: a b ; rels: a^4, b^2, b a b^-1 a^-2")).group.order(),
      2);
}

TEST(Presentation, EvaluatorIsHomomorphism) {
  auto r = todd_coxeter(parse_presentation("gens: a b ; rels: a^2, b^4, (a b)^2"));
  std::mt19937 rng(3);
  for (int it = 0; it < 200; ++it) {
    Word u, v;
    for (int i = 0; i < int(rng() % 8); ++i)
      u.push_back(int(rng() % 2 + 1) * (rng() % 2 ? 1 : -1));
    for (int i = 0; i < int(rng() % 8); ++i)
      v.push_back(int(rng() % 2 + 1) * (rng() % 2 ? 1 : -1));
    Word uv = u;
    uv.insert(uv.end(), v.begin(), v.end());
    EXPECT_EQ(r.evaluate(uv), r.group.mul(r.evaluate(u), r.evaluate(v)));
    EXPECT_EQ(r.evaluate(inverse_word(u)), r.group.inv(r.evaluate(u)));
  }
}

TEST(Presentation, OverflowAndRejection) {
  EXPECT_THROW(todd_coxeter(parse_presentation("gens: a b ; rels: a^2"), 500),
               EnumerationOverflow);
  EXPECT_THROW(todd_coxeter(parse_presentation("gens: a ; rels:")), PresentationError);
  EXPECT_THROW(todd_coxeter(parse_presentation("gens: a ; rels: a^100"), 50),
               EnumerationOverflow);
}

TEST(Presentation, Determinism) {
  auto p = parse_presentation("gens: a b ; rels: a^2, b^3, (a b)^4");
  auto t1 = enumerate_cosets(p, 1000);
  auto t2 = enumerate_cosets(p, 1000);
  EXPECT_EQ(t1.action, t2.action);
  EXPECT_EQ(t1.coset_count, 24u);
  // full scan: every relator at every coset
  for (std::size_t c = 0; c < t1.coset_count; ++c)
    for (const auto& r : p.relators) {
      int x = int(c);
      for (int l : r)
        x = t1(std::size_t(x), l > 0 ? 2 * (l - 1) : 2 * (-l - 1) + 1);
      EXPECT_EQ(x, int(c));
    }
}

TEST(Presentation, TietzeKeepsGroup) {
  auto p = parse_presentation("gens: a b c d ; rels: c = a b, d = c^2, a^2, b^3, c^2 = b a b");
  auto t = tietze_reduce(p);
  EXPECT_LT(t.reduced.generator_count(), 4);
  EXPECT_EQ(todd_coxeter(p).group.order(), todd_coxeter(t.reduced).group.order());
}
