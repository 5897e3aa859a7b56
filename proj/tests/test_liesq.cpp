#include <gtest/gtest.h>

#include <set>

#include "mlschur/cohomology.hpp"
#include "mlschur/liesq.hpp"

using namespace mlschur;

namespace {

AbelianInvariants inv(std::vector<long long> f) { return normalize_invariants(f); }

void check_structure(const LieExteriorSquare& l) {
  const FiniteGroup& k = l.base;
  const int n = k.order();
  EXPECT_FALSE(check_star_axioms(l.group_part, l.tilde_star));
  EXPECT_EQ(check_lie_relations(l), 0);
  std::set<Elem> wedges(l.wedge_table.begin(), l.wedge_table.end());
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      EXPECT_EQ(l.to_target(l.wedge_gen(a, b)), l.star(a, b));
      EXPECT_EQ(l.to_target(l.bracket_gen(a, b)), k.comm(a, b));
      for (Elem u = 0; u < n; ++u)
        for (Elem v = 0; v < n; ++v)
          EXPECT_TRUE(wedges.count(l.tilde_star(l.wedge_gen(a, b), l.wedge_gen(u, v))));
    }
  EXPECT_EQ(image(l.group_part, k, l.to_target), star_commutator_product(k, l.star));
}

} // namespace

TEST(LieSquare, PresentationShape) {
  auto p = lie_exterior_presentation(klein_four());
  EXPECT_EQ(p.generator_count(), 32);
  EXPECT_NO_THROW(p.validate());
}

TEST(LieSquare, CyclicTrivial) {
  for (int n = 2; n <= 8; ++n) {
    auto k = cyclic(n);
    auto l = lie_exterior_square(k, trivial_star(k));
    EXPECT_EQ(l.group_part.order(), 1);
    EXPECT_TRUE(verify_sequence3(l, tilde_schur(k, trivial_star(k))));
  }
}

TEST(LieSquare, KleinFourTrivialStar) {
  auto v = klein_four();
  auto l = lie_exterior_square(v, trivial_star(v));
  check_structure(l);
  EXPECT_EQ(abelian_invariants(l.group_part), inv({2, 2}));
  EXPECT_EQ(l.tilde_star, trivial_star(l.group_part));
  EXPECT_TRUE(verify_sequence3(l, tilde_schur(v, trivial_star(v))));
}

TEST(LieSquare, DihedralThree) {
  auto d = dihedral(3);
  for (int i = 1; i <= 3; ++i) {
    auto s = parse_star_sugar("a*b=b^" + std::to_string(i), d);
    auto l = lie_exterior_square(d, s);
    check_structure(l);
    EXPECT_TRUE(l.group_part.is_abelian());
    EXPECT_EQ(abelian_invariants(l.group_part), inv({3, 3}));
    EXPECT_EQ(l.tilde_star, trivial_star(l.group_part));
  }
}

TEST(LieSquare, OtherSmallCases) {
  for (const auto& [k, sugar] : std::vector<std::pair<FiniteGroup, std::string>>{
           {dihedral(4), "a*b=b^2"}, {dihedral(4), "commutator"}, {dicyclic(2), "a*b=b^2"},
           {direct_product(cyclic(2), cyclic(4)), "trivial"}}) {
    auto l = lie_exterior_square(k, parse_star_sugar(sugar, k));
    check_structure(l);
  }
}

TEST(LieSquare, KleinFourProperStar) {
  auto v = klein_four();
  auto l = lie_exterior_square(v, parse_star_sugar("a*b=a", v));
  check_structure(l);
  EXPECT_EQ(l.tilde_star, trivial_star(l.group_part));
  EXPECT_EQ(abelian_invariants(l.group_part), inv({2, 2, 2}));
}

TEST(LieSquare, OrderGuard) {
  auto k = cyclic(9);
  EXPECT_THROW(lie_exterior_square(k, trivial_star(k)), GroupError);
}
