#include <gtest/gtest.h>

#include <numeric>

#include "mlschur/exterior.hpp"

using namespace mlschur;

namespace {

AbelianInvariants inv(std::vector<long long> f) { return normalize_invariants(f); }

Elem gen(const FiniteGroup& g, const char* name) { return *g.generator(name); }

void check_square(const ExteriorSquare& e) {
  const FiniteGroup& k = e.base;
  const int n = k.order();
  for (Elem x = 0; x < n; ++x) {
    EXPECT_EQ(e.wedge(x, x), e.square.identity());
    for (Elem y = 0; y < n; ++y) {
      EXPECT_EQ(e.chi(e.wedge(x, y)), k.comm(x, y));
      EXPECT_EQ(e.square.mul(e.wedge(x, y), e.wedge(y, x)), e.square.identity());
      for (Elem z = 0; z < n; ++z) {
        EXPECT_EQ(e.wedge(k.mul(x, y), z),
                  e.square.mul(e.wedge(k.conj(x, y), k.conj(x, z)), e.wedge(x, z)));
        EXPECT_EQ(e.wedge(x, k.mul(y, z)),
                  e.square.mul(e.wedge(x, y), e.wedge(k.conj(y, x), k.conj(y, z))));
      }
    }
  }
  auto m = schur_multiplier(e);
  EXPECT_EQ(e.square.order(), m.order() * commutator_subgroup(k).order());
  EXPECT_TRUE(is_central(e.square, kernel(e.square, k, e.chi)));
}

} // namespace

TEST(Exterior, SmallSquares) {
  auto v = exterior_square(klein_four());
  EXPECT_EQ(abelian_invariants(v.square), inv({2}));
  check_square(v);
  for (int n : {2, 5, 6, 12}) {
    auto c = exterior_square(cyclic(n));
    EXPECT_EQ(c.square.order(), 1);
  }
  auto q = exterior_square(dicyclic(3));
  EXPECT_EQ(abelian_invariants(q.square), inv({3}));
  check_square(q);
  check_square(exterior_square(dihedral(4)));
  check_square(exterior_square(dihedral(3)));
}

TEST(Exterior, SchurMultipliers) {
  EXPECT_EQ(schur_multiplier(klein_four()), inv({2}));
  for (int n = 2; n <= 4; ++n)
    EXPECT_TRUE(schur_multiplier(dicyclic(n)).trivial());
  // M(Z4 x Z6) = Hom(Z4, Z6) = Z2
  EXPECT_EQ(schur_multiplier(direct_product(cyclic(4), cyclic(6))), inv({2}));
  EXPECT_EQ(schur_multiplier(dihedral(4)), inv({2}));
  EXPECT_TRUE(schur_multiplier(dihedral(5)).trivial());
  EXPECT_TRUE(schur_multiplier(sl_2_3()).trivial());
}

TEST(Exterior, AbelianSquareIsAlternatingSquare) {
  // for K = Z_m x Z_n the square is Z_gcd(m,n)
  for (auto [m, n] : std::vector<std::pair<int, int>>{{2, 2}, {2, 4}, {4, 6}, {3, 6}}) {
    auto e = exterior_square(direct_product(cyclic(m), cyclic(n)));
    EXPECT_TRUE(e.square.is_abelian());
    EXPECT_EQ(abelian_invariants(e.square), inv({std::gcd(m, n)})) << m << "x" << n;
  }
}

TEST(Exterior, SlSquareIsQuaternion) {
  auto e = exterior_square(sl_2_3());
  EXPECT_EQ(e.square.order(), 8);
  int involutions = 0;
  for (Elem x = 0; x < 8; ++x)
    involutions += element_order(e.square, x) == 2;
  EXPECT_EQ(involutions, 1);
}

TEST(Exterior, OrderGuard) {
  EXPECT_THROW(exterior_square(cyclic(max_exterior_order + 1)), GroupError);
}

TEST(Exterior, Phi) {
  auto e = exterior_square(dihedral(3));
  auto triv = attach_phi(e, trivial_star(e.base));
  for (Elem x : triv.images)
    EXPECT_EQ(x, e.base.identity());
  EXPECT_EQ(attach_phi(e, commutator_star(e.base)).images, e.chi.images);

  auto v = exterior_square(klein_four());
  auto phi = attach_phi(v, parse_star_sugar("a*b=a", v.base));
  std::vector<Elem> a{gen(v.base, "a")};
  EXPECT_EQ(image(v.square, v.base, phi), subgroup_generated(v.base, a));

  StarTable bad(4, v.base.identity());
  bad.set(1, 1, 2);
  EXPECT_THROW(attach_phi(v, bad), Inconsistent);
}

TEST(Exterior, JSubgroup) {
  auto v = exterior_square(klein_four());
  auto j = j_subgroup(v, parse_star_sugar("a*b=a", v.base));
  EXPECT_EQ(j.closure.order(), 1);
  EXPECT_EQ(mod_j_dual_invariants(v, parse_star_sugar("a*b=a", v.base)), inv({2}));

  auto d = exterior_square(dihedral(3));
  EXPECT_EQ(j_subgroup(d, trivial_star(d.base)).closure.order(), 1);
  for (int n : {3, 5}) {
    auto e = exterior_square(dihedral(n));
    for (int i = 1; i <= n; ++i)
      EXPECT_EQ(mod_j_dual_invariants(e, parse_star_sugar("a*b=b^" + std::to_string(i), e.base)),
                inv({n}));
  }
}

TEST(Exterior, JForDicyclicByCommutators) {
  // M(Q_n) = 1, so chi is injective and J is determined by the chi-images of
  // its generators, which are products of commutators in K
  for (int n = 2; n <= 4; ++n) {
    auto e = exterior_square(dicyclic(n));
    const FiniteGroup& k = e.base;
    for (int i = 2; i <= 2 * n - 1; i += 2) {
      auto s = parse_star_sugar("a*b=b^" + std::to_string(i), k);
      std::vector<Elem> imgs;
      for (Elem x = 0; x < k.order(); ++x)
        for (Elem y = 0; y < k.order(); ++y)
          for (Elem z = 0; z < k.order(); ++z)
            imgs.push_back(k.mul(k.mul(k.comm(s(x, y), k.conj(y, z)), k.comm(s(y, z), k.conj(z, x))),
                                 k.comm(s(z, x), k.conj(x, y))));
      auto j = j_subgroup(e, s);
      std::vector<Elem> mapped;
      for (Elem x : j.closure.members)
        mapped.push_back(e.chi(x));
      std::sort(mapped.begin(), mapped.end());
      EXPECT_EQ(mapped, normal_closure(k, imgs).members) << n << " " << i;
      EXPECT_TRUE(j.normal);
      auto quo = quotient(e.square, j.closure);
      EXPECT_EQ(mod_j_dual_invariants(e, s), abelianization_invariants(quo.group));
    }
  }
}

TEST(Exterior, JForDicyclicAsPublished) {
  // J = <(b^2)^i>, of order n / gcd(n,i), and square / J = Z_gcd(n,i)
  for (int n = 2; n <= 4; ++n) {
    auto e = exterior_square(dicyclic(n));
    for (int i = 2; i <= 2 * n - 1; i += 2) {
      auto s = parse_star_sugar("a*b=b^" + std::to_string(i), e.base);
      int g = std::gcd(n, i);
      EXPECT_EQ(j_subgroup(e, s).closure.order(), n / g) << n << " " << i;
      EXPECT_EQ(mod_j_dual_invariants(e, s), g == 1 ? inv({}) : inv({g})) << n << " " << i;
    }
  }
}

TEST(Exterior, JInsideKernelOfPhi) {
  for (const auto& k : {klein_four(), dihedral(3), dihedral(4), dicyclic(2), cyclic(4)}) {
    auto e = exterior_square(k);
    for (const auto& m : enumerate_stars(k)) {
      auto phi = attach_phi(e, m.star);
      auto ker = kernel(e.square, k, phi);
      for (Elem x : j_subgroup(e, m.star).closure.members)
        EXPECT_TRUE(ker.contains(x));
    }
  }
}
