#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "mlschur/verify.hpp"

using namespace mlschur;

TEST(Verify, GroupSpecs) {
  EXPECT_EQ(group_from_spec("Z6").order(), 6);
  EXPECT_EQ(group_from_spec("C5").order(), 5);
  EXPECT_EQ(group_from_spec("V4").order(), 4);
  EXPECT_EQ(group_from_spec("D5").order(), 10);
  EXPECT_EQ(group_from_spec("Q3").order(), 12);
  EXPECT_EQ(group_from_spec("SL(2,3)").order(), 24);
  EXPECT_EQ(group_from_spec("M8,3,2").order(), 24);
  auto p = group_from_spec("Z2xZ4xZ3");
  EXPECT_EQ(p.order(), 24);
  EXPECT_EQ(abelian_invariants(p), normalize_invariants(std::vector<long long>{2, 12}));
  EXPECT_EQ(group_from_spec("gens: a b ; rels: a^2, b^3, [a,b]").order(), 6);
  EXPECT_THROW(group_from_spec("X9"), GroupError);
  EXPECT_THROW(group_from_spec("Zq"), GroupError);
}

TEST(Verify, GroupFileRoundTrip) {
  auto d = dihedral(4);
  std::string path = ::testing::TempDir() + "d4.grp";
  {
    std::ofstream out(path);
    out << format_group(d);
  }
  auto back = group_from_spec("file:" + path);
  EXPECT_EQ(back.order(), 8);
  EXPECT_EQ(commutator_subgroup(back).order(), 2);
  std::remove(path.c_str());
}

TEST(Verify, StarSpecs) {
  auto d = dihedral(3);
  EXPECT_EQ(star_from_spec(d, "improper"), commutator_star(d));
  EXPECT_EQ(star_from_spec(d, "trivial"), trivial_star(d));
  auto s = star_from_spec(d, "a*b=b");
  EXPECT_FALSE(check_star_axioms(d, s));
}

TEST(Verify, RowsPassFailAndSkip) {
  ManifestRow good{"Z2xZ4", "Z2xZ4", "trivial", {}, ""};
  good.expected.exterior = normalize_invariants(std::vector<long long>{2});
  good.expected.schur = normalize_invariants(std::vector<long long>{2});
  good.expected.tilde = normalize_invariants(std::vector<long long>{2, 2});
  auto v = verify_row(good);
  EXPECT_EQ(v.status, RowStatus::pass);
  ASSERT_TRUE(v.computed);
  EXPECT_EQ(v.computed->group_order, 8);

  ManifestRow wrong = good;
  wrong.expected.schur = AbelianInvariants{};
  auto w = verify_row(wrong);
  EXPECT_EQ(w.status, RowStatus::fail);
  ASSERT_EQ(w.mismatches.size(), 1u);
  EXPECT_EQ(w.mismatches[0], "schur: expected [], got [2]");

  ManifestRow flagged{"p3", "gens: a b ; rels: a^2, b^2, [a,b], b = a", "trivial", {}, "flag"};
  auto f = verify_row(flagged);
  EXPECT_EQ(f.status, RowStatus::skipped);
  EXPECT_EQ(f.reason, "flag: the presentation defines a group of order 2");

  ManifestRow bad_star{"Q2 odd", "Q2", "a*b=b", {}, ""};
  auto b = verify_row(bad_star);
  EXPECT_EQ(b.status, RowStatus::skipped);
  EXPECT_EQ(b.reason.rfind("invalid-structure:", 0), 0u);
}

TEST(Verify, BuiltinManifestShape) {
  auto rows = builtin_manifest();
  int flagged = 0;
  for (const auto& r : rows)
    flagged += !r.skip.empty();
  EXPECT_EQ(flagged, 1);
  // 3 cyclic, V4, SL23, 3+5+7 dicyclic, 3+4+5+6 dihedral, 4 products, Q2xZ3, 3 metacyclic, 2 presentations
  EXPECT_EQ(rows.size(), 48u);
}
