#include <gtest/gtest.h>

#include <set>

#include "oracle.hpp"
#include "orbitfn/orbitfn.hpp"

using namespace orbitfn;

namespace {

RootSystem sys(const char* name) { return RootSystem::build(AlgebraType::parse(name)); }

std::size_t count(const RootSystem& rs, RootLength t) { return rs.positive_roots(t).size(); }

}  // namespace

TEST(RootSystem, G2PositiveRootsSplitEvenly) {
  const auto rs = sys("G2");
  EXPECT_EQ(rs.positive_roots().size(), 6u);
  EXPECT_EQ(count(rs, RootLength::Long), 3u);
  EXPECT_EQ(count(rs, RootLength::Short), 3u);
}

TEST(RootSystem, B3HasEighteenRootsSixShort) {
  const auto rs = sys("B3");
  EXPECT_EQ(rs.all_roots().size(), 18u);
  EXPECT_EQ(2 * count(rs, RootLength::Short), 6u);
}

TEST(RootSystem, A1SingleRootCountsAsLong) {
  const auto rs = sys("A1");
  ASSERT_EQ(rs.positive_roots().size(), 1u);
  EXPECT_EQ(rs.positive_roots()[0].length, RootLength::Long);
  EXPECT_FALSE(rs.has_two_lengths());
}

TEST(RootSystem, SimpleRootLengths) {
  EXPECT_EQ(sys("C4").classify(sys("C4").simple_root(3)), RootLength::Long);
  EXPECT_EQ(sys("B4").classify(sys("B4").simple_root(0)), RootLength::Long);
  EXPECT_EQ(sys("B4").classify(sys("B4").simple_root(3)), RootLength::Short);
  EXPECT_EQ(sys("G2").classify(sys("G2").simple_root(1)), RootLength::Short);
  EXPECT_EQ(sys("G2").simple_root_length(0), RootLength::Long);
}

TEST(RootSystem, ClassifyRejectsNonRoots) {
  const auto rs = sys("G2");
  EXPECT_THROW(rs.classify(Weight{1, 1}), NotARoot);
  EXPECT_THROW(rs.classify(Weight{0, 0}), NotARoot);
}

TEST(RootSystem, SubsystemTypes) {
  EXPECT_EQ(sys("C4").subsystem(RootLength::Short).type, "D4");
  EXPECT_EQ(sys("G2").subsystem(RootLength::Long).type, "A2");
  EXPECT_EQ(sys("G2").subsystem(RootLength::Short).type, "A2");
  EXPECT_EQ(sys("B2").subsystem(RootLength::Short).type, "2A1");
  EXPECT_EQ(sys("B3").subsystem(RootLength::Long).type, canonical_type_name("D3"));
  EXPECT_EQ(canonical_type_name("D3"), "A3");
  EXPECT_EQ(sys("C3").subsystem(RootLength::Long).type, "3A1");
  EXPECT_EQ(sys("F4").subsystem(RootLength::Long).type, "D4");
  EXPECT_EQ(sys("F4").subsystem(RootLength::Short).type, "D4");
  EXPECT_THROW(sys("A3").subsystem(RootLength::Short), NoTwoLengths);
}

TEST(RootSystem, RootCountsAgreeWithBruteForceClosure) {
  for (const char* name : {"A2", "B2", "C2", "G2", "B3", "C3", "F4"}) {
    const auto rs = sys(name);
    const auto ref = oracle::roots(oracle::cartan(name));
    EXPECT_EQ(rs.all_roots().size(), ref.size()) << name;
    for (const auto& r : rs.all_roots()) EXPECT_TRUE(ref.count(oracle::Vec(r.weight.begin(), r.weight.end()))) << name;
  }
}

TEST(RootSystem, TableRootCountsAcrossTypes) {
  for (const char* name : {"A1", "A5", "B5", "C6", "D4", "D6", "E6", "E7", "E8", "F4", "G2"}) {
    const auto t = AlgebraType::parse(name);
    EXPECT_EQ(RootSystem::build(t).all_roots().size(), expected_root_count(t)) << name;
  }
}

TEST(RootSystem, HighestRootMarks) {
  EXPECT_EQ(sys("G2").marks(), (std::vector<std::int64_t>{2, 3}));
  EXPECT_EQ(sys("F4").marks(), (std::vector<std::int64_t>{2, 3, 4, 2}));
  EXPECT_EQ(sys("B3").marks(), (std::vector<std::int64_t>{1, 2, 2}));
  EXPECT_EQ(sys("C3").marks(), (std::vector<std::int64_t>{2, 2, 1}));
  EXPECT_EQ(sys("E8").marks(), (std::vector<std::int64_t>{2, 3, 4, 6, 5, 4, 3, 2}));
}

TEST(RootSystem, RhoDecomposes) {
  for (const char* name : {"G2", "B3", "C4", "F4"}) {
    const auto rs = sys(name);
    EXPECT_EQ(rs.rho(), rs.rho_long() + rs.rho_short()) << name;
    EXPECT_EQ(rs.rho(), Weight(std::vector<std::int64_t>(rs.rank(), 1))) << name;
  }
  // rho^L of G2 is omega_1 with alpha_1 long.
  EXPECT_EQ(sys("G2").rho_long(), (Weight{1, 0}));
}

TEST(Pairing, Basics) {
  EXPECT_DOUBLE_EQ(pairing(Weight{1, 0}, Point{1.0, 0.0}), 1.0);
  EXPECT_DOUBLE_EQ(pairing(Weight{0, 0}, Point{0.37, -5.0}), 0.0);
  EXPECT_NEAR(pairing(sys("G2").rho(), Point{0.1, 0.2}), 0.3, 1e-15);
  EXPECT_THROW(pairing(Weight{1, 0, 0}, Point{1.0, 0.0}), DimensionMismatch);
}

TEST(FundamentalDomain, G2Vertices) {
  const auto fd = sys("G2").fundamental_domain();
  ASSERT_EQ(fd.vertices.size(), 3u);
  // omega-check_1 / 2 and omega-check_2 / 3 in alpha-check coordinates.
  const auto rs = sys("G2");
  const auto w1 = rs.coweight(0), w2 = rs.coweight(1);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_NEAR(fd.vertices[0][i], 0.0, 1e-15);
    EXPECT_NEAR(fd.vertices[1][i], w1[i] / 2, 1e-15);
    EXPECT_NEAR(fd.vertices[2][i], w2[i] / 3, 1e-15);
  }
}

TEST(FundamentalDomain, Membership) {
  const auto fd = sys("F4").fundamental_domain();
  const Point zero(4);
  EXPECT_TRUE(fd.contains(zero));
  EXPECT_EQ(fd.faces_containing(zero), (std::set<int>{1, 2, 3, 4}));
  Point mid(4);
  for (std::size_t i = 0; i < 4; ++i) mid[i] = 0.5 * (fd.vertices[2][i] + fd.vertices[4][i]);
  EXPECT_TRUE(fd.contains(mid));
  Point out = 2.0 * fd.vertices[1];
  EXPECT_FALSE(fd.contains(out));
}

TEST(AlgebraType, ParseAndValidate) {
  EXPECT_EQ(AlgebraType::parse("g2").to_string(), "G2");
  EXPECT_THROW(AlgebraType::parse("G3"), InvalidAlgebra);
  EXPECT_THROW(AlgebraType::parse("E9"), InvalidAlgebra);
  EXPECT_THROW(AlgebraType::parse("B1"), InvalidAlgebra);
  EXPECT_THROW(AlgebraType::parse("Q2"), InvalidAlgebra);
  EXPECT_THROW(AlgebraType::parse(""), InvalidAlgebra);
}

TEST(RootSystem, SingularCartanRejected) {
  IntMatrix bad(2);
  bad(0, 0) = 2;
  bad(0, 1) = -4;
  bad(1, 0) = -1;
  bad(1, 1) = 2;
  EXPECT_THROW(RootSystem::from_cartan(AlgebraType::parse("G2"), bad), InvalidAlgebra);
}

TEST(RootSystem, ReflectionsPreserveRoots) {
  const auto rs = sys("F4");
  for (const auto& r : rs.all_roots())
    for (std::size_t i = 0; i < rs.rank(); ++i) EXPECT_TRUE(rs.is_root(rs.reflect(i, r.weight)));
}
