#include <gtest/gtest.h>

#include "oracle.hpp"
#include "orbitfn/orbitfn.hpp"

using namespace orbitfn;

namespace {

RootSystem sys(const char* name) { return RootSystem::build(AlgebraType::parse(name)); }

QuadratureSpec mc(std::uint64_t n, unsigned workers = 1) {
  QuadratureSpec s;
  s.samples_or_resolution = n;
  s.workers = workers;
  return s;
}

}  // namespace

TEST(Quadrature, ConstantIntegratesToOne) {
  const auto rs = sys("G2");
  const auto one = [](const Point&) { return std::complex<double>(1.0, 0.0); };
  const auto r = integrate_over_F(rs, one, mc(10'000));
  EXPECT_DOUBLE_EQ(r.value.real(), 1.0);
  EXPECT_DOUBLE_EQ(r.standard_error, 0.0);
  QuadratureSpec g;
  g.method = QuadratureMethod::BarycentricGrid;
  g.samples_or_resolution = 20;
  EXPECT_NEAR(integrate_over_F(rs, one, g).value.real(), 1.0, 1e-12);
}

TEST(Quadrature, SamplesStayInF) {
  const auto rs = sys("F4");
  const auto fd = rs.fundamental_domain();
  std::size_t outside = 0;
  integrate_over_F(
      rs,
      [&](const Point& x) {
        outside += !fd.contains(x, 1e-12);
        return std::complex<double>(0.0);
      },
      mc(5'000));
  EXPECT_EQ(outside, 0u);
}

TEST(Quadrature, WorkerCountDoesNotChangeResult) {
  const auto rs = sys("B2");
  const OrbitFunction f(rs, OrbitFamily::S, Weight{1, 1});
  const auto g = [&](const Point& x) { return std::norm(f.evaluate(x)) + std::complex<double>(0.0); };
  const auto a = integrate_over_F(rs, g, mc(200'000, 1));
  const auto b = integrate_over_F(rs, g, mc(200'000, 3));
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.standard_error, b.standard_error);
}

TEST(Quadrature, NontrivialCIntegratesToZero) {
  const auto rs = sys("G2");
  const OrbitFunction c(rs, OrbitFamily::C, Weight{1, 1});
  const auto r = integrate_over_F(rs, [&](const Point& x) { return c.evaluate(x); }, mc(200'000));
  EXPECT_LT(std::abs(r.value), 4 * r.standard_error + 1e-9);
}

TEST(Orthogonality, G2SLNormIsTwelve) {
  const auto rs = sys("G2");
  const auto r = check_orthogonality(rs, OrbitFamily::SL, Weight{1, 1}, Weight{1, 1}, mc(1'000'000));
  EXPECT_EQ(r.exact_value, BigRational(12));
  EXPECT_TRUE(r.exact_matches_formula());
  EXPECT_TRUE(r.within_tolerance) << r.numeric_value << " +- " << r.standard_error;
  EXPECT_LT(r.relative_error, 0.02);
}

TEST(Orthogonality, G2SLDistinctWeights) {
  const auto rs = sys("G2");
  const auto r = check_orthogonality(rs, OrbitFamily::SL, Weight{1, 1}, Weight{2, 0}, mc(200'000));
  EXPECT_EQ(r.exact_value, BigRational(0));
  EXPECT_TRUE(r.exact_matches_formula());
  EXPECT_TRUE(r.within_tolerance);
}

TEST(Orthogonality, B2SSAtZeroUsesOrbitSize) {
  const auto rs = sys("B2");
  const auto rho_s = rs.rho_short();
  const auto o = oracle::orbit(oracle::cartan("B2"), oracle::Vec(rho_s.begin(), rho_s.end()));
  const BigRational want(64, static_cast<long long>(o.size()));
  EXPECT_EQ(orthogonality_formula(rs, OrbitFamily::SS, Weight{0, 0}, Weight{0, 0}), want);
  const auto r = check_orthogonality(rs, OrbitFamily::SS, Weight{0, 0}, Weight{0, 0}, mc(100'000));
  EXPECT_EQ(r.exact_value, want);
}

TEST(Suite, G2Passes) {
  const auto report = run_suite(AlgebraType::parse("G2"));
  EXPECT_TRUE(report.passed()) << report.to_text();
  EXPECT_EQ(report.count(CheckStatus::Skipped), 0u);
}

TEST(Suite, B3Passes) {
  SuiteConfig cfg;
  cfg.property_trials = 60;
  const auto report = run_suite(AlgebraType::parse("B3"), cfg);
  EXPECT_TRUE(report.passed()) << report.to_text();
}

TEST(Suite, SimplyLacedSkipsTwoLengthFamilies) {
  SuiteConfig cfg;
  cfg.property_trials = 30;
  cfg.monte_carlo_samples = 20'000;
  const auto report = run_suite(AlgebraType::parse("A3"), cfg);
  EXPECT_TRUE(report.passed()) << report.to_text();
  std::size_t skipped = 0;
  for (const auto& c : report.checks)
    if (c.status == CheckStatus::Skipped) {
      ++skipped;
      EXPECT_NE(c.detail.find("simply-laced"), std::string::npos);
    }
  EXPECT_GE(skipped, 2u);
}

TEST(Suite, CorruptedCartanFailsAtRootGeneration) {
  SuiteConfig cfg;
  IntMatrix bad(2);
  bad(0, 0) = 2;
  bad(0, 1) = -4;
  bad(1, 0) = -1;
  bad(1, 1) = 2;
  cfg.cartan_override = bad;
  const auto report = run_suite(AlgebraType::parse("G2"), cfg);
  EXPECT_FALSE(report.passed());
  ASSERT_EQ(report.checks.size(), 1u);
  EXPECT_EQ(report.checks[0].name, "root generation");
  EXPECT_EQ(report.checks[0].status, CheckStatus::Fail);
}

TEST(Serialize, JsonShapes) {
  const auto rs = sys("G2");
  const auto j = to_json(rs);
  EXPECT_EQ(j.at("algebra"), "G2");
  const auto fold = to_json(fold_to_F(rs, Point{1.3, -0.4}));
  EXPECT_TRUE(fold.contains("folded_point"));
  const auto g = grid_to_json(evaluate_grid(OrbitFunction(rs, OrbitFamily::C, Weight{0, 0}), 2), Json::object());
  EXPECT_EQ(g.at("rows").size(), 6u);
}
