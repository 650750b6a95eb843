#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "orbitfn/orbitfn.hpp"

using namespace orbitfn;

namespace {

RootSystem sys(const char* name) { return RootSystem::build(AlgebraType::parse(name)); }

/// Weyl dimension formula, an oracle independent of polynomial division.
BigRational weyl_dimension(const RootSystem& rs, const Weight& lambda) {
  BigRational d(1);
  for (const auto& r : rs.positive_roots()) {
    std::int64_t num = 0, den = 0;
    for (std::size_t i = 0; i < rs.rank(); ++i) {
      num += r.coroot[i] * (lambda[i] + 1);
      den += r.coroot[i];
    }
    d *= BigRational(num, den);
  }
  return d;
}

}  // namespace

TEST(ExpPolynomial, ArithmeticAndText) {
  const auto rs = sys("G2");
  auto p = ExpPolynomial::monomial(rs, Weight{1, 0}, 3) + ExpPolynomial::monomial(rs, Weight{0, -1}, -2);
  EXPECT_EQ(p.size(), 2u);
  EXPECT_EQ(p.coefficient(Weight{1, 0}), 3);
  EXPECT_EQ((p - p).size(), 0u);
  EXPECT_EQ(p.coefficient_sum(), 1);
  const auto q = p * p.conjugate();
  EXPECT_EQ(q.constant_term(), 13);
  const auto back = ExpPolynomial::parse_text(p.order(), p.to_text());
  EXPECT_EQ((back - p).size(), 0u);
  // Half-lattice exponents survive the round trip.
  const auto d = denominator_factors(rs, SkewClass::Full)[0];
  EXPECT_TRUE(d.half_lattice());
  EXPECT_FALSE(denominator_product(rs, SkewClass::Full).half_lattice());
  EXPECT_EQ((ExpPolynomial::parse_text(d.order(), d.to_text()) - d).size(), 0u);
}

TEST(ExpPolynomial, EvaluateMatchesDefinition) {
  const auto rs = sys("B2");
  const auto p = ExpPolynomial::monomial(rs, Weight{1, 2}, 2);
  const Point x{0.3, -0.1};
  const auto want = 2.0 * std::polar(1.0, kTwoPi * pairing(Weight{1, 2}, x));
  EXPECT_LT(std::abs(p.evaluate(x) - want), 1e-14);
}

TEST(OrbitSum, Examples) {
  const auto rs = sys("G2");
  const auto c0 = orbit_sum(rs, OrbitFamily::C, Weight{0, 0});
  EXPECT_EQ(c0.size(), 1u);
  EXPECT_EQ(c0.constant_term(), 12);
  const auto sl = orbit_sum(rs, OrbitFamily::SL, Weight{1, 2});
  EXPECT_EQ(sl.size(), 12u);
  for (const auto& [k, c] : sl.terms()) EXPECT_TRUE(c == 1 || c == -1);
}

TEST(OrbitSum, SymbolicAgreesWithNumeric) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-2, 2);
  for (const char* name : {"G2", "B3", "F4"}) {
    const auto rs = sys(name);
    for (auto fam : kAllFamilies) {
      Weight l(rs.rank());
      l[0] = 1;
      const OrbitFunction f(rs, fam, l);
      const auto p = to_polynomial(f);
      for (int t = 0; t < 100; ++t) {
        Point x(rs.rank());
        for (std::size_t i = 0; i < rs.rank(); ++i) x[i] = u(rng);
        EXPECT_LT(std::abs(p.evaluate(x) - f.evaluate(x)), 1e-9);
      }
    }
  }
}

TEST(Denominator, Shapes) {
  const auto g2 = sys("G2");
  const auto dl = denominator_product(g2, SkewClass::Long);
  EXPECT_EQ(dl.size(), 6u);
  for (const auto& [k, c] : dl.terms()) EXPECT_TRUE(c == 1 || c == -1);
  EXPECT_EQ(skew_positive_roots(sys("B2"), SkewClass::Short).size(), 2u);
  EXPECT_EQ(denominator_sum(sys("F4"), SkewClass::Full).size(), 1152u);
  EXPECT_THROW(denominator_product(sys("A3"), SkewClass::Long), NoTwoLengths);
}

TEST(Denominator, SumEqualsProduct) {
  for (const char* name : {"G2", "B2", "B3", "C3", "F4"}) {
    const auto rs = sys(name);
    for (auto t : {SkewClass::Full, SkewClass::Long, SkewClass::Short}) {
      const auto d = denominator_product(rs, t);
      EXPECT_EQ((d - denominator_sum(rs, t)).size(), 0u) << name << " " << to_string(t);
      EXPECT_NO_THROW(denominator(rs, t));
    }
  }
}

TEST(Denominator, SkewUnderReflections) {
  const auto rs = sys("G2");
  const auto dl = denominator(rs, SkewClass::Long);
  for (const auto& beta : rs.positive_roots(RootLength::Long))
    EXPECT_EQ((act(reflection_element(rs, beta), dl) + dl).size(), 0u);
  EXPECT_EQ((act(simple_reflection(rs, 1), dl) - dl).size(), 0u);
  EXPECT_EQ((act(identity_element(rs), dl) - dl).size(), 0u);
  EXPECT_TRUE(project_skew(rs, denominator(rs, SkewClass::Short), SkewClass::Short));
}

TEST(ProjectSkew, Membership) {
  const auto rs = sys("B3");
  EXPECT_TRUE(project_skew(rs, orbit_sum(rs, OrbitFamily::SL, Weight{1, 0, 2}), SkewClass::Long));
  EXPECT_FALSE(project_skew(rs, orbit_sum(rs, OrbitFamily::SL, Weight{1, 0, 2}), SkewClass::Short));
  EXPECT_FALSE(project_skew(rs, ExpPolynomial::monomial(rs, Weight{1, 0, 0}, 1), SkewClass::Full));
  EXPECT_TRUE(project_skew(rs, orbit_sum(rs, OrbitFamily::C, Weight{1, 1, 0}), SkewClass::Zero));
}

TEST(DivideExact, RecoversFactor) {
  const auto rs = sys("G2");
  const auto roots = skew_positive_roots(rs, SkewClass::Long);
  // One binomial e^{beta/2} - e^{-beta/2}.
  ExpPolynomial b = ExpPolynomial::zero(rs);
  Exponent e(roots[0].weight.begin(), roots[0].weight.end()), m(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) m[i] = -e[i];
  b.add_doubled(e, 1);
  b.add_doubled(m, -1);
  const auto d = denominator_product(rs, SkewClass::Long);
  const auto rest = divide_exact(d, b);
  EXPECT_EQ((rest * b - d).size(), 0u);
  EXPECT_EQ(rest.size(), 4u);
}

TEST(DivideExact, ReportsRemainder) {
  const auto rs = sys("G2");
  const auto f = ExpPolynomial::monomial(rs, Weight{1, 0}, 1);
  const auto g = ExpPolynomial::one(rs) - ExpPolynomial::monomial(rs, -rs.simple_root(0), 1);
  try {
    divide_exact(f, g);
    FAIL() << "expected NonExactDivision";
  } catch (const NonExactDivision& ex) {
    EXPECT_FALSE(ex.residual().is_zero());
  }
}

TEST(Character, Trivial) {
  for (const char* name : {"G2", "B3", "C3", "F4", "A3"}) {
    const auto rs = sys(name);
    const auto ch = character(rs, SkewClass::Full, Weight(rs.rank()));
    EXPECT_EQ((ch - ExpPolynomial::one(rs)).size(), 0u) << name;
    if (rs.has_two_lengths()) {
      EXPECT_EQ((character(rs, SkewClass::Long, Weight(rs.rank())) - ExpPolynomial::one(rs)).size(), 0u) << name;
      EXPECT_EQ((character(rs, SkewClass::Short, Weight(rs.rank())) - ExpPolynomial::one(rs)).size(), 0u) << name;
    }
  }
}

TEST(Character, G2Omega2HasDimensionSeven) {
  const auto rs = sys("G2");
  const auto ch = character(rs, SkewClass::Full, Weight{0, 1});
  EXPECT_EQ(ch.coefficient_sum(), 7);
  EXPECT_EQ(BigRational(7), weyl_dimension(rs, Weight{0, 1}));
  const auto m = decompose_into_orbit_sums(rs, ch);
  EXPECT_EQ(m, (std::map<Weight, BigInt>{{Weight{0, 0}, 1}, {Weight{0, 1}, 1}}));
  for (const auto& [l, c] : decompose_into_C(rs, ch)) EXPECT_GT(c, 0);
  EXPECT_EQ(ch.leading_key().exponent, doubled(Weight{0, 1}));
}

TEST(Character, DimensionsMatchWeylFormula) {
  std::mt19937_64 rng(17);
  for (const char* name : {"G2", "B3", "C3", "F4", "A3", "D4"}) {
    const auto rs = sys(name);
    for (int t = 0; t < 3; ++t) {
      Weight l(rs.rank());
      std::uniform_int_distribution<int> c(0, rs.rank() > 3 ? 1 : 2);
      for (std::size_t i = 0; i < rs.rank(); ++i) l[i] = c(rng);
      const auto ch = character(rs, SkewClass::Full, l);
      EXPECT_EQ(BigRational(ch.coefficient_sum()), weyl_dimension(rs, l)) << name << l;
      for (const auto& [k, v] : ch.terms()) EXPECT_GT(v, 0);
    }
  }
}

TEST(Character, LongAndShortAreInvariantAndIntegral) {
  for (const char* name : {"G2", "B3", "C3"}) {
    const auto rs = sys(name);
    for (auto t : {SkewClass::Long, SkewClass::Short}) {
      Weight l(rs.rank());
      l[0] = 1;
      const auto ch = character(rs, t, l);
      EXPECT_TRUE(project_skew(rs, ch, SkewClass::Zero));
      EXPECT_NO_THROW(decompose_into_orbit_sums(rs, ch));
    }
  }
}

TEST(Decompose, OrbitSumOfCIsItself) {
  const auto rs = sys("B3");
  const auto m = decompose_into_C(rs, orbit_sum(rs, OrbitFamily::C, Weight{1, 0, 1}));
  EXPECT_EQ(m, (std::map<Weight, BigRational>{{Weight{1, 0, 1}, BigRational(1)}}));
}

TEST(Decompose, ProductOfCConservesTermMass) {
  const auto rs = sys("G2");
  const Weight a{1, 0}, b{0, 1};
  const auto p = orbit_sum(rs, OrbitFamily::C, a) * orbit_sum(rs, OrbitFamily::C, b);
  BigInt mass = 0;
  for (const auto& [mu, c] : decompose_into_orbit_sums(rs, p)) mass += c * BigInt(orbit_size(rs, mu));
  // Coefficient sums multiply, and each m_mu carries |orbit of mu| terms.
  EXPECT_EQ(mass, p.coefficient_sum());
  EXPECT_EQ(p.coefficient_sum(), BigInt(12 * 12));
}

TEST(Decompose, SLTimesSLIsInvariant) {
  const auto rs = sys("G2");
  const auto p = orbit_sum(rs, OrbitFamily::SL, Weight{1, 0}) * orbit_sum(rs, OrbitFamily::SL, Weight{0, 1});
  EXPECT_EQ(product_class(SkewClass::Long, SkewClass::Long), SkewClass::Zero);
  EXPECT_TRUE(project_skew(rs, p, SkewClass::Zero));
  const auto m = decompose_into_orbit_sums(rs, p);
  ExpPolynomial sum = ExpPolynomial::zero(rs);
  for (const auto& [mu, c] : m) {
    const OrbitFunction g(rs, OrbitFamily::C, mu);
    for (const auto& t : g.terms()) sum.add(t.weight, c * BigInt(t.coefficient / static_cast<std::int64_t>(g.stabilizer_order())));
  }
  EXPECT_EQ((sum - p).size(), 0u);
}

TEST(Decompose, SigmaTimesSigmaLIsShortSkew) {
  for (const char* name : {"G2", "B3"}) {
    const auto rs = sys(name);
    Weight l(rs.rank());
    l[1] = 1;
    const auto p = orbit_sum(rs, OrbitFamily::S, l) * orbit_sum(rs, OrbitFamily::SL, Weight(rs.rank()));
    const auto t = product_class(SkewClass::Full, SkewClass::Long);
    EXPECT_EQ(t, SkewClass::Short);
    EXPECT_TRUE(project_skew(rs, p, t));
    const auto q = divide_exact(p, denominator_product(rs, t));
    EXPECT_TRUE(project_skew(rs, q, SkewClass::Zero));
    EXPECT_NO_THROW(decompose_into_family(rs, p, t));
  }
}

TEST(Decompose, RejectsNonInvariant) {
  const auto rs = sys("G2");
  EXPECT_THROW(decompose_into_C(rs, ExpPolynomial::monomial(rs, Weight{1, 0}, 1)), NonInvariant);
}

TEST(Factorization, SLSplitsOverComplement) {
  for (const auto& [name, parts] : {std::pair<const char*, std::size_t>{"G2", 2}, {"F4", 6}, {"B3", 2}}) {
    const auto rs = sys(name);
    Weight l(rs.rank());
    l[0] = 1;
    const auto pieces = factor_SL_over_VS(rs, l);
    EXPECT_EQ(pieces.size(), parts) << name;
    ExpPolynomial sum = ExpPolynomial::zero(rs);
    for (const auto& p : pieces) sum += p;
    EXPECT_EQ((sum - orbit_sum(rs, OrbitFamily::SL, l)).size(), 0u) << name;
  }
}

TEST(Identity, B2NumericCrossCheck) {
  const auto rs = sys("B2");
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1, 1);
  for (auto t : {SkewClass::Full, SkewClass::Long, SkewClass::Short}) {
    const auto a = denominator_product(rs, t), b = denominator_sum(rs, t);
    for (int k = 0; k < 20; ++k) {
      const Point x{u(rng), u(rng)};
      EXPECT_LT(std::abs(a.evaluate(x) - b.evaluate(x)), 1e-10);
    }
  }
}

TEST(Orthogonality, ConstantTermFormula) {
  const auto rs = sys("G2");
  const auto f = orbit_sum(rs, OrbitFamily::SL, Weight{1, 1});
  EXPECT_EQ(constant_term_of_product_with_conjugate(f, f), 12);
  EXPECT_EQ((f * f.conjugate()).constant_term(), 12);
  const auto g = orbit_sum(rs, OrbitFamily::SL, Weight{1, 0});
  EXPECT_EQ(constant_term_of_product_with_conjugate(f, g), 0);
  // C_0 is 12 e^0: 144 / |orbit| with orbit {0}.
  const auto c0 = orbit_sum(rs, OrbitFamily::C, Weight{0, 0});
  EXPECT_EQ(constant_term_of_product_with_conjugate(c0, c0), 144);
}

TEST(DivideByDenominator, MatchesExpandedDivision) {
  const auto rs = sys("B3");
  for (auto t : {SkewClass::Full, SkewClass::Long, SkewClass::Short}) {
    const auto f = orbit_sum(rs, family_of(t), Weight{1, 1, 0});
    const auto q = divide_by_denominator(rs, f, t);
    EXPECT_EQ(q, divide_exact(f, denominator_product(rs, t)));
    EXPECT_EQ(multiply_by_denominator(rs, q, t), f);
  }
  EXPECT_THROW(divide_by_denominator(rs, ExpPolynomial::monomial(rs, Weight{1, 0, 0}, 1), SkewClass::Full),
               NonExactDivision);
}
