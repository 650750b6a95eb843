#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "orbitfn/errors.hpp"
#include "orbitfn/exp_ring.hpp"
#include "orbitfn/orbit_functions.hpp"
#include "orbitfn/root_system.hpp"
#include "orbitfn/types.hpp"
#include "orbitfn/weyl_group.hpp"

namespace orbitfn {

enum class QuadratureMethod { MonteCarlo, BarycentricGrid };

struct QuadratureSpec {
  QuadratureMethod method = QuadratureMethod::MonteCarlo;
  std::uint64_t samples_or_resolution = 1'000'000;
  std::uint64_t seed = 42;
  unsigned workers = 1;
};

struct QuadratureResult {
  std::complex<double> value;
  double standard_error = 0.0;  ///< 0 for the deterministic grid
  std::uint64_t evaluations = 0;
};

using Integrand = std::function<std::complex<double>(const Point&)>;

namespace detail {

inline constexpr std::uint64_t kMonteCarloChunk = 1u << 16;

/// Uniform double in (0, 1] from the top 53 bits.
inline double open_unit(std::mt19937_64& rng) { return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53; }

struct ChunkSums {
  double re = 0.0, im = 0.0, sq = 0.0;
};

/// Runs body(k) for k in [0, count) on up to `workers` threads, each
/// taking a contiguous range. Results go to caller-owned slots.
template <class Body>
void parallel_for(std::size_t count, unsigned workers, Body body) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (workers == 1) {
    for (std::size_t k = 0; k < count; ++k) body(k);
    return;
  }
  const std::size_t block = (count + workers - 1) / workers;
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t lo = w * block, hi = std::min(count, lo + block);
    if (lo < hi)
      pool.emplace_back([lo, hi, &body] {
        for (std::size_t k = lo; k < hi; ++k) body(k);
      });
  }
}

}  // namespace detail

/// Normalized integral (1/|F|) int_F g. Monte Carlo draws barycentric
/// coordinates as normalized exponential spacings; sample chunks have
/// their own seeded stream, so the result does not depend on workers.
/// The grid method uses midpoints of an m^n cube grid, sorted into the
/// ordered simplex and mapped affinely onto F (equal weights).
inline QuadratureResult integrate_over_F(const RootSystem& rs, const Integrand& g, const QuadratureSpec& spec) {
  if (spec.samples_or_resolution < 1) throw Error("quadrature needs at least one sample");
  const auto fd = rs.fundamental_domain();
  const std::size_t n = rs.rank();
  QuadratureResult out;
  if (spec.method == QuadratureMethod::MonteCarlo) {
    const std::uint64_t total = spec.samples_or_resolution;
    const std::size_t chunks = static_cast<std::size_t>((total + detail::kMonteCarloChunk - 1) / detail::kMonteCarloChunk);
    std::vector<detail::ChunkSums> sums(chunks);
    detail::parallel_for(chunks, spec.workers, [&](std::size_t c) {
      std::seed_seq seq{static_cast<std::uint32_t>(spec.seed), static_cast<std::uint32_t>(spec.seed >> 32),
                        static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
      std::mt19937_64 rng(seq);
      const std::uint64_t begin = c * detail::kMonteCarloChunk;
      const std::uint64_t end = std::min(total, begin + detail::kMonteCarloChunk);
      std::vector<double> b(n + 1);
      detail::ChunkSums s;
      for (std::uint64_t k = begin; k < end; ++k) {
        double sum = 0.0;
        for (auto& v : b) sum += (v = -std::log(detail::open_unit(rng)));
        for (auto& v : b) v /= sum;
        const auto val = g(fd.from_barycentric(b));
        s.re += val.real();
        s.im += val.imag();
        s.sq += std::norm(val);
      }
      sums[c] = s;
    });
    detail::ChunkSums all;
    for (const auto& s : sums) {
      all.re += s.re;
      all.im += s.im;
      all.sq += s.sq;
    }
    const double N = static_cast<double>(total);
    out.value = {all.re / N, all.im / N};
    const double var = total > 1 ? std::max(0.0, (all.sq - N * std::norm(out.value)) / (N - 1.0)) : 0.0;
    out.standard_error = std::sqrt(var / N);
    out.evaluations = total;
    return out;
  }

  const std::uint64_t m = spec.samples_or_resolution;
  std::uint64_t cells = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (cells > (std::uint64_t{1} << 40) / m) throw Error("grid too large");
    cells *= m;
  }
  const std::size_t chunks = static_cast<std::size_t>((cells + detail::kMonteCarloChunk - 1) / detail::kMonteCarloChunk);
  std::vector<std::complex<double>> partial(chunks);
  detail::parallel_for(chunks, spec.workers, [&](std::size_t c) {
    const std::uint64_t begin = c * detail::kMonteCarloChunk;
    const std::uint64_t end = std::min(cells, begin + detail::kMonteCarloChunk);
    std::vector<double> t(n), b(n + 1);
    std::complex<double> s = 0.0;
    for (std::uint64_t k = begin; k < end; ++k) {
      std::uint64_t idx = k;
      for (std::size_t i = 0; i < n; ++i) {
        t[i] = (static_cast<double>(idx % m) + 0.5) / static_cast<double>(m);
        idx /= m;
      }
      std::sort(t.begin(), t.end(), std::greater<>());
      b[0] = 1.0 - t[0];
      for (std::size_t i = 1; i < n; ++i) b[i] = t[i - 1] - t[i];
      b[n] = t[n - 1];
      s += g(fd.from_barycentric(b));
    }
    partial[c] = s;
  });
  std::complex<double> s = 0.0;
  for (const auto& p : partial) s += p;
  out.value = s / static_cast<double>(cells);
  out.evaluations = cells;
  return out;
}

struct OrthogonalityReport {
  OrbitFamily family = OrbitFamily::C;
  Weight lambda;
  Weight mu;
  std::complex<double> numeric_value;
  double standard_error = 0.0;
  BigRational exact_value;       ///< constant term of f_lambda conj(f_mu)
  BigRational formula_value;     ///< |W|^2 / |orbit of lambda + rho| when lambda = mu, else 0
  double relative_error = 0.0;
  double tolerance = 0.0;
  bool within_tolerance = false;

  bool exact_matches_formula() const { return exact_value == formula_value; }
};

/// |W|^2 / |W (lambda + rho_family)| for lambda = mu, else 0.
inline BigRational orthogonality_formula(const RootSystem& rs, OrbitFamily family, const Weight& lambda,
                                         const Weight& mu) {
  if (lambda != mu) return BigRational(0);
  const OrbitFunction f(rs, family, lambda);
  const BigInt w = rs.weyl_order();
  return BigRational(w * w, BigInt(f.orbit_size()));
}

/// Numeric integral of f_lambda conj(f_mu) over F next to the exact
/// constant-term value. Tolerance is 3 standard errors (Monte Carlo) or
/// abs_tolerance, whichever is larger.
inline OrthogonalityReport check_orthogonality(const RootSystem& rs, OrbitFamily family, const Weight& lambda,
                                               const Weight& mu, const QuadratureSpec& spec,
                                               double abs_tolerance = 1e-6) {
  const OrbitFunction f(rs, family, lambda), g(rs, family, mu);
  OrthogonalityReport r;
  r.family = family;
  r.lambda = lambda;
  r.mu = mu;
  const auto q = integrate_over_F(
      rs, [&](const Point& x) { return f.evaluate(x) * std::conj(g.evaluate(x)); }, spec);
  r.numeric_value = q.value;
  r.standard_error = q.standard_error;
  r.exact_value = BigRational(constant_term_of_product_with_conjugate(to_polynomial(f), to_polynomial(g)));
  r.formula_value = orthogonality_formula(rs, family, lambda, mu);
  const double exact = r.exact_value.convert_to<double>();
  const double diff = std::abs(q.value - exact);
  r.relative_error = diff / std::max(1.0, std::abs(exact));
  r.tolerance = std::max(abs_tolerance, 3.0 * q.standard_error);
  r.within_tolerance = diff <= r.tolerance;
  return r;
}

// ---------------------------------------------------------------------------
// Suite

struct SuiteConfig {
  std::uint64_t enumeration_cap = kDefaultEnumerationCap;
  std::size_t property_trials = 200;
  std::size_t ring_samples = 10;
  int orthogonality_box = 1;        ///< lambda, mu coordinates in [0, box]
  std::uint64_t monte_carlo_samples = 200'000;
  std::uint64_t seed = 42;
  unsigned workers = 1;
  double tolerance = kPropertyTolerance;
  std::optional<IntMatrix> cartan_override;  ///< replaces the algebra's Cartan matrix (negative controls)
  std::ostream* progress = nullptr;          ///< one line per finished check, if set
};

enum class CheckStatus { Pass, Fail, Skipped };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "FAIL";
    case CheckStatus::Skipped: return "skipped";
  }
  return "?";
}

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::size_t count = 0;  ///< individual assertions evaluated
  std::string detail;
  double seconds = 0.0;
};

struct SuiteReport {
  std::string algebra;
  std::vector<CheckResult> checks;
  double seconds = 0.0;

  bool passed() const {
    return std::none_of(checks.begin(), checks.end(), [](const auto& c) { return c.status == CheckStatus::Fail; });
  }
  std::size_t count(CheckStatus s) const {
    return static_cast<std::size_t>(
        std::count_if(checks.begin(), checks.end(), [s](const auto& c) { return c.status == s; }));
  }

  std::string to_text() const {
    std::ostringstream os;
    os << "suite " << algebra << '\n';
    for (const auto& c : checks) {
      os << "  [" << to_string(c.status) << "] " << c.name;
      if (c.count) os << " (" << c.count << " checks, " << std::fixed << std::setprecision(2) << c.seconds << "s)"
                      << std::defaultfloat;
      if (!c.detail.empty()) os << ": " << c.detail;
      os << '\n';
    }
    os << (passed() ? "PASS" : "FAIL") << ": " << count(CheckStatus::Pass) << " passed, " << count(CheckStatus::Fail)
       << " failed, " << count(CheckStatus::Skipped) << " skipped\n";
    return os.str();
  }
};

/// Expected highest-root marks, in the library's numbering.
inline std::vector<std::int64_t> expected_marks(const AlgebraType& t) {
  const std::size_t n = static_cast<std::size_t>(t.rank);
  std::vector<std::int64_t> m(n, 2);
  switch (t.type) {
    case LieType::A: return std::vector<std::int64_t>(n, 1);
    case LieType::B: m[0] = 1; return m;
    case LieType::C: m[n - 1] = 1; return m;
    case LieType::D: m[0] = m[n - 2] = m[n - 1] = 1; return m;
    case LieType::E:
      if (n == 6) return {1, 2, 2, 3, 2, 1};
      if (n == 7) return {2, 2, 3, 4, 3, 2, 1};
      return {2, 3, 4, 6, 5, 4, 3, 2};
    case LieType::F: return {2, 3, 4, 2};
    case LieType::G: return {2, 3};
  }
  return m;
}

/// Expected types of (Delta^L, Delta^S) for two-length systems.
inline std::pair<std::string, std::string> expected_subsystem_types(const AlgebraType& t) {
  const std::string nA1 = std::to_string(t.rank) + "A1";
  const std::string dn = canonical_type_name("D" + std::to_string(t.rank));
  switch (t.type) {
    case LieType::B: return {dn, nA1};
    case LieType::C: return {nA1, dn};
    case LieType::F: return {"D4", "D4"};
    case LieType::G: return {"A2", "A2"};
    default: return {"", ""};
  }
}

/// Whether -mu lies in W mu for every mu, i.e. whether -1 is in W.
inline bool expected_orbit_symmetry(const AlgebraType& t) {
  switch (t.type) {
    case LieType::A: return t.rank == 1;
    case LieType::D: return t.rank % 2 == 0;
    case LieType::E: return t.rank != 6;
    default: return true;
  }
}

namespace detail {

struct SuiteRunner {
  SuiteReport& report;
  std::ostream* progress = nullptr;

  void log(const CheckResult& c) const {
    if (progress) *progress << "  " << to_string(c.status) << ' ' << c.name << ' ' << c.seconds << "s" << std::endl;
  }

  template <class F>
  bool run(const std::string& name, F&& body) {
    CheckResult c;
    c.name = name;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      body(c);
    } catch (const GroupTooLarge& e) {
      c.status = CheckStatus::Skipped;
      c.detail = std::string("skipped (") + e.what() + ")";
    } catch (const std::exception& e) {
      c.status = CheckStatus::Fail;
      c.detail = e.what();
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    log(c);
    report.checks.push_back(c);
    return c.status != CheckStatus::Fail;
  }

  void skip(const std::string& name, const std::string& why) {
    report.checks.push_back({name, CheckStatus::Skipped, 0, "skipped (" + why + ")", 0.0});
    log(report.checks.back());
  }
};

inline void expect(CheckResult& c, bool ok, const std::string& what) {
  ++c.count;
  if (!ok && c.status != CheckStatus::Fail) {
    c.status = CheckStatus::Fail;
    c.detail = what;
  }
}

inline Weight random_weight(std::mt19937_64& rng, std::size_t n, int max_coord, int max_nonzero) {
  Weight w(n);
  std::uniform_int_distribution<int> coord(0, max_coord);
  std::uniform_int_distribution<std::size_t> pos(0, n - 1);
  for (int k = 0; k < max_nonzero; ++k) w[pos(rng)] = coord(rng);
  return w;
}

inline Point random_point(std::mt19937_64& rng, std::size_t n, double r) {
  std::uniform_real_distribution<double> u(-r, r);
  Point x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = u(rng);
  return x;
}

/// Random element: from the enumerated group when available, otherwise a
/// random word of simple reflections.
inline WeylElement random_element(const RootSystem& rs, const std::vector<WeylElement>& group, std::mt19937_64& rng) {
  if (!group.empty()) return group[std::uniform_int_distribution<std::size_t>(0, group.size() - 1)(rng)];
  std::uniform_int_distribution<int> gen(0, static_cast<int>(rs.rank()) - 1);
  std::vector<int> word(4 * rs.rank());
  for (auto& g : word) g = gen(rng);
  return element_from_word(rs, word);
}

/// Random point on face j of F (barycentric coordinate j set to 0).
inline Point random_face_point(const FundamentalDomain& fd, int face, std::mt19937_64& rng) {
  std::vector<double> b(fd.rank() + 1);
  double s = 0.0;
  for (auto& v : b) s += (v = -std::log(open_unit(rng)));
  s -= b[static_cast<std::size_t>(face)];
  b[static_cast<std::size_t>(face)] = 0.0;
  for (auto& v : b) v /= s;
  return fd.from_barycentric(b);
}

}  // namespace detail

/// Numeric properties of one orbit function on random inputs: group
/// equivariance (points and weights), Q-check periodicity, vanishing on
/// the boundary profile, realness per the symbolic parity, fold
/// consistency and (when given) agreement with the full group sum.
inline void check_function_properties(const RootSystem& rs, const OrbitFunction& f,
                                      const std::vector<WeylElement>& group, std::mt19937_64& rng,
                                      std::size_t trials, double tol, CheckResult& c) {
  // Values reach sum |c| = |W|; keep the tolerance above double rounding for large groups.
  tol *= std::max(1.0, static_cast<double>(rs.weyl_order()) / 1e4);
  const auto fd = rs.fundamental_domain();
  const auto profile = boundary_profile(rs, f.family());
  const auto parity = f.parity();
  const SignKind k = f.kind();
  const auto id = to_string(f.family()) + std::string(f.lambda().to_string());
  std::uniform_int_distribution<int> shift(-3, 3);
  for (std::size_t t = 0; t < trials; ++t) {
    const Point x = detail::random_point(rng, rs.rank(), 2.0);
    const auto fx = f.evaluate(x);
    const auto w = detail::random_element(rs, group, rng);
    detail::expect(c, std::abs(f.evaluate(w.apply(x)) - static_cast<double>(w.sign(k)) * fx) < tol,
                   id + ": equivariance f(wx) = kappa(w) f(x) failed");
    if (t % 10 == 0) {
      const auto g = OrbitFunction::with_effective_weight(rs, f.family(), w.apply(f.effective_weight()));
      detail::expect(c, std::abs(g.evaluate(x) - static_cast<double>(w.sign(k)) * fx) < tol,
                     id + ": weight equivariance failed");
    }
    Point y = x;
    for (std::size_t i = 0; i < rs.rank(); ++i) y[i] += shift(rng);
    detail::expect(c, std::abs(f.evaluate(y) - fx) < tol, id + ": periodicity failed");
    for (int face : profile)
      detail::expect(c, std::abs(f.evaluate(detail::random_face_point(fd, face, rng))) < tol,
                     id + ": boundary vanishing failed on face y_" + std::to_string(face));
    if (parity == Parity::Real) detail::expect(c, std::abs(fx.imag()) < tol, id + ": value not real");
    if (parity == Parity::Imaginary) detail::expect(c, std::abs(fx.real()) < tol, id + ": value not imaginary");
    const auto fold = fold_to_F(rs, x);
    detail::expect(c, fd.contains(fold.folded_point), id + ": folded point outside F");
    detail::expect(c, std::abs(fx - static_cast<double>(fold.sign(k)) * f.evaluate(fold.folded_point)) < tol,
                   id + ": fold consistency failed");
    if (!group.empty() && group.size() <= 2000 && t % 4 == 0)
      detail::expect(c, std::abs(fx - evaluate_group_sum(group, k, f.effective_weight(), x)) < tol,
                     id + ": orbit sum disagrees with group sum");
  }
}

/// Full battery of structural, group, numeric and exact checks for one
/// algebra. A failure in root generation stops the suite.
inline SuiteReport run_suite(const AlgebraType& algebra, const SuiteConfig& cfg = {}) {
  const auto start = std::chrono::steady_clock::now();
  SuiteReport report;
  report.algebra = algebra.to_string() + (cfg.cartan_override ? " (Cartan override)" : "");
  detail::SuiteRunner r{report, cfg.progress};
  std::mt19937_64 rng(cfg.seed);

  std::optional<RootSystem> built;
  const bool ok = r.run("root generation", [&](CheckResult& c) {
    built = cfg.cartan_override ? RootSystem::from_cartan(algebra, *cfg.cartan_override) : RootSystem::build(algebra);
    detail::expect(c, 2 * built->positive_roots().size() == expected_root_count(algebra),
                   "|Delta| = " + std::to_string(2 * built->positive_roots().size()) + ", expected " +
                       std::to_string(expected_root_count(algebra)));
  });
  if (!ok) {
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
  }
  const RootSystem& rs = *built;
  const std::size_t n = rs.rank();
  const bool two = rs.has_two_lengths();
  const double tol = cfg.tolerance;

  r.run("highest root marks", [&](CheckResult& c) {
    detail::expect(c, rs.marks() == expected_marks(algebra), "marks differ from the table");
    detail::expect(c, rs.is_root(rs.highest_root()), "highest root is not a root");
  });
  r.run("rho vectors", [&](CheckResult& c) {
    detail::expect(c, rs.rho() == Weight(std::vector<std::int64_t>(n, 1)), "rho != (1,...,1)");
    detail::expect(c, rs.rho_long() + rs.rho_short() == rs.rho(), "rho != rho^L + rho^S");
  });
  if (two) {
    r.run("subsystem types", [&](CheckResult& c) {
      const auto [el, es] = expected_subsystem_types(algebra);
      const auto l = rs.subsystem(RootLength::Long), s = rs.subsystem(RootLength::Short);
      detail::expect(c, l.type == el, "long subsystem is " + l.type + ", expected " + el);
      detail::expect(c, s.type == es, "short subsystem is " + s.type + ", expected " + es);
    });
    r.run("subsystem closure", [&](CheckResult& c) {
      for (auto t : {RootLength::Long, RootLength::Short}) {
        const auto sub = rs.subsystem(t);
        std::set<Weight> set(sub.roots.begin(), sub.roots.end());
        for (const auto& a : sub.roots) {
          const auto root_a = rs.root(a);
          for (const auto& b : sub.roots) detail::expect(c, set.count(rs.reflect(root_a, b)) == 1, "not closed");
        }
      }
    });
  } else {
    r.skip("subsystem types", "simply-laced");
  }

  std::vector<WeylElement> group;
  r.run("Weyl group order", [&](CheckResult& c) {
    group = enumerate_group(rs, cfg.enumeration_cap);
    detail::expect(c, group.size() == rs.weyl_order(), "enumerated |W| differs from the table");
  });

  r.run("sign homomorphisms", [&](CheckResult& c) {
    std::vector<SignKind> kinds{SignKind::Id, SignKind::Sigma};
    if (two) kinds.insert(kinds.end(), {SignKind::SigmaL, SignKind::SigmaS});
    for (auto k : kinds) {
      const SignHomomorphism h(rs, k);
      for (const auto& root : rs.positive_roots()) {
        const auto e = reflection_element(rs, root);
        detail::expect(c, h.of_word(e.word) == reflection_signs(root.length)[k], "reflection sign mismatch");
      }
      for (std::size_t t = 0; t < 50; ++t) {
        const auto a = detail::random_element(rs, group, rng), b = detail::random_element(rs, group, rng);
        detail::expect(c, h.of_word((a * b).word) == h.of_word(a.word) * h.of_word(b.word), "not multiplicative");
      }
    }
  });

  if (two) {
    r.run("normality and factorization", [&](CheckResult& c) {
      for (auto t : {RootLength::Long, RootLength::Short}) {
        detail::expect(c, verify_normality(rs, t, cfg.enumeration_cap), std::string("W^") + to_string(t) + " not normal");
        const auto f = factorize(rs, t, cfg.enumeration_cap);
        detail::expect(c, f.coset_map.size() == rs.weyl_order(), "coset decomposition incomplete");
        detail::expect(c, f.normal_subgroup.size() * f.complement.size() == rs.weyl_order(), "orders do not multiply");
      }
      const auto wl = subgroup_set(rs, RootLength::Long, cfg.enumeration_cap);
      const auto ws = subgroup_set(rs, RootLength::Short, cfg.enumeration_cap);
      std::size_t common = 0;
      for (const auto& e : wl.elements()) common += ws.contains(e) ? 1 : 0;
      detail::expect(c, common > 1, "W^L and W^S intersect trivially");
    });
  } else {
    r.skip("normality and factorization", "simply-laced");
  }

  r.run("orbit symmetry and stabilizers", [&](CheckResult& c) {
    // -mu lies in W mu iff the dominant representative of -mu is mu.
    Weight mu(n);
    for (std::size_t i = 0; i < n; ++i) mu[i] = static_cast<std::int64_t>(i + 1);
    const bool sym = dominant_representative(rs, -mu) == mu;
    detail::expect(c, sym == expected_orbit_symmetry(algebra), "-mu in W mu does not match expectation");
    for (std::size_t i = 0; i < n; ++i) {
      if (orbit_size(rs, Weight::fundamental(n, i)) > std::min<std::uint64_t>(cfg.enumeration_cap, 100'000)) continue;
      const auto oi = orbit(rs, Weight::fundamental(n, i), cfg.enumeration_cap);
      detail::expect(c, oi.size() * oi.stabilizer_order == rs.weyl_order(), "orbit-stabilizer failed");
      const bool in = std::find(oi.elements.begin(), oi.elements.end(), -oi.seed) != oi.elements.end();
      detail::expect(c, in == (dominant_representative(rs, -oi.seed) == oi.seed), "orbit membership of -omega_i");
    }
  });

  for (auto fam : kAllFamilies) {
    const std::string name = std::string("properties ") + to_string(fam);
    if (!family_supported(rs, fam)) {
      r.skip(name, "simply-laced");
      continue;
    }
    r.run(name, [&](CheckResult& c) {
      const std::uint64_t budget = std::min<std::uint64_t>(cfg.enumeration_cap, 60'000);
      const Weight shift = family_rho(rs, fam);
      for (int rep = 0; rep < 3; ++rep) {
        // Random lambda, then smaller ones, until the orbit fits the budget.
        Weight lambda = detail::random_weight(rng, n, 2, 2);
        for (int tries = 0; orbit_size(rs, lambda + shift) > budget && tries < 20; ++tries)
          lambda = detail::random_weight(rng, n, 1, 1);
        if (orbit_size(rs, lambda + shift) > budget) lambda = Weight(n);
        if (orbit_size(rs, lambda + shift) > budget)
          throw GroupTooLarge("orbit of rho_family has " + std::to_string(orbit_size(rs, shift)) + " points");
        const OrbitFunction f(rs, fam, lambda, budget);
        check_function_properties(rs, f, group, rng, std::max<std::size_t>(1, cfg.property_trials / 3), tol, c);
      }
    });
  }

  std::vector<SkewClass> classes{SkewClass::Full};
  if (two) classes.insert(classes.end(), {SkewClass::Long, SkewClass::Short});
  for (auto t : classes) {
    r.run(std::string("denominator identity ") + to_string(t), [&](CheckResult& c) {
      const auto d = denominator(rs, t, cfg.enumeration_cap);  // throws on mismatch
      ++c.count;
      detail::expect(c, project_skew(rs, d, t), "D^T is not skew");
      const bool all = !group.empty() && group.size() * d.size() <= 5'000'000;
      const std::size_t reps = all ? group.size() : 50;
      for (std::size_t k = 0; k < reps; ++k) {
        const auto w = all ? group[k] : detail::random_element(rs, group, rng);
        auto expected = d;
        if (w.sign(sign_kind(t)) == -1) expected *= BigInt(-1);
        detail::expect(c, act(w, d) == expected, "w D^T != sigma^T(w) D^T");
      }
    });
  }

  if (!two) {
    r.skip("skew module SL", "simply-laced");
    r.skip("skew module SS", "simply-laced");
  }
  for (auto t : classes) {
    const std::string name = std::string("skew module ") + to_string(family_of(t));
    if (orbit_size(rs, skew_rho(rs, t)) > 20'000) {
      r.skip(name, "skew orbits have more than 20000 terms");
      continue;
    }
    r.run(name, [&](CheckResult& c) {
      // D^T enters only through its binomial factors, so large groups are fine.
      std::uniform_int_distribution<int> coef(-3, 3);
      for (std::size_t s = 0; s < cfg.ring_samples; ++s) {
        auto g = ExpPolynomial::zero(rs);
        auto f = ExpPolynomial::zero(rs);
        for (int k = 0; k < 2; ++k) {
          const Weight l1 = detail::random_weight(rng, n, 1, 1), l2 = detail::random_weight(rng, n, 1, 1);
          g += orbit_sum(rs, OrbitFamily::C, l1, cfg.enumeration_cap) * BigInt(coef(rng));
          f += orbit_sum(rs, family_of(t), l2, cfg.enumeration_cap) * BigInt(coef(rng));
        }
        detail::expect(c, project_skew(rs, multiply_by_denominator(rs, g, t), t), "g D^T not skew");
        const auto q = divide_by_denominator(rs, f, t);
        detail::expect(c, multiply_by_denominator(rs, q, t) == f, "quotient times D^T differs from f");
        detail::expect(c, project_skew(rs, q, SkewClass::Zero), "quotient not W-invariant");
      }
    });
  }

  r.run("characters", [&](CheckResult& c) {
    for (auto t : classes) {
      detail::expect(c, character(rs, t, Weight(n), cfg.enumeration_cap) == ExpPolynomial::one(rs), "chi_0 != 1");
    }
    // Large groups: only the fundamental weight with the smallest orbit.
    std::vector<std::size_t> which;
    std::size_t best = 0;
    for (std::size_t i = 0; i < n; ++i) {
      which.push_back(i);
      if (orbit_size(rs, Weight::fundamental(n, i)) < orbit_size(rs, Weight::fundamental(n, best))) best = i;
    }
    if (rs.weyl_order() > 20'000) which = {best};
    for (auto i : which) {
      const auto ch = character(rs, SkewClass::Full, Weight::fundamental(n, i), cfg.enumeration_cap);
      detail::expect(c, project_skew(rs, ch, SkewClass::Zero), "character not W-invariant");
      for (const auto& [mu, m] : decompose_into_orbit_sums(rs, ch, cfg.enumeration_cap))
        detail::expect(c, m > 0, "negative weight multiplicity");
    }
  });

  for (auto fam : kAllFamilies) {
    const std::string name = std::string("orthogonality exact ") + to_string(fam);
    if (!family_supported(rs, fam)) {
      r.skip(name, "simply-laced");
      continue;
    }
    r.run(name, [&](CheckResult& c) {
      std::vector<Weight> box;
      Weight w(n);
      const auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == n) {
          box.push_back(w);
          return;
        }
        for (int v = 0; v <= cfg.orthogonality_box; ++v) {
          w[i] = v;
          self(self, i + 1);
        }
      };
      rec(rec, 0);
      // Weights whose orbit is too large for exact expansion are left out.
      const std::uint64_t budget = std::min<std::uint64_t>(cfg.enumeration_cap, 60'000);
      const Weight shift = family_rho(rs, fam);
      std::size_t dropped = 0;
      std::erase_if(box, [&](const Weight& l) {
        const Weight m = l + shift;
        std::vector<std::size_t> zeros;
        for (std::size_t i = 0; i < n; ++i)
          if (m[i] == 0) zeros.push_back(i);
        const bool big = rs.weyl_order() / rs.parabolic_order(zeros) > budget;
        dropped += big ? 1 : 0;
        return big;
      });
      if (box.empty()) throw GroupTooLarge("every orbit in the weight box exceeds " + std::to_string(budget));
      if (dropped) c.detail = std::to_string(dropped) + " weights with orbits above " + std::to_string(budget) + " left out";
      std::vector<ExpPolynomial> polys;
      for (const auto& l : box) polys.push_back(orbit_sum(rs, fam, l, cfg.enumeration_cap));
      std::size_t total_terms = 0;
      for (const auto& p : polys) total_terms += p.size();
      const auto check_pair = [&](std::size_t a, std::size_t b) {
        const auto ct = constant_term_of_product_with_conjugate(polys[a], polys[b]);
        detail::expect(c, BigRational(ct) == orthogonality_formula(rs, fam, box[a], box[b]),
                       "constant term mismatch at " + box[a].to_string() + "," + box[b].to_string());
      };
      // Full matrix when affordable, else the diagonal plus sampled pairs.
      if (2 * total_terms * box.size() <= 20'000'000) {
        for (std::size_t a = 0; a < box.size(); ++a)
          for (std::size_t b = 0; b < box.size(); ++b) check_pair(a, b);
      } else {
        for (std::size_t a = 0; a < box.size(); ++a) check_pair(a, a);
        std::uniform_int_distribution<std::size_t> pick(0, box.size() - 1);
        for (int k = 0; k < 200; ++k) check_pair(pick(rng), pick(rng));
        c.detail += (c.detail.empty() ? "" : "; ") + std::string("off-diagonal pairs sampled");
      }
    });
  }

  r.run("orthogonality numeric", [&](CheckResult& c) {
    const QuadratureSpec spec{QuadratureMethod::MonteCarlo, cfg.monte_carlo_samples, cfg.seed, cfg.workers};
    const OrbitFamily fam = two ? OrbitFamily::SL : OrbitFamily::C;
    std::size_t small = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (orbit_size(rs, Weight::fundamental(n, i)) < orbit_size(rs, Weight::fundamental(n, small))) small = i;
    const Weight l0(n), l1 = Weight::fundamental(n, small);
    for (const auto& [a, b] : {std::pair{l0, l0}, std::pair{l0, l1}}) {
      // Keep samples * orbit terms bounded.
      const std::uint64_t terms = orbit_size(rs, a + family_rho(rs, fam)) + orbit_size(rs, b + family_rho(rs, fam));
      QuadratureSpec s2 = spec;
      s2.samples_or_resolution = std::min<std::uint64_t>(spec.samples_or_resolution,
                                                         std::max<std::uint64_t>(2'000, 50'000'000 / terms));
      if (s2.samples_or_resolution < spec.samples_or_resolution)
        c.detail = "samples reduced to " + std::to_string(s2.samples_or_resolution);
      const auto rep = check_orthogonality(rs, fam, a, b, s2);
      detail::expect(c, rep.exact_matches_formula(), "exact value disagrees with the formula");
      detail::expect(c, rep.within_tolerance, "Monte Carlo estimate outside 3 standard errors");
    }
    const auto one = integrate_over_F(rs, [](const Point&) { return std::complex<double>(1.0, 0.0); }, spec);
    detail::expect(c, one.value == std::complex<double>(1.0, 0.0), "integral of 1 is not 1");
  });

  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace orbitfn
