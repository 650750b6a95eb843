#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <cstdint>
#include <iomanip>
#include <ostream>
#include <set>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "orbitfn/errors.hpp"
#include "orbitfn/root_system.hpp"
#include "orbitfn/types.hpp"
#include "orbitfn/weyl_group.hpp"

namespace orbitfn {

/// Default tolerance for numeric property checks.
inline constexpr double kPropertyTolerance = 1e-9;

enum class OrbitFamily { C, S, SL, SS };

inline const char* to_string(OrbitFamily f) {
  switch (f) {
    case OrbitFamily::C: return "C";
    case OrbitFamily::S: return "S";
    case OrbitFamily::SL: return "SL";
    case OrbitFamily::SS: return "SS";
  }
  return "?";
}

inline OrbitFamily parse_family(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (s == "C") return OrbitFamily::C;
  if (s == "S") return OrbitFamily::S;
  if (s == "SL" || s == "S^L") return OrbitFamily::SL;
  if (s == "SS" || s == "S^S") return OrbitFamily::SS;
  throw Error("unknown family '" + s + "' (expected C, S, SL or SS)");
}

inline constexpr OrbitFamily kAllFamilies[] = {OrbitFamily::C, OrbitFamily::S, OrbitFamily::SL, OrbitFamily::SS};

inline SignKind sign_kind(OrbitFamily f) {
  switch (f) {
    case OrbitFamily::C: return SignKind::Id;
    case OrbitFamily::S: return SignKind::Sigma;
    case OrbitFamily::SL: return SignKind::SigmaL;
    case OrbitFamily::SS: return SignKind::SigmaS;
  }
  return SignKind::Id;
}

inline bool requires_two_lengths(OrbitFamily f) { return f == OrbitFamily::SL || f == OrbitFamily::SS; }

inline bool family_supported(const RootSystem& rs, OrbitFamily f) {
  return !requires_two_lengths(f) || rs.has_two_lengths();
}

inline void check_family_supported(const RootSystem& rs, OrbitFamily f) {
  if (!family_supported(rs, f))
    throw UnsupportedFamily(std::string("family requires two root lengths (") + to_string(f) + " on " +
                            rs.algebra().to_string() + ")");
}

/// rho_C = 0, rho_S = rho, rho_SL = rho^L, rho_SS = rho^S.
inline Weight family_rho(const RootSystem& rs, OrbitFamily f) {
  switch (f) {
    case OrbitFamily::C: return Weight(rs.rank());
    case OrbitFamily::S: return rs.rho();
    case OrbitFamily::SL: return rs.rho_long();
    case OrbitFamily::SS: return rs.rho_short();
  }
  return Weight(rs.rank());
}

/// e^{2 pi i t} with t reduced mod 1 first, which keeps large arguments accurate.
inline std::complex<double> unit_phase(double t) {
  const double r = t - std::round(t);
  return {std::cos(kTwoPi * r), std::sin(kTwoPi * r)};
}

enum class Parity { Real, Imaginary, Mixed, Zero };

inline const char* to_string(Parity p) {
  switch (p) {
    case Parity::Real: return "real";
    case Parity::Imaginary: return "imaginary";
    case Parity::Mixed: return "mixed";
    case Parity::Zero: return "zero";
  }
  return "?";
}

/// One orbit function: sum over W of kappa(w) e^{2 pi i <w mu, x>} with
/// mu = lambda + rho_family.
///
/// Stored as the orbit of mu, each point carrying kappa times the
/// stabilizer order. The RootSystem must outlive the function.
class OrbitFunction {
 public:
  struct Term {
    Weight weight;
    std::int64_t coefficient;
  };

  OrbitFunction(const RootSystem& rs, OrbitFamily family, const Weight& lambda,
                std::uint64_t max_orbit = kDefaultEnumerationCap)
      : rs_(&rs), family_(family) {
    check_family_supported(rs, family);
    if (lambda.size() != rs.rank()) throw DimensionMismatch("lambda rank mismatch");
    if (!lambda.is_dominant()) throw InvalidWeight("lambda " + lambda.to_string() + " is not dominant");
    lambda_ = lambda;
    effective_ = lambda + family_rho(rs, family);
    build(max_orbit);
  }

  /// Same function family with an arbitrary effective weight mu (not
  /// necessarily dominant). Equals kappa(w) times the function of the
  /// dominant representative, where w moves that representative to mu.
  static OrbitFunction with_effective_weight(const RootSystem& rs, OrbitFamily family, const Weight& mu,
                                             std::uint64_t max_orbit = kDefaultEnumerationCap) {
    check_family_supported(rs, family);
    if (mu.size() != rs.rank()) throw DimensionMismatch("effective weight rank mismatch");
    OrbitFunction f;
    f.rs_ = &rs;
    f.family_ = family;
    f.effective_ = mu;
    f.lambda_ = dominant_representative(rs, mu) - family_rho(rs, family);
    f.build(max_orbit);
    return f;
  }

  const RootSystem& root_system() const { return *rs_; }
  OrbitFamily family() const { return family_; }
  SignKind kind() const { return sign_kind(family_); }
  const Weight& lambda() const { return lambda_; }
  const Weight& effective_weight() const { return effective_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t orbit_size() const { return orbit_size_; }
  std::uint64_t stabilizer_order() const { return stabilizer_order_; }
  /// kappa is nontrivial on the stabilizer of mu, so the function is 0.
  bool identically_zero() const { return zero_; }

  std::complex<double> evaluate(const Point& x) const {
    if (x.size() != rs_->rank()) throw DimensionMismatch("evaluate: point rank mismatch");
    const std::size_t n = x.size();
    std::complex<double> s = 0.0;
    for (const auto& t : terms_) {
      double d = 0.0;
      for (std::size_t i = 0; i < n; ++i) d += static_cast<double>(t.weight[i]) * x[i];
      s += static_cast<double>(t.coefficient) * unit_phase(d);
    }
    return s;
  }
  std::complex<double> operator()(const Point& x) const { return evaluate(x); }

  /// Real (f(-x) = conj f(x) pairs up as cosines), imaginary (sines) or
  /// mixed, read off from whether -nu carries +c or -c for every term.
  Parity parity() const {
    if (zero_) return Parity::Zero;
    std::unordered_map<Weight, std::int64_t, WeightHash> coef;
    for (const auto& t : terms_) coef.emplace(t.weight, t.coefficient);
    bool real = true, imag = true;
    for (const auto& t : terms_) {
      const auto it = coef.find(-t.weight);
      const std::int64_t c = it == coef.end() ? 0 : it->second;
      real = real && c == t.coefficient;
      imag = imag && c == -t.coefficient;
    }
    return real ? Parity::Real : imag ? Parity::Imaginary : Parity::Mixed;
  }

 private:
  OrbitFunction() = default;

  void build(std::uint64_t max_orbit) {
    const auto o = orbit(*rs_, effective_, max_orbit);
    orbit_size_ = o.size();
    stabilizer_order_ = o.stabilizer_order;
    const SignKind k = kind();
    zero_ = !o.sign_trivial_on_stabilizer(*rs_, k);
    if (zero_) return;
    // Sign of mu itself relative to the dominant seed.
    int base = 1;
    for (std::size_t i = 0; i < o.size(); ++i)
      if (o.elements[i] == effective_) base = o.signs[i][k];
    const auto stab = static_cast<std::int64_t>(o.stabilizer_order);
    terms_.reserve(o.size());
    for (std::size_t i = 0; i < o.size(); ++i) terms_.push_back({o.elements[i], base * o.signs[i][k] * stab});
  }

  const RootSystem* rs_ = nullptr;
  OrbitFamily family_ = OrbitFamily::C;
  Weight lambda_;
  Weight effective_;
  std::vector<Term> terms_;
  std::size_t orbit_size_ = 0;
  std::uint64_t stabilizer_order_ = 1;
  bool zero_ = false;
};

inline std::complex<double> evaluate(const OrbitFunction& f, const Point& x) { return f.evaluate(x); }

/// Reference evaluation as the literal sum over the given group elements.
inline std::complex<double> evaluate_group_sum(const std::vector<WeylElement>& group, SignKind kind, const Weight& mu,
                                               const Point& x) {
  std::complex<double> s = 0.0;
  for (const auto& w : group) s += static_cast<double>(w.sign(kind)) * unit_phase(pairing(w.apply(mu), x));
  return s;
}

/// Result of folding a point into F: y = w x + shift.
struct FoldResult {
  Point folded_point;
  SignValues signs;                   ///< sign values of the element applied
  IntMatrix point_action;             ///< linear part w on alpha-check coordinates
  std::vector<std::int64_t> shift;    ///< element of Q-check, alpha-check coordinates
  std::size_t steps = 0;

  int sign(SignKind k) const { return signs[k]; }
};

inline constexpr std::size_t kFoldIterationCap = 10'000;

/// Folds x into F by repeatedly applying the reflection of the most
/// violated inequality (r_0 is the affine reflection in <xi,x> = 1, which
/// carries the signs of a long reflection).
inline FoldResult fold_to_F(const RootSystem& rs, const Point& x) {
  const std::size_t n = rs.rank();
  if (x.size() != n) throw DimensionMismatch("fold: point rank mismatch");
  const auto fd = rs.fundamental_domain();
  const auto xi_check = rs.root(rs.highest_root()).coroot;
  const auto& xi = rs.highest_root();

  IntMatrix r0(n);  // I - xi_check xi^T
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r0(i, j) = (i == j ? 1 : 0) - xi_check[i] * xi[j];
  std::vector<IntMatrix> simple;
  for (std::size_t i = 0; i < n; ++i) simple.push_back(simple_reflection(rs, i).point_action);

  FoldResult r;
  r.folded_point = x;
  r.point_action = IntMatrix::identity(n);
  r.shift.assign(n, 0);
  constexpr double kSlack = 1e-13;
  for (;;) {
    const auto s = fd.slacks(r.folded_point);
    std::size_t worst = 0;
    for (std::size_t j = 1; j < s.size(); ++j)
      if (s[j] < s[worst]) worst = j;
    if (s[worst] >= -kSlack) break;
    if (++r.steps > kFoldIterationCap) throw FoldDivergence("fold did not converge");
    if (worst == 0) {
      r.folded_point = r0.apply(r.folded_point);
      for (std::size_t i = 0; i < n; ++i) r.folded_point[i] += static_cast<double>(xi_check[i]);
      r.point_action = r0 * r.point_action;
      r.shift = r0.apply(std::span<const std::int64_t>(r.shift));
      for (std::size_t i = 0; i < n; ++i) r.shift[i] += xi_check[i];
      r.signs = reflection_signs(RootLength::Long) * r.signs;
    } else {
      const std::size_t j = worst - 1;
      r.folded_point = simple[j].apply(r.folded_point);
      r.point_action = simple[j] * r.point_action;
      r.shift = simple[j].apply(std::span<const std::int64_t>(r.shift));
      r.signs = generator_signs(rs, j) * r.signs;
    }
  }
  return r;
}

/// Faces of F on which every function of the family vanishes: face j
/// belongs iff kappa of the reflection fixing it is -1 (face 0 is fixed by
/// r_0, a long reflection modulo Q-check).
inline std::set<int> boundary_profile(const RootSystem& rs, OrbitFamily family) {
  check_family_supported(rs, family);
  const SignKind k = sign_kind(family);
  std::set<int> out;
  if (reflection_signs(RootLength::Long)[k] == -1) out.insert(0);
  for (std::size_t j = 0; j < rs.rank(); ++j)
    if (generator_signs(rs, j)[k] == -1) out.insert(static_cast<int>(j + 1));
  return out;
}

/// Barycentric grid {sum (k_i/m) vertex_i : k_i >= 0, sum k_i = m}, in
/// lexicographic order of (k_0, ..., k_n) descending.
inline std::vector<Point> barycentric_grid(const FundamentalDomain& fd, int resolution) {
  if (resolution < 1) throw Error("grid resolution must be at least 1");
  const std::size_t parts = fd.rank() + 1;
  std::vector<Point> out;
  std::vector<int> k(parts, 0);
  std::vector<double> b(parts);
  const auto rec = [&](auto&& self, std::size_t pos, int left) -> void {
    if (pos + 1 == parts) {
      k[pos] = left;
      for (std::size_t i = 0; i < parts; ++i) b[i] = static_cast<double>(k[i]) / resolution;
      out.push_back(fd.from_barycentric(b));
      return;
    }
    for (int v = left; v >= 0; --v) {
      k[pos] = v;
      self(self, pos + 1, left - v);
    }
  };
  rec(rec, 0, resolution);
  return out;
}

struct GridTable {
  std::size_t rank = 0;
  std::vector<Point> points;
  std::vector<std::complex<double>> values;
};

/// Evaluates f on the barycentric grid. Rows are split into contiguous
/// blocks, one per worker; output order does not depend on workers.
inline GridTable evaluate_grid(const OrbitFunction& f, int resolution, unsigned workers = 1) {
  GridTable t;
  t.rank = f.root_system().rank();
  t.points = barycentric_grid(f.root_system().fundamental_domain(), resolution);
  t.values.resize(t.points.size());
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(t.points.size())));
  const std::size_t block = (t.points.size() + workers - 1) / workers;
  const auto run = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) t.values[i] = f.evaluate(t.points[i]);
  };
  if (workers == 1) {
    run(0, t.points.size());
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t lo = w * block, hi = std::min(t.points.size(), lo + block);
      if (lo < hi) pool.emplace_back(run, lo, hi);
    }
  }
  return t;
}

inline void write_csv(std::ostream& os, const GridTable& t) {
  const auto old = os.precision(17);
  for (std::size_t i = 0; i < t.rank; ++i) os << "x_" << i + 1 << ',';
  os << "re,im\n";
  for (std::size_t r = 0; r < t.points.size(); ++r) {
    for (std::size_t i = 0; i < t.rank; ++i) os << t.points[r][i] << ',';
    os << t.values[r].real() << ',' << t.values[r].imag() << '\n';
  }
  os.precision(old);
}

}  // namespace orbitfn
