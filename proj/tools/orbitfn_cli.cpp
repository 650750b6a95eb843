// orbitfn command-line front end.
//
// Exit codes: 0 ok, 1 verification failure or internal error, 2 usage error.

#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "orbitfn/orbitfn.hpp"

namespace {

using namespace orbitfn;

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

Weight parse_weight(const std::string& s, std::size_t rank) {
  std::vector<std::int64_t> v;
  for (const auto& item : split(s, ',')) {
    std::size_t used = 0;
    long long x = 0;
    try {
      x = std::stoll(item, &used);
    } catch (const std::exception&) {
      throw UsageError("lambda must be integers, got '" + s + "'");
    }
    if (used != item.size()) throw UsageError("lambda must be integers, got '" + s + "'");
    v.push_back(x);
  }
  if (v.size() != rank)
    throw UsageError("expected " + std::to_string(rank) + " coordinates, got '" + s + "'");
  return Weight(v);
}

Point parse_point(const std::string& s, std::size_t rank) {
  std::vector<double> v;
  for (const auto& item : split(s, ',')) {
    std::size_t used = 0;
    double x = 0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      throw UsageError("point must be real numbers, got '" + s + "'");
    }
    if (used != item.size()) throw UsageError("point must be real numbers, got '" + s + "'");
    v.push_back(x);
  }
  if (v.size() != rank) throw UsageError("expected " + std::to_string(rank) + " coordinates, got '" + s + "'");
  return Point(v);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << (v == 0.0 ? 0.0 : v);
  return os.str();
}

/// "a + bi" with tiny rounding residue shown as 0.
std::string format_complex(std::complex<double> z) {
  const double scale = std::max(1.0, std::abs(z));
  double re = std::abs(z.real()) < 1e-12 * scale ? 0.0 : z.real();
  double im = std::abs(z.imag()) < 1e-12 * scale ? 0.0 : z.imag();
  return fmt(re) + (im < 0 ? " - " : " + ") + fmt(std::abs(im)) + "i";
}

std::string weight_label(const Weight& w) { return w.to_string(); }

struct Global {
  std::string algebra;
  std::string format = "text";
  std::string output;
  std::uint64_t seed = 42;
  unsigned workers = 1;
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw UsageError("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

RootSystem system_for(const Global& g) {
  if (g.algebra.empty()) throw UsageError("--algebra is required");
  return RootSystem::build(AlgebraType::parse(g.algebra));
}

/// "FAMILY:l1,l2" for decompose.
std::pair<OrbitFamily, Weight> parse_factor(const std::string& s, std::size_t rank) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw UsageError("expected FAMILY:l1,...,ln, got '" + s + "'");
  OrbitFamily f;
  try {
    f = parse_family(s.substr(0, colon));
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  return {f, parse_weight(s.substr(colon + 1), rank)};
}

// ---------------------------------------------------------------------------

struct EvalArgs {
  std::string family;
  std::string lambda;
  std::string point;
  int grid = 0;
};

int cmd_eval(const Global& g, const EvalArgs& a) {
  const auto rs = system_for(g);
  OrbitFamily fam;
  try {
    fam = parse_family(a.family);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  const Weight lambda = parse_weight(a.lambda, rs.rank());
  const OrbitFunction f(rs, fam, lambda);
  Output out(g.output);
  auto& os = out.stream();
  Json meta{{"algebra", rs.algebra().to_string()},
            {"family", to_string(fam)},
            {"lambda", to_json(lambda)},
            {"effective_weight", to_json(f.effective_weight())}};
  if (a.grid > 0) {
    const auto table = evaluate_grid(f, a.grid, g.workers);
    if (g.format == "json") {
      meta["resolution"] = a.grid;
      os << grid_to_json(table, meta).dump(2) << '\n';
    } else {
      write_csv(os, table);
    }
    return kOk;
  }
  if (a.point.empty()) throw UsageError("eval needs --point or --grid");
  const Point x = parse_point(a.point, rs.rank());
  const auto v = f.evaluate(x);
  if (g.format == "json") {
    meta["point"] = to_json(x);
    os << Json{{"meta", meta}, {"value", to_json(v)}}.dump(2) << '\n';
  } else if (g.format == "csv") {
    GridTable t{rs.rank(), {x}, {v}};
    write_csv(os, t);
  } else {
    os << format_complex(v) << '\n';
  }
  return kOk;
}

struct FoldArgs {
  std::string point;
  std::string lambda;
};

int cmd_fold(const Global& g, const FoldArgs& a) {
  const auto rs = system_for(g);
  if (a.point.empty()) throw UsageError("fold needs --point");
  const Point x = parse_point(a.point, rs.rank());
  const Weight lambda = a.lambda.empty() ? Weight(rs.rank()) : parse_weight(a.lambda, rs.rank());
  if (!lambda.is_dominant()) throw InvalidWeight("lambda " + lambda.to_string() + " is not dominant");
  const auto r = fold_to_F(rs, x);

  // Re-evaluation check f(x) = kappa(w) f(y) for each applicable family.
  Json checks = Json::array();
  std::vector<std::pair<std::string, double>> residuals;
  for (auto fam : kAllFamilies) {
    if (!family_supported(rs, fam)) continue;
    const OrbitFunction f(rs, fam, lambda);
    const double res =
        std::abs(f.evaluate(x) - static_cast<double>(r.sign(f.kind())) * f.evaluate(r.folded_point));
    residuals.emplace_back(to_string(fam), res);
    checks.push_back(Json{{"family", to_string(fam)}, {"residual", res}});
  }

  Output out(g.output);
  auto& os = out.stream();
  if (g.format == "json") {
    auto j = to_json(r);
    j["point"] = to_json(x);
    j["checks"] = checks;
    os << j.dump(2) << '\n';
  } else if (g.format == "csv") {
    for (std::size_t i = 0; i < rs.rank(); ++i) os << "y_" << i + 1 << ',';
    os << "sign_id,sign_sigma,sign_long,sign_short";
    for (std::size_t i = 0; i < rs.rank(); ++i) os << ",q_" << i + 1;
    os << '\n';
    os.precision(17);
    for (std::size_t i = 0; i < rs.rank(); ++i) os << r.folded_point[i] << ',';
    os << r.signs.id << ',' << r.signs.sigma << ',' << r.signs.long_sign << ',' << r.signs.short_sign;
    for (auto q : r.shift) os << ',' << q;
    os << '\n';
  } else {
    os << "folded:";
    for (std::size_t i = 0; i < rs.rank(); ++i) os << ' ' << fmt(r.folded_point[i]);
    os << "\nsigns: id=" << r.signs.id << " sigma=" << r.signs.sigma << " long=" << r.signs.long_sign
       << " short=" << r.signs.short_sign << "\nshift:";
    for (auto q : r.shift) os << ' ' << q;
    os << '\n';
    for (const auto& [name, res] : residuals)
      os << "check " << name << lambda.to_string() << ": |f(x) - kappa(w) f(y)| = " << res
         << (res < kPropertyTolerance ? " ok" : " FAILED") << '\n';
  }
  for (const auto& [name, res] : residuals)
    if (!(res < kPropertyTolerance)) return kFailure;
  return kOk;
}

struct DecomposeArgs {
  std::string first;
  std::string second;
};

/// "2 S(1,0) - 1/2 S(0,0)", highest label first.
std::string linear_text(const std::map<Weight, BigRational>& m, const std::string& basis) {
  std::string out;
  for (auto it = m.rbegin(); it != m.rend(); ++it) {
    const bool neg = it->second < 0;
    const BigRational a = neg ? BigRational(-it->second) : it->second;
    out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
    out += a.str() + " " + basis + it->first.to_string();
  }
  return out.empty() ? "0" : out;
}

int cmd_decompose(const Global& g, const DecomposeArgs& a) {
  const auto rs = system_for(g);
  const auto [f1, l1] = parse_factor(a.first, rs.rank());
  const auto [f2, l2] = parse_factor(a.second, rs.rank());
  const auto p = orbit_sum(rs, f1, l1) * orbit_sum(rs, f2, l2);
  const SkewClass t = product_class(skew_class_of(f1), skew_class_of(f2));
  const OrbitFamily fam = family_of(t);
  if (!family_supported(rs, fam)) throw IdentityViolation("product class has no family on this algebra");

  std::map<Weight, BigRational> family_basis, c_basis;
  try {
    family_basis = decompose_into_family(rs, p, t);
    if (t != SkewClass::Zero) {
      const auto q = divide_by_denominator(rs, p, t);
      c_basis = decompose_into_C(rs, q);
    }
  } catch (const NonExactDivision& e) {
    throw IdentityViolation(std::string("decomposition inconsistency: ") + e.what());
  } catch (const NonInvariant& e) {
    throw IdentityViolation(std::string("decomposition inconsistency: ") + e.what());
  }

  Output out(g.output);
  auto& os = out.stream();
  if (g.format == "json") {
    Json fb = Json::array(), cb = Json::array();
    for (const auto& [l, c] : family_basis) fb.push_back(Json{{"lambda", to_json(l)}, {"coefficient", c.str()}});
    for (const auto& [l, c] : c_basis) cb.push_back(Json{{"lambda", to_json(l)}, {"coefficient", c.str()}});
    Json j{{"meta",
            {{"algebra", rs.algebra().to_string()},
             {"first", a.first},
             {"second", a.second},
             {"class", to_string(t)},
             {"family", to_string(fam)}}},
           {"family_basis", fb}};
    if (t != SkewClass::Zero) j["quotient_C_basis"] = cb;
    os << j.dump(2) << '\n';
  } else if (g.format == "csv") {
    os << "basis,lambda,coefficient\n";
    for (const auto& [l, c] : family_basis) os << to_string(fam) << ",\"" << l.to_string() << "\"," << c.str() << '\n';
    for (const auto& [l, c] : c_basis) os << "quotient_C,\"" << l.to_string() << "\"," << c.str() << '\n';
  } else {
    os << "class: " << to_string(t) << " (family " << to_string(fam) << ")\n";
    os << "product = " << linear_text(family_basis, to_string(fam)) << '\n';
    if (t != SkewClass::Zero) {
      os << "product / D^" << to_string(t) << " = " << linear_text(c_basis, "C") << '\n';
    }
  }
  return kOk;
}

struct CharacterArgs {
  std::string cls = "full";
  std::string lambda;
};

SkewClass parse_class(std::string s) {
  for (auto& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (s == "full" || s == "s") return SkewClass::Full;
  if (s == "long" || s == "l" || s == "sl") return SkewClass::Long;
  if (s == "short" || s == "ss") return SkewClass::Short;
  throw UsageError("class must be full, long or short");
}

/// Sum of m(mu) terms, highest first; m(0) prints as the constant.
std::string orbit_sum_text(const std::map<Weight, BigInt>& m) {
  std::vector<std::pair<Weight, BigInt>> terms(m.begin(), m.end());
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    const auto ha = std::accumulate(a.first.begin(), a.first.end(), std::int64_t{0});
    const auto hb = std::accumulate(b.first.begin(), b.first.end(), std::int64_t{0});
    return ha != hb ? ha > hb : a.first > b.first;
  });
  std::string out;
  for (const auto& [w, c] : terms) {
    const bool neg = c < 0;
    const BigInt a = neg ? BigInt(-c) : c;
    std::string term;
    if (w.is_zero())
      term = a.str();
    else
      term = (a == 1 ? std::string() : a.str() + " ") + "m" + w.to_string();
    out += (out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ")) + term;
  }
  return out.empty() ? "0" : out;
}

int cmd_character(const Global& g, const CharacterArgs& a) {
  const auto rs = system_for(g);
  const SkewClass t = parse_class(a.cls);
  if (t != SkewClass::Full && !rs.has_two_lengths())
    throw UnsupportedFamily("family requires two root lengths");
  const Weight lambda = a.lambda.empty() ? Weight(rs.rank()) : parse_weight(a.lambda, rs.rank());
  const auto ch = character(rs, t, lambda);
  const auto m = decompose_into_orbit_sums(rs, ch);
  Output out(g.output);
  auto& os = out.stream();
  if (g.format == "json") {
    Json terms = Json::array();
    for (const auto& [w, c] : m) terms.push_back(Json{{"mu", to_json(w)}, {"coefficient", c.str()}});
    os << Json{{"meta", {{"algebra", rs.algebra().to_string()}, {"class", to_string(t)}, {"lambda", to_json(lambda)}}},
               {"orbit_sum_basis", terms},
               {"dimension", ch.coefficient_sum().str()},
               {"polynomial", to_json(ch)}}
              .dump(2)
       << '\n';
  } else if (g.format == "csv") {
    os << "mu,coefficient\n";
    for (const auto& [w, c] : m) os << '"' << w.to_string() << "\"," << c.str() << '\n';
  } else {
    os << orbit_sum_text(m) << '\n';
  }
  return kOk;
}

struct VerifyArgs {
  std::uint64_t cap = kDefaultEnumerationCap;
  std::size_t trials = 200;
  std::size_t ring = 10;
  int box = 1;
  std::uint64_t samples = 200'000;
  bool progress = false;
};

int cmd_verify(const Global& g, const VerifyArgs& a) {
  if (g.algebra.empty()) throw UsageError("--algebra is required");
  const auto type = AlgebraType::parse(g.algebra);
  SuiteConfig cfg;
  cfg.enumeration_cap = a.cap;
  cfg.property_trials = a.trials;
  cfg.ring_samples = a.ring;
  cfg.orthogonality_box = a.box;
  cfg.monte_carlo_samples = a.samples;
  cfg.seed = g.seed;
  cfg.workers = g.workers;
  if (a.progress) cfg.progress = &std::cerr;
  const auto report = run_suite(type, cfg);
  Output out(g.output);
  auto& os = out.stream();
  if (g.format == "json")
    os << to_json(report).dump(2) << '\n';
  else
    os << report.to_text();
  return report.passed() ? kOk : kFailure;
}

struct InfoArgs {};

int cmd_info(const Global& g) {
  const auto rs = system_for(g);
  Output out(g.output);
  auto& os = out.stream();
  if (g.format == "json") {
    os << to_json(rs).dump(2) << '\n';
    return kOk;
  }
  os << rs.algebra().to_string() << ": rank " << rs.rank() << ", |Delta| = " << 2 * rs.positive_roots().size()
     << ", |W| = " << rs.weyl_order() << "\nhighest root " << rs.highest_root().to_string() << ", marks";
  for (auto m : rs.marks()) os << ' ' << m;
  os << "\nrho " << rs.rho().to_string() << '\n';
  if (rs.has_two_lengths())
    os << "rho^L " << rs.rho_long().to_string() << ", rho^S " << rs.rho_short().to_string() << "\nDelta^L "
       << rs.subsystem(RootLength::Long).type << ", Delta^S " << rs.subsystem(RootLength::Short).type << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weyl group orbit functions: evaluation, folding, exact decompositions and verification"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--algebra", g.algebra, "Cartan type and rank, e.g. G2, B3, F4");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json", "text"}));
  app.add_option("--output", g.output, "Write output to this file instead of stdout");
  app.add_option("--seed", g.seed, "Random seed (Monte Carlo)");
  app.add_option("--workers", g.workers, "Worker threads for grids and Monte Carlo")->check(CLI::PositiveNumber);

  EvalArgs ea;
  auto* eval = app.add_subcommand("eval", "Evaluate an orbit function at a point or on a grid over F");
  eval->add_option("--family", ea.family, "C, S, SL or SS")->required();
  eval->add_option("--lambda", ea.lambda, "Dominant weight in omega-coordinates, e.g. 1,0")->required();
  auto* point_opt = eval->add_option("--point", ea.point, "Point in co-root coordinates, e.g. 0.1,0.2");
  eval->add_option("--grid", ea.grid, "Barycentric grid resolution m")->check(CLI::PositiveNumber)->excludes(point_opt);

  FoldArgs fa;
  auto* fold = app.add_subcommand("fold", "Fold a point into the fundamental domain F");
  fold->add_option("--point", fa.point, "Point in co-root coordinates")->required();
  fold->add_option("--lambda", fa.lambda, "Weight used for the re-evaluation check lines (default 0)");

  DecomposeArgs da;
  auto* dec = app.add_subcommand("decompose", "Decompose the product of two orbit functions");
  dec->add_option("--first", da.first, "FAMILY:l1,...,ln")->required();
  dec->add_option("--second", da.second, "FAMILY:l1,...,ln")->required();

  CharacterArgs ca;
  auto* chr = app.add_subcommand("character", "Character-like function chi, chi^L or chi^S in orbit sums");
  chr->add_option("--class", ca.cls, "full, long or short");
  chr->add_option("--lambda", ca.lambda, "Dominant weight (default 0)");

  VerifyArgs va;
  auto* ver = app.add_subcommand("verify", "Run the verification suite for an algebra");
  ver->add_option("--skip-enumeration-over", va.cap, "Skip checks that enumerate groups larger than this");
  ver->add_option("--trials", va.trials, "Random trials per function family");
  ver->add_option("--ring-samples", va.ring, "Random ring-theorem instances per class");
  ver->add_option("--box", va.box, "Weight box bound for exact orthogonality");
  ver->add_option("--samples", va.samples, "Monte Carlo samples for numeric orthogonality");
  ver->add_flag("--progress", va.progress, "Report each check on stderr as it finishes");

  auto* info = app.add_subcommand("info", "Print root system data");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*eval) return cmd_eval(g, ea);
    if (*fold) return cmd_fold(g, fa);
    if (*dec) return cmd_decompose(g, da);
    if (*chr) return cmd_character(g, ca);
    if (*ver) return cmd_verify(g, va);
    if (*info) return cmd_info(g);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const UnsupportedFamily& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidWeight& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidAlgebra& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DimensionMismatch& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const NoTwoLengths& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const GroupTooLarge& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kFailure;
  }
  return kOk;
}
