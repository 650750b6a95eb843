#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "orbitfn/errors.hpp"
#include "orbitfn/types.hpp"

namespace orbitfn {

enum class LieType { A, B, C, D, E, F, G };

enum class RootLength { Long, Short };

inline const char* to_string(RootLength t) { return t == RootLength::Long ? "long" : "short"; }

inline RootLength other(RootLength t) {
  return t == RootLength::Long ? RootLength::Short : RootLength::Long;
}

/// Cartan type and rank, e.g. {G, 2}. Parsed from and printed as "G2".
struct AlgebraType {
  LieType type = LieType::A;
  int rank = 1;

  friend bool operator==(const AlgebraType&, const AlgebraType&) = default;

  std::string to_string() const { return std::string(1, "ABCDEFG"[static_cast<int>(type)]) + std::to_string(rank); }

  bool has_two_lengths() const {
    return type == LieType::B || type == LieType::C || type == LieType::F || type == LieType::G;
  }

  void validate() const {
    const auto bad = [this] { throw InvalidAlgebra("unsupported algebra " + to_string()); };
    switch (type) {
      case LieType::A: if (rank < 1) bad(); break;
      case LieType::B:
      case LieType::C: if (rank < 2) bad(); break;
      case LieType::D: if (rank < 4) bad(); break;
      case LieType::E: if (rank < 6 || rank > 8) bad(); break;
      case LieType::F: if (rank != 4) bad(); break;
      case LieType::G: if (rank != 2) bad(); break;
    }
  }

  static AlgebraType parse(const std::string& s) {
    if (s.size() < 2) throw InvalidAlgebra("cannot parse algebra '" + s + "'");
    const char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
    const auto pos = std::string("ABCDEFG").find(letter);
    if (pos == std::string::npos) throw InvalidAlgebra("unknown family in '" + s + "'");
    int rank = 0;
    for (std::size_t i = 1; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw InvalidAlgebra("cannot parse rank in '" + s + "'");
      rank = rank * 10 + (s[i] - '0');
      if (rank > 64) throw InvalidAlgebra("rank too large in '" + s + "'");
    }
    AlgebraType t{static_cast<LieType>(pos), rank};
    t.validate();
    return t;
  }
};

/// |Delta| for each type (number of nonzero roots).
inline std::uint64_t expected_root_count(const AlgebraType& t) {
  const std::uint64_t n = static_cast<std::uint64_t>(t.rank);
  switch (t.type) {
    case LieType::A: return n * (n + 1);
    case LieType::B:
    case LieType::C: return 2 * n * n;
    case LieType::D: return 2 * n * n - 2 * n;
    case LieType::E: return n == 6 ? 72 : n == 7 ? 126 : 240;
    case LieType::F: return 48;
    case LieType::G: return 12;
  }
  return 0;
}

/// |W| for each type.
inline std::uint64_t weyl_group_order(const AlgebraType& t) {
  std::uint64_t fact = 1;
  for (int k = 2; k <= t.rank + (t.type == LieType::A ? 1 : 0); ++k) fact *= static_cast<std::uint64_t>(k);
  switch (t.type) {
    case LieType::A: return fact;
    case LieType::B:
    case LieType::C: return fact << t.rank;
    case LieType::D: return fact << (t.rank - 1);
    case LieType::E: return t.rank == 6 ? 51840ULL : t.rank == 7 ? 2903040ULL : 696729600ULL;
    case LieType::F: return 1152;
    case LieType::G: return 12;
  }
  return 0;
}

/// Cartan matrix with A(i,j) = 2(alpha_i|alpha_j)/(alpha_j|alpha_j).
///
/// Row i holds the omega-coordinates of alpha_i. Numbering follows the
/// usual Dynkin conventions except G2, where alpha_1 is the long root
/// (highest root 2 alpha_1 + 3 alpha_2).
inline IntMatrix cartan_matrix(const AlgebraType& t) {
  t.validate();
  const std::size_t n = static_cast<std::size_t>(t.rank);
  IntMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) a(i, i) = 2;
  const auto bond = [&a](std::size_t i, std::size_t j) { a(i, j) = a(j, i) = -1; };
  switch (t.type) {
    case LieType::A:
      for (std::size_t i = 0; i + 1 < n; ++i) bond(i, i + 1);
      break;
    case LieType::B:
      for (std::size_t i = 0; i + 1 < n; ++i) bond(i, i + 1);
      a(n - 2, n - 1) = -2;  // alpha_n short
      break;
    case LieType::C:
      for (std::size_t i = 0; i + 1 < n; ++i) bond(i, i + 1);
      a(n - 1, n - 2) = -2;  // alpha_n long
      break;
    case LieType::D:
      for (std::size_t i = 0; i + 2 < n; ++i) bond(i, i + 1);
      bond(n - 3, n - 1);
      break;
    case LieType::E:
      bond(0, 2);
      bond(1, 3);
      for (std::size_t i = 2; i + 1 < n; ++i) bond(i, i + 1);
      break;
    case LieType::F:
      bond(0, 1);
      bond(1, 2);
      bond(2, 3);
      a(1, 2) = -2;
      break;
    case LieType::G:
      a(0, 1) = -3;
      a(1, 0) = -1;
      break;
  }
  return a;
}

/// A root with all the coordinate views the rest of the library needs.
struct Root {
  Weight weight;                        ///< omega-coordinates
  std::vector<std::int64_t> simple;     ///< coefficients on alpha_1..alpha_n
  std::vector<std::int64_t> coroot;     ///< beta-check in alpha-check coordinates
  Rational length_sq;                   ///< (beta|beta), long roots normalized to 2
  RootLength length = RootLength::Long;
  std::vector<int> reflection_word;     ///< simple-reflection word for r_beta

  std::int64_t height() const { return std::accumulate(simple.begin(), simple.end(), std::int64_t{0}); }
  bool is_positive() const { return std::all_of(simple.begin(), simple.end(), [](auto c) { return c >= 0; }); }
};

/// Long or short root subsystem together with its identified Cartan type.
struct SubsystemDescriptor {
  RootLength length = RootLength::Long;
  std::vector<Weight> roots;            ///< all roots of the subsystem, omega-coordinates
  std::vector<Weight> positive_roots;
  std::vector<Weight> simple_roots;     ///< simple system of Delta^T_+
  std::vector<std::vector<std::int64_t>> cartan;
  std::string type;                     ///< e.g. "D4", "2A1", "A2"
};

/// Canonical spelling of small isomorphic types: D3 = A3, D2 = 2A1, C2 = B2.
inline std::string canonical_type_name(const std::string& name) {
  if (name == "D3") return "A3";
  if (name == "D2") return "2A1";
  if (name == "C2") return "B2";
  if (name == "A1+A1") return "2A1";
  return name;
}

/// The simplex F cut out by <alpha_j, x> >= 0 and <xi, x> <= 1.
///
/// Vertex 0 is the origin and vertex k is omega-check_k / m_k. Face y_j is
/// the facet opposite vertex j, i.e. where inequality j is tight (j = 0 is
/// the affine wall <xi, x> = 1).
struct FundamentalDomain {
  IntMatrix cartan;
  Weight highest_root;
  std::vector<std::int64_t> marks;
  std::vector<Point> vertices;

  std::size_t rank() const { return marks.size(); }

  /// Slack of each defining inequality; index 0 is 1 - <xi,x>, index j is <alpha_j,x>.
  std::vector<double> slacks(const Point& x) const {
    if (x.size() != rank()) throw DimensionMismatch("fundamental domain: rank mismatch");
    std::vector<double> s(rank() + 1);
    s[0] = 1.0 - pairing(highest_root, x);
    for (std::size_t j = 0; j < rank(); ++j) {
      double v = 0.0;
      for (std::size_t k = 0; k < rank(); ++k) v += static_cast<double>(cartan(j, k)) * x[k];
      s[j + 1] = v;
    }
    return s;
  }

  bool contains(const Point& x, double eps = kMembershipTolerance) const {
    const auto s = slacks(x);
    return std::all_of(s.begin(), s.end(), [eps](double v) { return v >= -eps; });
  }

  /// Faces y_j on which x lies (within eps).
  std::set<int> faces_containing(const Point& x, double eps = kMembershipTolerance) const {
    std::set<int> out;
    const auto s = slacks(x);
    for (std::size_t j = 0; j < s.size(); ++j)
      if (std::abs(s[j]) <= eps) out.insert(static_cast<int>(j));
    return out;
  }

  Point from_barycentric(std::span<const double> b) const {
    if (b.size() != vertices.size()) throw DimensionMismatch("barycentric coordinate count");
    Point p(rank());
    for (std::size_t k = 0; k < vertices.size(); ++k)
      for (std::size_t i = 0; i < rank(); ++i) p[i] += b[k] * vertices[k][i];
    return p;
  }
};

/// Immutable catalog of all static data of one root system.
///
/// Weights are stored in omega-coordinates and points in alpha-check
/// coordinates, so the pairing <lambda, x> is a coordinate dot product.
/// Simple reflection on weights: r_i(lambda) = lambda - lambda_i alpha_i.
class RootSystem {
 public:
  /// Upper bound on the positive roots generated before giving up; finite
  /// types need at most 120 (E8).
  static constexpr std::size_t kMaxPositiveRoots = 2000;

  static RootSystem build(const AlgebraType& algebra) {
    algebra.validate();
    return from_cartan(algebra, cartan_matrix(algebra));
  }

  /// Builds from an explicit Cartan matrix. The label is only carried along;
  /// everything is derived from the matrix. Throws InvalidAlgebra when the
  /// matrix is not symmetrizable or the root closure does not terminate.
  static RootSystem from_cartan(const AlgebraType& label, const IntMatrix& cartan) {
    RootSystem rs;
    rs.algebra_ = label;
    rs.cartan_ = cartan;
    rs.init();
    return rs;
  }

  const AlgebraType& algebra() const { return algebra_; }
  std::size_t rank() const { return cartan_.size(); }
  const IntMatrix& cartan() const { return cartan_; }
  bool has_two_lengths() const { return two_lengths_; }

  /// Order of W from the closed-form table (no enumeration).
  std::uint64_t weyl_order() const { return weyl_group_order(algebra_); }

  Weight simple_root(std::size_t i) const {
    Weight w(rank());
    for (std::size_t j = 0; j < rank(); ++j) w[j] = cartan_(i, j);
    return w;
  }
  const std::vector<Rational>& root_lengths_sq() const { return simple_lengths_sq_; }
  RootLength simple_root_length(std::size_t i) const { return simple_long_[i] ? RootLength::Long : RootLength::Short; }
  bool simple_root_is_long(std::size_t i) const { return simple_long_[i]; }

  const Weight& highest_root() const { return highest_root_; }
  const std::vector<std::int64_t>& marks() const { return marks_; }

  const std::vector<Root>& positive_roots() const { return positive_roots_; }
  std::vector<Root> all_roots() const {
    std::vector<Root> out = positive_roots_;
    for (const auto& r : positive_roots_) out.push_back(negate(r));
    return out;
  }

  /// Per-positive-root length classification, parallel to positive_roots().
  std::vector<bool> long_mask() const {
    std::vector<bool> m;
    for (const auto& r : positive_roots_) m.push_back(r.length == RootLength::Long);
    return m;
  }
  std::vector<bool> short_mask() const {
    std::vector<bool> m;
    for (const auto& r : positive_roots_) m.push_back(r.length == RootLength::Short);
    return m;
  }

  std::vector<Root> positive_roots(RootLength t) const {
    std::vector<Root> out;
    for (const auto& r : positive_roots_)
      if (r.length == t) out.push_back(r);
    return out;
  }

  const Weight& rho() const { return rho_; }
  const Weight& rho_long() const { return rho_long_; }
  const Weight& rho_short() const { return rho_short_; }
  const Weight& rho(RootLength t) const { return t == RootLength::Long ? rho_long_ : rho_short_; }

  bool is_root(const Weight& w) const { return root_index_.count(w) != 0; }

  /// Root record for +-beta. Throws NotARoot.
  Root root(const Weight& w) const {
    const auto it = root_index_.find(w);
    if (it == root_index_.end()) throw NotARoot(w.to_string() + " is not a root of " + algebra_.to_string());
    const Root& r = positive_roots_[it->second.first];
    return it->second.second ? r : negate(r);
  }

  RootLength classify(const Weight& w) const { return root(w).length; }

  /// Coordinates of lambda on the simple roots (exact, possibly fractional).
  std::vector<Rational> simple_coordinates(const Weight& lambda) const {
    check_rank(lambda.size());
    std::vector<Rational> c(rank(), Rational(0));
    // lambda = A^T c  =>  c = A^{-T} lambda
    for (std::size_t i = 0; i < rank(); ++i)
      for (std::size_t j = 0; j < rank(); ++j) c[i] += cartan_inverse_[j][i] * Rational(lambda[j]);
    return c;
  }

  Rational inner_product(const Weight& a, const Weight& b) const {
    const auto ca = simple_coordinates(a);
    const auto cb = simple_coordinates(b);
    Rational s(0);
    for (std::size_t i = 0; i < rank(); ++i)
      for (std::size_t j = 0; j < rank(); ++j) s += ca[i] * gram_[i][j] * cb[j];
    return s;
  }

  bool in_root_lattice(const Weight& lambda) const {
    const auto c = simple_coordinates(lambda);
    return std::all_of(c.begin(), c.end(), [](const Rational& r) { return r.denominator() == 1; });
  }
  /// Every Weight has integral omega-coordinates, so it lies in P.
  bool in_weight_lattice(const Weight& lambda) const {
    check_rank(lambda.size());
    return true;
  }
  bool in_coroot_lattice(const Point& x, double tol = 1e-9) const {
    check_rank(x.size());
    return std::all_of(x.begin(), x.end(), [tol](double v) { return std::abs(v - std::round(v)) <= tol; });
  }
  bool in_coweight_lattice(const Point& x, double tol = 1e-9) const {
    check_rank(x.size());
    for (std::size_t j = 0; j < rank(); ++j) {
      const double v = pair_simple_root(j, x);
      if (std::abs(v - std::round(v)) > tol) return false;
    }
    return true;
  }

  /// <alpha_j, x>
  double pair_simple_root(std::size_t j, const Point& x) const {
    double v = 0.0;
    for (std::size_t k = 0; k < rank(); ++k) v += static_cast<double>(cartan_(j, k)) * x[k];
    return v;
  }

  Weight reflect(std::size_t i, Weight lambda) const {
    check_rank(lambda.size());
    const auto li = lambda[i];
    for (std::size_t j = 0; j < rank(); ++j) lambda[j] -= li * cartan_(i, j);
    return lambda;
  }

  Point reflect(std::size_t i, Point x) const {
    check_rank(x.size());
    x[i] -= pair_simple_root(i, x);
    return x;
  }

  /// Reflection in an arbitrary root beta acting on weights.
  Weight reflect(const Root& beta, const Weight& lambda) const {
    check_rank(lambda.size());
    std::int64_t p = 0;
    for (std::size_t i = 0; i < rank(); ++i) p += lambda[i] * beta.coroot[i];
    Weight out = lambda;
    for (std::size_t i = 0; i < rank(); ++i) out[i] -= p * beta.weight[i];
    return out;
  }

  /// omega-check_k in alpha-check coordinates (column k of A^{-1}).
  Point coweight(std::size_t k) const {
    Point p(rank());
    for (std::size_t i = 0; i < rank(); ++i) p[i] = to_double(cartan_inverse_[i][k]);
    return p;
  }

  FundamentalDomain fundamental_domain() const {
    FundamentalDomain fd;
    fd.cartan = cartan_;
    fd.highest_root = highest_root_;
    fd.marks = marks_;
    fd.vertices.emplace_back(rank());
    for (std::size_t k = 0; k < rank(); ++k) {
      Point v(rank());
      for (std::size_t i = 0; i < rank(); ++i)
        v[i] = to_double(cartan_inverse_[i][k] / Rational(marks_[k]));
      fd.vertices.push_back(std::move(v));
    }
    return fd;
  }

  /// Long or short roots as a root system in their own right, with the
  /// Cartan type identified from the mutual inner products.
  SubsystemDescriptor subsystem(RootLength t) const {
    if (!two_lengths_) throw NoTwoLengths(algebra_.to_string() + " has roots of a single length");
    SubsystemDescriptor d;
    d.length = t;
    std::vector<const Root*> pos;
    for (const auto& r : positive_roots_)
      if (r.length == t) pos.push_back(&r);
    for (const auto* r : pos) {
      d.positive_roots.push_back(r->weight);
      d.roots.push_back(r->weight);
      d.roots.push_back(-r->weight);
    }
    // Simple roots of Delta^T_+ are its indecomposable elements.
    std::set<Weight> pos_set(d.positive_roots.begin(), d.positive_roots.end());
    std::vector<const Root*> simple;
    for (const auto* r : pos) {
      bool decomposable = false;
      for (const auto* s : pos) {
        if (s == r) continue;
        if (pos_set.count(r->weight - s->weight)) {
          decomposable = true;
          break;
        }
      }
      if (!decomposable) simple.push_back(r);
    }
    const std::size_t k = simple.size();
    d.cartan.assign(k, std::vector<std::int64_t>(k, 0));
    for (std::size_t i = 0; i < k; ++i) {
      d.simple_roots.push_back(simple[i]->weight);
      for (std::size_t j = 0; j < k; ++j) {
        const Rational v = Rational(2) * gram_of(*simple[i], *simple[j]) / simple[j]->length_sq;
        if (v.denominator() != 1) throw IdentityViolation("non-integral subsystem Cartan entry");
        d.cartan[i][j] = v.numerator();
      }
    }
    d.type = identify_cartan_type(d.cartan);
    return d;
  }

  /// Irreducible components of a (possibly reducible) Cartan matrix,
  /// identified from the Dynkin diagram. Isomorphic small types come out
  /// canonical (D3 reads as A3, C2 as B2).
  static std::vector<AlgebraType> identify_components(const std::vector<std::vector<std::int64_t>>& a) {
    const std::size_t k = a.size();
    std::vector<int> comp(k, -1);
    std::vector<AlgebraType> out;
    for (std::size_t s = 0; s < k; ++s) {
      if (comp[s] >= 0) continue;
      const int id = static_cast<int>(out.size());
      std::vector<std::size_t> nodes, stack{s};
      comp[s] = id;
      while (!stack.empty()) {
        const auto v = stack.back();
        stack.pop_back();
        nodes.push_back(v);
        for (std::size_t u = 0; u < k; ++u)
          if (u != v && a[v][u] != 0 && comp[u] < 0) {
            comp[u] = id;
            stack.push_back(u);
          }
      }
      std::sort(nodes.begin(), nodes.end());
      out.push_back(AlgebraType::parse(identify_component(a, nodes)));
    }
    return out;
  }

  /// Type name such as "D4", "2A1" or "A1+B2".
  static std::string identify_cartan_type(const std::vector<std::vector<std::int64_t>>& a) {
    std::map<std::string, int> counts;
    for (const auto& c : identify_components(a)) counts[c.to_string()]++;
    std::string out;
    for (const auto& [name, cnt] : counts) {
      if (!out.empty()) out += "+";
      out += (cnt > 1 ? std::to_string(cnt) : std::string()) + name;
    }
    return out;
  }

  /// Order of the parabolic subgroup generated by the given simple
  /// reflections, from the type of the sub-diagram.
  std::uint64_t parabolic_order(const std::vector<std::size_t>& indices) const {
    std::vector<std::vector<std::int64_t>> sub(indices.size(), std::vector<std::int64_t>(indices.size()));
    for (std::size_t i = 0; i < indices.size(); ++i)
      for (std::size_t j = 0; j < indices.size(); ++j) sub[i][j] = cartan_(indices[i], indices[j]);
    std::uint64_t order = 1;
    for (const auto& c : identify_components(sub)) order *= weyl_group_order(c);
    return order;
  }

 private:
  RootSystem() = default;

  void check_rank(std::size_t n) const {
    if (n != rank()) throw DimensionMismatch("expected rank " + std::to_string(rank()) + ", got " + std::to_string(n));
  }

  Rational gram_of(const Root& a, const Root& b) const {
    Rational s(0);
    for (std::size_t i = 0; i < rank(); ++i)
      for (std::size_t j = 0; j < rank(); ++j) s += Rational(a.simple[i]) * gram_[i][j] * Rational(b.simple[j]);
    return s;
  }

  static Root negate(const Root& r) {
    Root n = r;
    n.weight = -r.weight;
    for (auto& c : n.simple) c = -c;
    for (auto& c : n.coroot) c = -c;
    return n;
  }

  static std::string identify_component(const std::vector<std::vector<std::int64_t>>& a,
                                        const std::vector<std::size_t>& nodes) {
    const std::size_t k = nodes.size();
    const std::string rank = std::to_string(k);
    if (k == 1) return "A1";
    std::int64_t max_bond = 1;
    std::map<std::size_t, int> degree;
    for (auto i : nodes)
      for (auto j : nodes)
        if (i != j && a[i][j] != 0) {
          max_bond = std::max(max_bond, a[i][j] * a[j][i]);
          degree[i]++;
        }
    if (max_bond == 3) return "G2";
    if (max_bond == 2) {
      if (k == 2) return "B2";
      // a(di,dj) = -2, a(dj,di) = -1  <=>  alpha_di long, alpha_dj short.
      std::size_t di = 0, dj = 0;
      for (auto i : nodes)
        for (auto j : nodes)
          if (a[i][j] == -2 && a[j][i] == -1) {
            di = i;
            dj = j;
          }
      // Long simple roots are those on di's side of the double bond.
      std::set<std::size_t> long_side{di};
      std::vector<std::size_t> stack{di};
      while (!stack.empty()) {
        const auto v = stack.back();
        stack.pop_back();
        for (auto u : nodes)
          if (u != v && a[v][u] != 0 && !(v == di && u == dj) && !long_side.count(u)) {
            long_side.insert(u);
            stack.push_back(u);
          }
      }
      if (k == 4 && degree[di] == 2 && degree[dj] == 2) return "F4";
      return long_side.size() == k - 1 ? "B" + rank : "C" + rank;
    }
    std::vector<std::size_t> branch;
    for (auto i : nodes)
      if (degree[i] >= 3) branch.push_back(i);
    if (branch.empty()) return "A" + rank;
    if (branch.size() > 1 || degree[branch[0]] != 3) throw InvalidAlgebra("diagram is not of finite type");
    // Leg lengths from the branch node.
    std::vector<std::size_t> legs;
    const auto b = branch[0];
    for (auto start : nodes) {
      if (start == b || a[b][start] == 0) continue;
      std::size_t len = 1, prev = b, cur = start;
      for (;;) {
        std::optional<std::size_t> next;
        for (auto u : nodes)
          if (u != cur && u != prev && a[cur][u] != 0) next = u;
        if (!next) break;
        prev = cur;
        cur = *next;
        ++len;
      }
      legs.push_back(len);
    }
    std::sort(legs.begin(), legs.end());
    if (legs[0] == 1 && legs[1] == 1) return "D" + rank;
    if (legs[0] == 1 && legs[1] == 2 && legs[2] <= 4) return "E" + rank;
    throw InvalidAlgebra("diagram is not of finite type");
  }

  void init() {
    const std::size_t n = rank();
    if (n == 0) throw InvalidAlgebra("empty Cartan matrix");
    for (std::size_t i = 0; i < n; ++i) {
      if (cartan_(i, i) != 2) throw InvalidAlgebra("Cartan diagonal must be 2");
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && (cartan_(i, j) > 0 || (cartan_(i, j) == 0) != (cartan_(j, i) == 0)))
          throw InvalidAlgebra("malformed Cartan matrix");
    }

    // Symmetrizer d_j = |alpha_j|^2 / 2 from a(i,j) d_j = a(j,i) d_i.
    std::vector<std::optional<Rational>> d(n);
    d[0] = Rational(1);
    std::vector<std::size_t> stack{0};
    while (!stack.empty()) {
      const auto i = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j || cartan_(i, j) == 0) continue;
        const Rational dj = *d[i] * Rational(cartan_(j, i), cartan_(i, j));
        if (!d[j]) {
          d[j] = dj;
          stack.push_back(j);
        } else if (*d[j] != dj) {
          throw InvalidAlgebra("Cartan matrix is not symmetrizable");
        }
      }
    }
    Rational dmax(0);
    for (const auto& v : d) {
      if (!v) throw InvalidAlgebra("Dynkin diagram is not connected");
      dmax = std::max(dmax, *v);
    }
    std::vector<Rational> dn(n);
    for (std::size_t i = 0; i < n; ++i) dn[i] = *d[i] / dmax;
    simple_lengths_sq_.resize(n);
    for (std::size_t i = 0; i < n; ++i) simple_lengths_sq_[i] = Rational(2) * dn[i];
    gram_.assign(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) gram_[i][j] = Rational(cartan_(i, j)) * dn[j];
    cartan_inverse_ = invert(cartan_);

    generate_positive_roots(dn);

    Rational max_len(0);
    for (const auto& r : positive_roots_) max_len = std::max(max_len, r.length_sq);
    two_lengths_ = false;
    for (auto& r : positive_roots_) {
      r.length = r.length_sq == max_len ? RootLength::Long : RootLength::Short;
      if (r.length == RootLength::Short) two_lengths_ = true;
    }
    simple_long_.resize(n);
    for (std::size_t i = 0; i < n; ++i) simple_long_[i] = simple_lengths_sq_[i] == max_len;

    for (std::size_t k = 0; k < positive_roots_.size(); ++k) {
      root_index_[positive_roots_[k].weight] = {k, true};
      root_index_[-positive_roots_[k].weight] = {k, false};
    }

    const Root* top = &positive_roots_.front();
    for (const auto& r : positive_roots_)
      if (r.height() > top->height()) top = &r;
    highest_root_ = top->weight;
    marks_ = top->simple;

    rho_ = half_sum([](const Root&) { return true; });
    rho_long_ = half_sum([](const Root& r) { return r.length == RootLength::Long; });
    rho_short_ = half_sum([](const Root& r) { return r.length == RootLength::Short; });
  }

  void generate_positive_roots(const std::vector<Rational>& dn) {
    const std::size_t n = rank();
    std::map<std::vector<std::int64_t>, std::size_t> seen;
    std::vector<std::vector<std::int64_t>> simple_coords;
    std::vector<std::vector<int>> words;
    std::queue<std::size_t> todo;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::int64_t> c(n, 0);
      c[i] = 1;
      seen[c] = simple_coords.size();
      simple_coords.push_back(c);
      words.push_back({static_cast<int>(i)});
      todo.push(simple_coords.size() - 1);
    }
    while (!todo.empty()) {
      const auto idx = todo.front();
      todo.pop();
      const auto c = simple_coords[idx];
      for (std::size_t i = 0; i < n; ++i) {
        std::int64_t li = 0;  // <beta, alpha_i-check> = (A^T c)_i
        for (std::size_t k = 0; k < n; ++k) li += c[k] * cartan_(k, i);
        if (li == 0) continue;
        auto next = c;
        next[i] -= li;
        if (std::any_of(next.begin(), next.end(), [](auto v) { return v < 0; })) continue;
        if (seen.count(next)) continue;
        if (simple_coords.size() >= kMaxPositiveRoots)
          throw InvalidAlgebra("root generation did not terminate for " + algebra_.to_string() +
                               " (Cartan matrix is not of finite type)");
        seen[next] = simple_coords.size();
        simple_coords.push_back(next);
        std::vector<int> w{static_cast<int>(i)};
        w.insert(w.end(), words[idx].begin(), words[idx].end());
        w.push_back(static_cast<int>(i));
        words.push_back(std::move(w));
        todo.push(simple_coords.size() - 1);
      }
    }

    positive_roots_.clear();
    for (std::size_t k = 0; k < simple_coords.size(); ++k) {
      Root r;
      r.simple = simple_coords[k];
      r.weight = Weight(n);
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) r.weight[j] += r.simple[i] * cartan_(i, j);
      r.length_sq = Rational(0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r.length_sq += Rational(r.simple[i]) * gram_[i][j] * Rational(r.simple[j]);
      if (r.length_sq <= Rational(0)) throw InvalidAlgebra("non-positive root length; Cartan matrix is not of finite type");
      const Rational half = r.length_sq / Rational(2);
      r.coroot.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        const Rational v = Rational(r.simple[i]) * dn[i] / half;
        if (v.denominator() != 1) throw InvalidAlgebra("non-integral coroot; Cartan matrix is not of finite type");
        r.coroot[i] = v.numerator();
      }
      r.reflection_word = words[k];
      positive_roots_.push_back(std::move(r));
    }
    std::stable_sort(positive_roots_.begin(), positive_roots_.end(), [](const Root& a, const Root& b) {
      if (a.height() != b.height()) return a.height() < b.height();
      return a.simple > b.simple;
    });
  }

  template <class Pred>
  Weight half_sum(Pred pred) const {
    Weight s(rank());
    for (const auto& r : positive_roots_)
      if (pred(r)) s += r.weight;
    for (std::size_t i = 0; i < rank(); ++i) {
      if (s[i] % 2 != 0) throw IdentityViolation("half-sum of positive roots is not integral");
      s[i] /= 2;
    }
    return s;
  }

  AlgebraType algebra_;
  IntMatrix cartan_;
  RationalMatrix cartan_inverse_;
  std::vector<std::vector<Rational>> gram_;  // (alpha_i|alpha_j)
  std::vector<Rational> simple_lengths_sq_;
  std::vector<bool> simple_long_;
  bool two_lengths_ = false;
  std::vector<Root> positive_roots_;
  std::unordered_map<Weight, std::pair<std::size_t, bool>, WeightHash> root_index_;
  Weight highest_root_;
  std::vector<std::int64_t> marks_;
  Weight rho_, rho_long_, rho_short_;
};

inline RootSystem build_root_system(const AlgebraType& algebra) { return RootSystem::build(algebra); }

inline RootLength classify_root(const RootSystem& rs, const Weight& root) { return rs.classify(root); }

}  // namespace orbitfn
