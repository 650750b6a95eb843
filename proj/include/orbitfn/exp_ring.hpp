#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "orbitfn/errors.hpp"
#include "orbitfn/orbit_functions.hpp"
#include "orbitfn/root_system.hpp"
#include "orbitfn/types.hpp"
#include "orbitfn/weyl_group.hpp"

namespace orbitfn {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Exponent in doubled omega-coordinates, so e^{pi i alpha} (= alpha/2)
/// is representable.
using Exponent = boost::container::small_vector<std::int64_t, 8>;

inline Exponent doubled(const Weight& w) {
  Exponent e(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) e[i] = 2 * w[i];
  return e;
}

/// The term order functional: alpha-check coordinates of the sum of the
/// positive co-roots (twice rho-check), which is regular dominant.
inline std::vector<std::int64_t> term_order(const RootSystem& rs) {
  std::vector<std::int64_t> h(rs.rank(), 0);
  for (const auto& r : rs.positive_roots())
    for (std::size_t i = 0; i < rs.rank(); ++i) h[i] += r.coroot[i];
  return h;
}

/// Element of Z[(1/2)P]: finitely many exponentials with integer
/// coefficients, kept sorted from the leading (largest) term down.
///
/// Order: height under term_order(), then lexicographic on coordinates.
/// It is compatible with addition of exponents, which makes long
/// division well defined.
class ExpPolynomial {
 public:
  struct Key {
    std::int64_t height;
    Exponent exponent;
  };
  struct Descending {
    bool operator()(const Key& a, const Key& b) const {
      if (a.height != b.height) return a.height > b.height;
      return std::lexicographical_compare(b.exponent.begin(), b.exponent.end(), a.exponent.begin(), a.exponent.end());
    }
  };
  using Terms = std::map<Key, BigInt, Descending>;

  ExpPolynomial() = default;
  explicit ExpPolynomial(std::vector<std::int64_t> order) : order_(std::move(order)) {}

  static ExpPolynomial zero(const RootSystem& rs) { return ExpPolynomial(term_order(rs)); }
  static ExpPolynomial one(const RootSystem& rs) { return monomial(rs, Weight(rs.rank()), 1); }
  static ExpPolynomial monomial(const RootSystem& rs, const Weight& w, const BigInt& c) {
    ExpPolynomial p = zero(rs);
    p.add(w, c);
    return p;
  }

  std::size_t rank() const { return order_.size(); }
  const std::vector<std::int64_t>& order() const { return order_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// True when some exponent lies outside P (odd doubled coordinate).
  bool half_lattice() const {
    for (const auto& [k, c] : terms_)
      for (auto v : k.exponent)
        if (v % 2 != 0) return true;
    return false;
  }

  void add_doubled(const Exponent& e, const BigInt& c) {
    if (e.size() != rank()) throw DimensionMismatch("exponent rank mismatch");
    if (c == 0) return;
    Key k{height(e), e};
    auto it = terms_.find(k);
    if (it == terms_.end()) {
      terms_.emplace(std::move(k), c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  void add(const Weight& w, const BigInt& c) { add_doubled(doubled(w), c); }

  BigInt coefficient_doubled(const Exponent& e) const {
    const auto it = terms_.find(Key{height(e), e});
    return it == terms_.end() ? BigInt(0) : it->second;
  }
  BigInt coefficient(const Weight& w) const { return coefficient_doubled(doubled(w)); }
  BigInt constant_term() const { return coefficient_doubled(Exponent(rank(), 0)); }

  const Key& leading_key() const {
    if (is_zero()) throw Error("leading term of zero polynomial");
    return terms_.begin()->first;
  }
  const BigInt& leading_coefficient() const {
    if (is_zero()) throw Error("leading term of zero polynomial");
    return terms_.begin()->second;
  }

  /// Sum of coefficients: the value at x = 0.
  BigInt coefficient_sum() const {
    BigInt s = 0;
    for (const auto& [k, c] : terms_) s += c;
    return s;
  }

  ExpPolynomial& operator+=(const ExpPolynomial& o) {
    check_compatible(o);
    for (const auto& [k, c] : o.terms_) add_doubled(k.exponent, c);
    return *this;
  }
  ExpPolynomial& operator-=(const ExpPolynomial& o) {
    check_compatible(o);
    for (const auto& [k, c] : o.terms_) add_doubled(k.exponent, -c);
    return *this;
  }
  ExpPolynomial& operator*=(const BigInt& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [k, c] : terms_) c *= s;
    return *this;
  }
  friend ExpPolynomial operator+(ExpPolynomial a, const ExpPolynomial& b) { return a += b; }
  friend ExpPolynomial operator-(ExpPolynomial a, const ExpPolynomial& b) { return a -= b; }
  friend ExpPolynomial operator-(ExpPolynomial a) { return a *= BigInt(-1); }
  friend ExpPolynomial operator*(ExpPolynomial a, const BigInt& s) { return a *= s; }
  friend ExpPolynomial operator*(const BigInt& s, ExpPolynomial a) { return a *= s; }

  /// Dense product over all term pairs.
  friend ExpPolynomial operator*(const ExpPolynomial& a, const ExpPolynomial& b) {
    a.check_compatible(b);
    ExpPolynomial p(a.order_);
    Exponent e(a.rank());
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ka.exponent[i] + kb.exponent[i];
        p.add_doubled(e, ca * cb);
      }
    return p;
  }
  ExpPolynomial& operator*=(const ExpPolynomial& o) { return *this = *this * o; }

  /// p times e^{shift} (doubled coordinates).
  ExpPolynomial shifted(const Exponent& shift, const BigInt& c) const {
    ExpPolynomial p(order_);
    Exponent e(rank());
    for (const auto& [k, v] : terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = k.exponent[i] + shift[i];
      p.terms_.emplace(Key{height(e), e}, v * c);
    }
    return p;
  }

  friend bool operator==(const ExpPolynomial& a, const ExpPolynomial& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    auto ia = a.terms_.begin();
    for (auto ib = b.terms_.begin(); ib != b.terms_.end(); ++ia, ++ib)
      if (ia->first.exponent != ib->first.exponent || ia->second != ib->second) return false;
    return true;
  }

  /// e^mu -> e^{-mu}; coefficients are real integers.
  ExpPolynomial conjugate() const {
    ExpPolynomial p(order_);
    for (const auto& [k, c] : terms_) {
      Exponent e = k.exponent;
      for (auto& v : e) v = -v;
      p.terms_.emplace(Key{height(e), e}, c);
    }
    return p;
  }

  /// Applies a linear map on omega-coordinates to every exponent.
  ExpPolynomial transform(const IntMatrix& m) const {
    if (m.size() != rank()) throw DimensionMismatch("transform: rank mismatch");
    ExpPolynomial p(order_);
    for (const auto& [k, c] : terms_) {
      const auto v = m.apply(std::span<const std::int64_t>(k.exponent.data(), k.exponent.size()));
      p.add_doubled(Exponent(v.begin(), v.end()), c);
    }
    return p;
  }

  /// Numeric value at x: sum c e^{2 pi i <mu, x>}.
  std::complex<double> evaluate(const Point& x) const {
    if (x.size() != rank()) throw DimensionMismatch("evaluate: point rank mismatch");
    std::complex<double> s = 0.0;
    for (const auto& [k, c] : terms_) {
      double d = 0.0;
      for (std::size_t i = 0; i < rank(); ++i) d += static_cast<double>(k.exponent[i]) * x[i];
      s += c.convert_to<double>() * unit_phase(0.5 * d);
    }
    return s;
  }

  /// One "coefficient @ (w_1,...,w_n)" line per term, leading term first.
  /// Half-integral coordinates print as k/2.
  std::string to_text() const {
    std::ostringstream os;
    for (const auto& [k, c] : terms_) {
      os << c << " @ (";
      for (std::size_t i = 0; i < rank(); ++i) {
        if (i) os << ',';
        if (k.exponent[i] % 2 == 0)
          os << k.exponent[i] / 2;
        else
          os << k.exponent[i] << "/2";
      }
      os << ")\n";
    }
    return os.str();
  }

  /// Inverse of to_text.
  static ExpPolynomial parse_text(std::vector<std::int64_t> order, const std::string& text) {
    ExpPolynomial p(std::move(order));
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      const auto at = line.find('@');
      const auto open = line.find('(', at), close = line.find(')', at);
      if (at == std::string::npos || open == std::string::npos || close == std::string::npos)
        throw Error("malformed polynomial line: " + line);
      std::string coef = line.substr(0, at);
      coef.erase(std::remove_if(coef.begin(), coef.end(), [](unsigned char ch) { return std::isspace(ch); }), coef.end());
      Exponent e;
      std::istringstream cs(line.substr(open + 1, close - open - 1));
      std::string item;
      while (std::getline(cs, item, ',')) {
        const auto slash = item.find('/');
        if (slash == std::string::npos)
          e.push_back(2 * std::stoll(item));
        else
          e.push_back(std::stoll(item.substr(0, slash)));
      }
      p.add_doubled(e, BigInt(coef));
    }
    return p;
  }

 private:
  std::int64_t height(const Exponent& e) const {
    std::int64_t h = 0;
    for (std::size_t i = 0; i < e.size(); ++i) h += e[i] * order_[i];
    return h;
  }
  void check_compatible(const ExpPolynomial& o) const {
    if (o.order_ != order_) throw DimensionMismatch("polynomials from different root systems");
  }

  std::vector<std::int64_t> order_;
  Terms terms_;
};

/// Exact division failed; carries what was left when it stopped.
class NonExactDivision : public Error {
 public:
  NonExactDivision(const std::string& what, ExpPolynomial residual) : Error(what), residual_(std::move(residual)) {}
  const ExpPolynomial& residual() const { return residual_; }

 private:
  ExpPolynomial residual_;
};

/// Long division peeling the leading term of the remainder. Quotient
/// exponents must stay inside the box allowed by the Newton polytopes of
/// f and g, which bounds the loop.
inline ExpPolynomial divide_exact(const ExpPolynomial& f, const ExpPolynomial& g) {
  if (g.is_zero()) throw Error("division by the zero polynomial");
  if (f.order() != g.order()) throw DimensionMismatch("polynomials from different root systems");
  const std::size_t n = f.rank();
  ExpPolynomial q(f.order());
  if (f.is_zero()) return q;
  const auto bounds = [n](const ExpPolynomial& p) {
    std::vector<std::int64_t> lo(n, INT64_MAX), hi(n, INT64_MIN);
    for (const auto& [k, c] : p.terms())
      for (std::size_t i = 0; i < n; ++i) {
        lo[i] = std::min(lo[i], k.exponent[i]);
        hi[i] = std::max(hi[i], k.exponent[i]);
      }
    return std::pair{lo, hi};
  };
  const auto [flo, fhi] = bounds(f);
  const auto [glo, ghi] = bounds(g);
  const Exponent lead_g = g.leading_key().exponent;
  const BigInt lead_c = g.leading_coefficient();

  ExpPolynomial rem = f;
  Exponent e(n);
  while (!rem.is_zero()) {
    const auto& top = rem.leading_key().exponent;
    for (std::size_t i = 0; i < n; ++i) {
      e[i] = top[i] - lead_g[i];
      if (e[i] < flo[i] - glo[i] || e[i] > fhi[i] - ghi[i]) throw NonExactDivision("division is not exact", rem);
    }
    BigInt c, r;
    boost::multiprecision::divide_qr(rem.leading_coefficient(), lead_c, c, r);
    if (r != 0) throw NonExactDivision("leading coefficient not divisible", rem);
    q.add_doubled(e, c);
    rem -= g.shifted(e, c);
  }
  return q;
}

/// Selects kappa in {id, sigma, sigma_L, sigma_S}.
enum class SkewClass { Zero, Full, Long, Short };

inline const char* to_string(SkewClass t) {
  switch (t) {
    case SkewClass::Zero: return "zero";
    case SkewClass::Full: return "full";
    case SkewClass::Long: return "long";
    case SkewClass::Short: return "short";
  }
  return "?";
}

inline SignKind sign_kind(SkewClass t) {
  switch (t) {
    case SkewClass::Zero: return SignKind::Id;
    case SkewClass::Full: return SignKind::Sigma;
    case SkewClass::Long: return SignKind::SigmaL;
    case SkewClass::Short: return SignKind::SigmaS;
  }
  return SignKind::Id;
}

inline OrbitFamily family_of(SkewClass t) {
  switch (t) {
    case SkewClass::Zero: return OrbitFamily::C;
    case SkewClass::Full: return OrbitFamily::S;
    case SkewClass::Long: return OrbitFamily::SL;
    case SkewClass::Short: return OrbitFamily::SS;
  }
  return OrbitFamily::C;
}

inline SkewClass skew_class_of(OrbitFamily f) {
  switch (f) {
    case OrbitFamily::C: return SkewClass::Zero;
    case OrbitFamily::S: return SkewClass::Full;
    case OrbitFamily::SL: return SkewClass::Long;
    case OrbitFamily::SS: return SkewClass::Short;
  }
  return SkewClass::Zero;
}

/// Class of a product: kappa multiplies, i.e. the (long, short) sign bits add mod 2.
inline SkewClass product_class(SkewClass a, SkewClass b) {
  const auto bits = [](SkewClass t) {
    switch (t) {
      case SkewClass::Zero: return 0;
      case SkewClass::Long: return 1;
      case SkewClass::Short: return 2;
      case SkewClass::Full: return 3;
    }
    return 0;
  };
  switch (bits(a) ^ bits(b)) {
    case 1: return SkewClass::Long;
    case 2: return SkewClass::Short;
    case 3: return SkewClass::Full;
    default: return SkewClass::Zero;
  }
}

inline Weight skew_rho(const RootSystem& rs, SkewClass t) { return family_rho(rs, family_of(t)); }

/// The exact exponential polynomial of an orbit function.
inline ExpPolynomial to_polynomial(const OrbitFunction& f) {
  ExpPolynomial p = ExpPolynomial::zero(f.root_system());
  for (const auto& t : f.terms()) p.add(t.weight, t.coefficient);
  return p;
}

inline ExpPolynomial orbit_sum(const RootSystem& rs, OrbitFamily family, const Weight& lambda,
                               std::uint64_t max_orbit = kDefaultEnumerationCap) {
  return to_polynomial(OrbitFunction(rs, family, lambda, max_orbit));
}

/// Sum of kappa(w) e^{w mu} over the given elements.
inline ExpPolynomial alternating_sum(const RootSystem& rs, const std::vector<WeylElement>& elements, SignKind kind,
                                     const Weight& mu) {
  ExpPolynomial p = ExpPolynomial::zero(rs);
  for (const auto& w : elements) p.add(w.apply(mu), w.sign(kind));
  return p;
}

inline std::vector<Root> skew_positive_roots(const RootSystem& rs, SkewClass t) {
  switch (t) {
    case SkewClass::Zero: return {};
    case SkewClass::Full: return rs.positive_roots();
    case SkewClass::Long:
    case SkewClass::Short:
      if (!rs.has_two_lengths()) throw NoTwoLengths(rs.algebra().to_string() + " has roots of a single length");
      return rs.positive_roots(t == SkewClass::Long ? RootLength::Long : RootLength::Short);
  }
  return {};
}

/// |W^T|, which is also the number of terms of D^T, from the type of Delta^T.
inline std::uint64_t skew_group_order(const RootSystem& rs, SkewClass t) {
  switch (t) {
    case SkewClass::Zero: return 1;
    case SkewClass::Full: return rs.weyl_order();
    case SkewClass::Long:
    case SkewClass::Short: {
      const auto sub = rs.subsystem(t == SkewClass::Long ? RootLength::Long : RootLength::Short);
      std::uint64_t order = 1;
      for (const auto& c : RootSystem::identify_components(sub.cartan)) order *= weyl_group_order(c);
      return order;
    }
  }
  return 1;
}

/// The binomials e^{alpha/2} - e^{-alpha/2}, alpha in Delta^T_+.
inline std::vector<ExpPolynomial> denominator_factors(const RootSystem& rs, SkewClass t) {
  std::vector<ExpPolynomial> out;
  for (const auto& r : skew_positive_roots(rs, t)) {
    ExpPolynomial b = ExpPolynomial::zero(rs);
    Exponent e(r.weight.begin(), r.weight.end());
    b.add_doubled(e, 1);
    for (auto& v : e) v = -v;
    b.add_doubled(e, -1);
    out.push_back(std::move(b));
  }
  return out;
}

/// Product of the binomials of class T. Refuses when D^T would have more
/// than max_terms terms.
inline ExpPolynomial denominator_product(const RootSystem& rs, SkewClass t,
                                         std::uint64_t max_terms = kDefaultEnumerationCap) {
  if (skew_group_order(rs, t) > max_terms)
    throw GroupTooLarge("D^T has " + std::to_string(skew_group_order(rs, t)) + " terms, above the cap " +
                        std::to_string(max_terms));
  ExpPolynomial d = ExpPolynomial::one(rs);
  for (const auto& b : denominator_factors(rs, t)) d *= b;
  return d;
}

/// f / D^T, one binomial at a time. Same result as dividing by the
/// expanded product (exact iff that is), at a fraction of the cost and
/// without ever forming D^T.
inline ExpPolynomial divide_by_denominator(const RootSystem& rs, const ExpPolynomial& f, SkewClass t) {
  ExpPolynomial q = f;
  for (const auto& b : denominator_factors(rs, t)) q = divide_exact(q, b);
  return q;
}

/// f * D^T, one binomial at a time.
inline ExpPolynomial multiply_by_denominator(const RootSystem& rs, const ExpPolynomial& f, SkewClass t) {
  ExpPolynomial p = f;
  for (const auto& b : denominator_factors(rs, t)) p *= b;
  return p;
}

/// Sum of sigma^T(w) e^{w rho^T} over W^T (enumerates W^T).
inline ExpPolynomial denominator_sum(const RootSystem& rs, SkewClass t, std::uint64_t cap = kDefaultEnumerationCap) {
  switch (t) {
    case SkewClass::Zero: return ExpPolynomial::one(rs);
    case SkewClass::Full: return alternating_sum(rs, enumerate_group(rs, cap), SignKind::Sigma, rs.rho());
    case SkewClass::Long:
    case SkewClass::Short: {
      const auto len = t == SkewClass::Long ? RootLength::Long : RootLength::Short;
      return alternating_sum(rs, subgroup(rs, len, cap), sign_kind(t), rs.rho(len));
    }
  }
  return ExpPolynomial::one(rs);
}

/// D^T computed both ways; throws IdentityViolation if they differ.
inline ExpPolynomial denominator(const RootSystem& rs, SkewClass t, std::uint64_t cap = kDefaultEnumerationCap) {
  const auto sum = denominator_sum(rs, t, cap);
  auto prod = denominator_product(rs, t, cap);
  if (!(prod == sum))
    throw IdentityViolation(std::string("denominator identity fails for class ") + to_string(t) + " on " +
                            rs.algebra().to_string());
  return prod;
}

inline ExpPolynomial act(const WeylElement& w, const ExpPolynomial& f) { return f.transform(w.weight_action); }

/// True iff r_i f = kappa(r_i) f for every simple reflection.
inline bool project_skew(const RootSystem& rs, const ExpPolynomial& f, SkewClass t) {
  const SignKind k = sign_kind(t);
  for (std::size_t i = 0; i < rs.rank(); ++i) {
    const auto r = simple_reflection(rs, i);
    auto image = act(r, f);
    if (r.sign(k) == -1) image *= BigInt(-1);
    if (!(image == f)) return false;
  }
  return true;
}

/// chi^T_lambda: the alternating orbit sum of lambda + rho^T taken once
/// per orbit point (the W-sum divided by the stabilizer order), divided
/// exactly by D^T. chi^T_0 = 1 and the coefficients are integers; for the
/// full class this is S_{lambda+rho} / D.
inline ExpPolynomial character(const RootSystem& rs, SkewClass t, const Weight& lambda,
                               std::uint64_t max_orbit = kDefaultEnumerationCap) {
  if (t == SkewClass::Zero) throw Error("character needs class full, long or short");
  const OrbitFunction f(rs, family_of(t), lambda, max_orbit);
  ExpPolynomial p = ExpPolynomial::zero(rs);
  const auto stab = static_cast<std::int64_t>(f.stabilizer_order());
  for (const auto& term : f.terms()) p.add(term.weight, term.coefficient / stab);
  try {
    return divide_by_denominator(rs, p, t);
  } catch (const NonExactDivision& e) {
    throw IdentityViolation(std::string("character quotient is not exact: ") + e.what());
  }
}

/// One step of a greedy decomposition into orbit functions of a family.
struct FamilyComponent {
  Weight lambda;          ///< family label (effective weight minus rho^T)
  Weight effective;       ///< dominant leading weight
  BigInt leading;         ///< coefficient of e^{effective} that was peeled
  std::uint64_t stabilizer_order = 1;

  /// Coefficient in front of orbit_sum(family, lambda).
  BigRational coefficient() const { return BigRational(leading, BigInt(stabilizer_order)); }
};

/// Writes a T-skew polynomial as a combination of orbit sums of the
/// family of T by peeling the leading term, which is always dominant.
inline std::vector<FamilyComponent> decompose_components(const RootSystem& rs, const ExpPolynomial& f, SkewClass t,
                                                         std::uint64_t max_orbit = kDefaultEnumerationCap) {
  if (!project_skew(rs, f, t))
    throw NonInvariant(std::string("polynomial is not skew-invariant for class ") + to_string(t));
  const auto family = family_of(t);
  const Weight rho = skew_rho(rs, t);
  std::vector<FamilyComponent> out;
  ExpPolynomial rem = f;
  while (!rem.is_zero()) {
    const auto& e = rem.leading_key().exponent;
    Weight nu(rs.rank());
    for (std::size_t i = 0; i < rs.rank(); ++i) {
      if (e[i] % 2 != 0) throw NonInvariant("exponent outside the weight lattice");
      nu[i] = e[i] / 2;
    }
    const Weight lambda = nu - rho;
    if (!lambda.is_dominant()) throw NonInvariant("leading weight " + nu.to_string() + " is not of the family");
    const OrbitFunction g(rs, family, lambda, max_orbit);
    if (g.identically_zero()) throw NonInvariant("leading weight lies on a wall where the family vanishes");
    const BigInt c = rem.leading_coefficient();
    out.push_back({lambda, nu, c, g.stabilizer_order()});
    ExpPolynomial sub = ExpPolynomial::zero(rs);
    const auto stab = static_cast<std::int64_t>(g.stabilizer_order());
    for (const auto& term : g.terms()) sub.add(term.weight, c * (term.coefficient / stab));
    rem -= sub;
  }
  return out;
}

/// f = sum c_lambda orbit_sum(family of T, lambda).
inline std::map<Weight, BigRational> decompose_into_family(const RootSystem& rs, const ExpPolynomial& f, SkewClass t,
                                                           std::uint64_t max_orbit = kDefaultEnumerationCap) {
  std::map<Weight, BigRational> out;
  for (const auto& c : decompose_components(rs, f, t, max_orbit)) out[c.lambda] = c.coefficient();
  return out;
}

/// f = sum c_lambda C_lambda over dominant lambda.
inline std::map<Weight, BigRational> decompose_into_C(const RootSystem& rs, const ExpPolynomial& f,
                                                      std::uint64_t max_orbit = kDefaultEnumerationCap) {
  return decompose_into_family(rs, f, SkewClass::Zero, max_orbit);
}

/// f = sum m_mu (sum of e^nu over the orbit of mu), integer coefficients.
inline std::map<Weight, BigInt> decompose_into_orbit_sums(const RootSystem& rs, const ExpPolynomial& f,
                                                          std::uint64_t max_orbit = kDefaultEnumerationCap) {
  std::map<Weight, BigInt> out;
  for (const auto& c : decompose_components(rs, f, SkewClass::Zero, max_orbit)) out[c.lambda] = c.leading;
  return out;
}

/// S^T_{lambda+rho^T} split over the complement V of W^T: one alternating
/// W^T-orbit sum per v in V, with weight v(lambda + rho^T).
inline std::vector<ExpPolynomial> factor_over_complement(const RootSystem& rs, RootLength t, const Weight& lambda,
                                                         std::uint64_t cap = kDefaultEnumerationCap) {
  if (!lambda.is_dominant()) throw InvalidWeight("lambda " + lambda.to_string() + " is not dominant");
  const auto fact = factorize(rs, t, cap);
  const SignKind k = t == RootLength::Long ? SignKind::SigmaL : SignKind::SigmaS;
  const Weight mu = lambda + rs.rho(t);
  std::vector<ExpPolynomial> out;
  for (const auto& v : fact.complement.elements())
    out.push_back(alternating_sum(rs, fact.normal_subgroup.elements(), k, v.apply(mu)));
  return out;
}

inline std::vector<ExpPolynomial> factor_SL_over_VS(const RootSystem& rs, const Weight& lambda,
                                                    std::uint64_t cap = kDefaultEnumerationCap) {
  return factor_over_complement(rs, RootLength::Long, lambda, cap);
}

/// Constant term of f * conjugate(g) = sum over mu of f_mu g_mu, by one
/// merge pass over the two sorted term lists (no product is formed).
inline BigInt constant_term_of_product_with_conjugate(const ExpPolynomial& f, const ExpPolynomial& g) {
  if (f.order() != g.order()) throw DimensionMismatch("polynomials from different root systems");
  BigInt s = 0;
  const ExpPolynomial::Descending before;
  auto a = f.terms().begin(), b = g.terms().begin();
  while (a != f.terms().end() && b != g.terms().end()) {
    if (before(a->first, b->first)) {
      ++a;
    } else if (before(b->first, a->first)) {
      ++b;
    } else {
      s += a->second * b->second;
      ++a;
      ++b;
    }
  }
  return s;
}

}  // namespace orbitfn
