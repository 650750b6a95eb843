#pragma once

#include <cstdint>
#include <deque>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "orbitfn/errors.hpp"
#include "orbitfn/root_system.hpp"
#include "orbitfn/types.hpp"

namespace orbitfn {

/// Default cap on |W| for anything that enumerates a whole group.
inline constexpr std::uint64_t kDefaultEnumerationCap = 2'000'000;

/// The four homomorphisms W -> {+1,-1}: trivial, determinant, and the two
/// that see only long (SigmaL) or only short (SigmaS) reflections.
enum class SignKind { Id, Sigma, SigmaL, SigmaS };

inline const char* to_string(SignKind k) {
  switch (k) {
    case SignKind::Id: return "id";
    case SignKind::Sigma: return "sigma";
    case SignKind::SigmaL: return "sigma_L";
    case SignKind::SigmaS: return "sigma_S";
  }
  return "?";
}

/// Values of all four sign homomorphisms on one group element.
struct SignValues {
  int id = 1;
  int sigma = 1;
  int long_sign = 1;
  int short_sign = 1;

  int operator[](SignKind k) const {
    switch (k) {
      case SignKind::Id: return id;
      case SignKind::Sigma: return sigma;
      case SignKind::SigmaL: return long_sign;
      case SignKind::SigmaS: return short_sign;
    }
    return 1;
  }

  SignValues& operator*=(const SignValues& o) {
    id *= o.id;
    sigma *= o.sigma;
    long_sign *= o.long_sign;
    short_sign *= o.short_sign;
    return *this;
  }
  friend SignValues operator*(SignValues a, const SignValues& b) { return a *= b; }
  friend bool operator==(const SignValues&, const SignValues&) = default;
};

/// Sign values of a reflection in a root of the given length class. On
/// simply-laced systems every root counts as long, so sigma_L = sigma and
/// sigma_S is trivial.
inline SignValues reflection_signs(RootLength length) {
  const bool lng = length == RootLength::Long;
  return {1, -1, lng ? -1 : 1, lng ? 1 : -1};
}

inline SignValues generator_signs(const RootSystem& rs, std::size_t i) {
  return reflection_signs(rs.simple_root_length(i));
}

/// Coxeter exponent m_ij of the relation (r_i r_j)^{m_ij} = 1.
inline int coxeter_exponent(const RootSystem& rs, std::size_t i, std::size_t j) {
  if (i == j) return 1;
  switch (rs.cartan()(i, j) * rs.cartan()(j, i)) {
    case 0: return 2;
    case 1: return 3;
    case 2: return 4;
    case 3: return 6;
    default: throw InvalidAlgebra("Cartan product outside finite type");
  }
}

/// A homomorphism W -> {+1,-1} given by its values on the simple reflections.
class SignHomomorphism {
 public:
  SignHomomorphism(const RootSystem& rs, SignKind kind) : kind_(kind) {
    for (std::size_t i = 0; i < rs.rank(); ++i) table_.push_back(generator_signs(rs, i)[kind]);
    check_relations(rs);
  }

  /// Arbitrary generator table; throws when some odd-bond relation
  /// (sigma_i sigma_j)^{m_ij} = 1 fails.
  SignHomomorphism(const RootSystem& rs, std::vector<int> table) : kind_(SignKind::Id), table_(std::move(table)) {
    if (table_.size() != rs.rank()) throw DimensionMismatch("sign table size");
    for (int s : table_)
      if (s != 1 && s != -1) throw Error("sign table entries must be +1 or -1");
    check_relations(rs);
  }

  SignKind kind() const { return kind_; }
  const std::vector<int>& table() const { return table_; }

  int of_word(const std::vector<int>& word) const {
    int s = 1;
    for (int i : word) s *= table_[static_cast<std::size_t>(i)];
    return s;
  }

 private:
  void check_relations(const RootSystem& rs) const {
    for (std::size_t i = 0; i < rs.rank(); ++i)
      for (std::size_t j = i + 1; j < rs.rank(); ++j) {
        const int m = coxeter_exponent(rs, i, j);
        const int prod = table_[i] * table_[j];
        if (m % 2 == 1 && prod != 1)
          throw Error("sign table violates (r_" + std::to_string(i + 1) + " r_" + std::to_string(j + 1) + ")^" +
                      std::to_string(m) + " = 1");
      }
  }

  SignKind kind_;
  std::vector<int> table_;
};

/// A Weyl group element, identified by its action on omega-coordinates.
///
/// point_action is the contragredient action on alpha-check coordinates
/// (the inverse transpose), so <w lambda, w x> = <lambda, x>.
struct WeylElement {
  IntMatrix weight_action;
  IntMatrix point_action;
  std::vector<int> word;
  SignValues signs;

  Weight apply(const Weight& lambda) const { return weight_action.apply(lambda); }
  Point apply(const Point& x) const { return point_action.apply(x); }
  int sign(SignKind k) const { return signs[k]; }
  bool is_identity() const { return weight_action == IntMatrix::identity(weight_action.size()); }

  WeylElement inverse() const {
    WeylElement inv;
    inv.weight_action = point_action.transpose();
    inv.point_action = weight_action.transpose();
    inv.word.assign(word.rbegin(), word.rend());
    inv.signs = signs;
    return inv;
  }

  friend WeylElement operator*(const WeylElement& a, const WeylElement& b) {
    WeylElement c;
    c.weight_action = a.weight_action * b.weight_action;
    c.point_action = a.point_action * b.point_action;
    c.word = a.word;
    c.word.insert(c.word.end(), b.word.begin(), b.word.end());
    c.signs = a.signs * b.signs;
    return c;
  }
};

inline int sign(const SignHomomorphism& h, const WeylElement& w) { return h.of_word(w.word); }

inline WeylElement identity_element(const RootSystem& rs) {
  return {IntMatrix::identity(rs.rank()), IntMatrix::identity(rs.rank()), {}, {}};
}

inline WeylElement simple_reflection(const RootSystem& rs, std::size_t i) {
  const std::size_t n = rs.rank();
  WeylElement r = identity_element(rs);
  // r_i(lambda) = lambda - lambda_i alpha_i: column i picks up -alpha_i.
  for (std::size_t j = 0; j < n; ++j) r.weight_action(j, i) -= rs.cartan()(i, j);
  r.point_action = r.weight_action.transpose();
  r.word = {static_cast<int>(i)};
  r.signs = generator_signs(rs, i);
  return r;
}

inline WeylElement element_from_word(const RootSystem& rs, const std::vector<int>& word) {
  WeylElement w = identity_element(rs);
  for (int i : word) w = w * simple_reflection(rs, static_cast<std::size_t>(i));
  return w;
}

/// Reflection in an arbitrary root, built from the word recorded during
/// root generation.
inline WeylElement reflection_element(const RootSystem& rs, const Root& beta) {
  return element_from_word(rs, beta.reflection_word);
}

/// Elements with a matrix index for membership tests.
class ElementSet {
 public:
  bool insert(WeylElement w) {
    auto [it, fresh] = index_.try_emplace(w.weight_action, elements_.size());
    if (fresh) elements_.push_back(std::move(w));
    return fresh;
  }
  bool contains(const IntMatrix& m) const { return index_.count(m) != 0; }
  bool contains(const WeylElement& w) const { return contains(w.weight_action); }
  std::optional<std::size_t> find(const IntMatrix& m) const {
    const auto it = index_.find(m);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t size() const { return elements_.size(); }
  const std::vector<WeylElement>& elements() const { return elements_; }
  const WeylElement& operator[](std::size_t i) const { return elements_[i]; }

 private:
  std::vector<WeylElement> elements_;
  std::unordered_map<IntMatrix, std::size_t, IntMatrixHash> index_;
};

/// Subgroup generated by the given elements, by breadth-first closure under
/// right multiplication. Elements generated from simple reflections carry
/// reduced words.
inline ElementSet generate_subgroup(const RootSystem& rs, const std::vector<WeylElement>& generators,
                                    std::uint64_t cap = kDefaultEnumerationCap) {
  ElementSet set;
  set.insert(identity_element(rs));
  for (std::size_t k = 0; k < set.size(); ++k) {
    for (const auto& g : generators) {
      if (set.insert(set[k] * g) && set.size() > cap)
        throw GroupTooLarge("subgroup closure exceeded " + std::to_string(cap) + " elements");
    }
  }
  return set;
}

inline void check_enumeration_cap(const RootSystem& rs, std::uint64_t cap) {
  if (rs.weyl_order() > cap)
    throw GroupTooLarge("|W(" + rs.algebra().to_string() + ")| = " + std::to_string(rs.weyl_order()) +
                        " exceeds the enumeration cap " + std::to_string(cap) + "; use orbit-based APIs");
}

inline ElementSet enumerate_group_set(const RootSystem& rs, std::uint64_t cap = kDefaultEnumerationCap) {
  check_enumeration_cap(rs, cap);
  std::vector<WeylElement> gens;
  for (std::size_t i = 0; i < rs.rank(); ++i) gens.push_back(simple_reflection(rs, i));
  return generate_subgroup(rs, gens, cap);
}

/// All |W| elements, in breadth-first (length) order.
inline std::vector<WeylElement> enumerate_group(const RootSystem& rs, std::uint64_t cap = kDefaultEnumerationCap) {
  return enumerate_group_set(rs, cap).elements();
}

/// W^T: generated by reflections in all roots of length class T.
inline ElementSet subgroup_set(const RootSystem& rs, RootLength t, std::uint64_t cap = kDefaultEnumerationCap) {
  if (!rs.has_two_lengths()) throw NoTwoLengths(rs.algebra().to_string() + " has roots of a single length");
  check_enumeration_cap(rs, cap);
  std::vector<WeylElement> gens;
  for (const auto& r : rs.positive_roots(t)) gens.push_back(reflection_element(rs, r));
  return generate_subgroup(rs, gens, cap);
}

inline std::vector<WeylElement> subgroup(const RootSystem& rs, RootLength t, std::uint64_t cap = kDefaultEnumerationCap) {
  return subgroup_set(rs, t, cap).elements();
}

/// True iff r_i W^T r_i = W^T for every simple reflection r_i.
inline bool verify_normality(const RootSystem& rs, RootLength t, std::uint64_t cap = kDefaultEnumerationCap) {
  const auto sub = subgroup_set(rs, t, cap);
  for (std::size_t i = 0; i < rs.rank(); ++i) {
    const auto r = simple_reflection(rs, i);
    for (const auto& u : sub.elements())
      if (!sub.contains((r * u * r).weight_action)) return false;
  }
  return true;
}

/// Moves lambda into the dominant chamber by simple reflections.
inline Weight dominant_representative(const RootSystem& rs, Weight lambda) {
  for (;;) {
    std::size_t i = 0;
    while (i < rs.rank() && lambda[i] >= 0) ++i;
    if (i == rs.rank()) return lambda;
    lambda = rs.reflect(i, lambda);
  }
}

/// A Weyl group orbit, computed by reflection closure.
struct Orbit {
  Weight seed;                     ///< the unique dominant element
  std::vector<Weight> elements;    ///< elements[0] == seed
  std::vector<SignValues> signs;   ///< signs of some w with w(seed) = elements[k]
  std::uint64_t stabilizer_order = 1;
  std::vector<std::size_t> stabilizer_generators;  ///< simple i with seed_i = 0

  std::size_t size() const { return elements.size(); }

  /// Whether kind is trivial on the stabilizer of seed (otherwise the
  /// alternating orbit sum vanishes identically).
  bool sign_trivial_on_stabilizer(const RootSystem& rs, SignKind kind) const {
    for (auto i : stabilizer_generators)
      if (generator_signs(rs, i)[kind] != 1) return false;
    return true;
  }
};

/// |W lambda| from the parabolic stabilizer of the dominant representative,
/// without enumerating anything.
inline std::uint64_t orbit_size(const RootSystem& rs, const Weight& lambda) {
  const Weight d = dominant_representative(rs, lambda);
  std::vector<std::size_t> zeros;
  for (std::size_t i = 0; i < rs.rank(); ++i)
    if (d[i] == 0) zeros.push_back(i);
  return rs.weyl_order() / rs.parabolic_order(zeros);
}

/// Orbit of lambda. The size is known in advance from the parabolic
/// stabilizer, so oversized orbits are refused before any work is done.
inline Orbit orbit(const RootSystem& rs, const Weight& lambda, std::uint64_t max_size = kDefaultEnumerationCap) {
  if (lambda.size() != rs.rank()) throw DimensionMismatch("orbit: weight rank mismatch");
  Orbit o;
  o.seed = dominant_representative(rs, lambda);
  for (std::size_t i = 0; i < rs.rank(); ++i)
    if (o.seed[i] == 0) o.stabilizer_generators.push_back(i);
  const std::uint64_t stab = rs.parabolic_order(o.stabilizer_generators);
  if (rs.weyl_order() / stab > max_size)
    throw GroupTooLarge("orbit of " + lambda.to_string() + " has " + std::to_string(rs.weyl_order() / stab) +
                        " points, above the cap " + std::to_string(max_size));
  o.elements.reserve(static_cast<std::size_t>(rs.weyl_order() / stab));
  o.signs.reserve(o.elements.capacity());
  std::unordered_map<Weight, std::size_t, WeightHash> seen;
  o.elements.push_back(o.seed);
  o.signs.push_back({});
  seen.emplace(o.seed, 0);
  for (std::size_t k = 0; k < o.elements.size(); ++k) {
    for (std::size_t i = 0; i < rs.rank(); ++i) {
      if (o.elements[k][i] == 0) continue;
      Weight next = rs.reflect(i, o.elements[k]);
      if (seen.count(next)) continue;
      seen.emplace(next, o.elements.size());
      o.signs.push_back(generator_signs(rs, i) * o.signs[k]);
      o.elements.push_back(std::move(next));
    }
  }
  const auto order = rs.weyl_order();
  if (order % o.elements.size() != 0)
    throw IdentityViolation("orbit size " + std::to_string(o.elements.size()) + " does not divide |W|");
  o.stabilizer_order = order / o.elements.size();
  if (o.stabilizer_order != stab) throw IdentityViolation("orbit size disagrees with the parabolic stabilizer");
  return o;
}

/// W = V . W^T with W^T normal, V a complement inside W^{other(T)}.
/// Every w factors uniquely as w = u v with u in W^T, v in V.
struct Factorization {
  RootLength normal_length = RootLength::Long;
  ElementSet normal_subgroup;        ///< W^T
  ElementSet complement;             ///< V
  std::vector<Root> generator_roots; ///< V is generated by reflections in these roots
  /// w (by weight matrix) -> (index of u in normal_subgroup, index of v in complement)
  std::unordered_map<IntMatrix, std::pair<std::size_t, std::size_t>, IntMatrixHash> coset_map;
};

namespace detail {

inline std::optional<Factorization> try_complement(const RootSystem& rs, RootLength t, const ElementSet& normal,
                                                   const std::vector<Root>& gen_roots, std::uint64_t cap) {
  std::vector<WeylElement> gens;
  for (const auto& r : gen_roots) gens.push_back(reflection_element(rs, r));
  auto v = generate_subgroup(rs, gens, cap);
  if (v.size() * normal.size() != rs.weyl_order()) return std::nullopt;
  for (const auto& e : v.elements())
    if (!e.is_identity() && normal.contains(e)) return std::nullopt;
  Factorization f;
  f.normal_length = t;
  f.generator_roots = gen_roots;
  for (std::size_t vi = 0; vi < v.size(); ++vi)
    for (std::size_t ui = 0; ui < normal.size(); ++ui) {
      const auto w = normal[ui].weight_action * v[vi].weight_action;
      if (!f.coset_map.try_emplace(w, ui, vi).second) return std::nullopt;
    }
  if (f.coset_map.size() != rs.weyl_order()) return std::nullopt;
  f.normal_subgroup = normal;
  f.complement = std::move(v);
  return f;
}

inline Root root_with_simple_coords(const RootSystem& rs, const std::vector<std::int64_t>& c) {
  for (const auto& r : rs.positive_roots())
    if (r.simple == c) return r;
  throw NotARoot("no positive root with the requested simple coordinates");
}

}  // namespace detail

/// Semidirect factorization W = V . W^T.
///
/// Tries the explicit complements first (S_n or a single sign change for
/// B_n/C_n, one reflection for G_2, the two short simple reflections for
/// F_4 over W^L), then falls back to searching subgroups generated by one
/// or two reflections of the other length. Every candidate is verified.
inline Factorization factorize(const RootSystem& rs, RootLength t, std::uint64_t cap = kDefaultEnumerationCap) {
  if (!rs.has_two_lengths()) throw NoTwoLengths(rs.algebra().to_string() + " has roots of a single length");
  const auto normal = subgroup_set(rs, t, cap);
  const RootLength o = other(t);
  const std::size_t n = rs.rank();
  const auto simple = [&](std::size_t i) {
    std::vector<std::int64_t> c(n, 0);
    c[i] = 1;
    return detail::root_with_simple_coords(rs, c);
  };

  std::vector<std::vector<Root>> candidates;
  const auto type = rs.algebra().type;
  if (type == LieType::B || type == LieType::C) {
    // Permutations r_1..r_{n-1} are long in B_n, short in C_n.
    const RootLength perm_length = type == LieType::B ? RootLength::Long : RootLength::Short;
    if (o == perm_length) {
      std::vector<Root> gens;
      for (std::size_t i = 0; i + 1 < n; ++i) gens.push_back(simple(i));
      candidates.push_back(gens);
    } else {
      // Sign change on epsilon_1: epsilon_1 (B_n) or 2 epsilon_1 (C_n).
      std::vector<std::int64_t> c(n, type == LieType::B ? 1 : 2);
      if (type == LieType::C) c[n - 1] = 1;
      candidates.push_back({detail::root_with_simple_coords(rs, c)});
    }
  } else if (type == LieType::G) {
    candidates.push_back({simple(t == RootLength::Long ? 1 : 0)});
  }
  {
    std::vector<Root> gens;
    for (std::size_t i = 0; i < n; ++i)
      if (rs.simple_root_length(i) == o) gens.push_back(simple(i));
    candidates.push_back(gens);
  }
  const auto others = rs.positive_roots(o);
  for (std::size_t a = 0; a < others.size(); ++a) candidates.push_back({others[a]});
  for (std::size_t a = 0; a < others.size(); ++a)
    for (std::size_t b = a + 1; b < others.size(); ++b) candidates.push_back({others[a], others[b]});

  for (const auto& gens : candidates)
    if (auto f = detail::try_complement(rs, t, normal, gens, cap)) return std::move(*f);
  throw FactorizationFailure("no complement to W^" + std::string(to_string(t)) + " found for " +
                             rs.algebra().to_string());
}

}  // namespace orbitfn
