// Brute-force reference computations for the tests. Deliberately built on
// plain vectors and hand-entered Cartan matrices, not on library code.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using Vec = std::vector<std::int64_t>;
using Mat = std::vector<Vec>;

/// Cartan matrices with row i = alpha_i in omega-coordinates.
inline Mat cartan(const std::string& name) {
  if (name == "A2") return {{2, -1}, {-1, 2}};
  if (name == "B2") return {{2, -2}, {-1, 2}};
  if (name == "C2") return {{2, -1}, {-2, 2}};
  if (name == "G2") return {{2, -3}, {-1, 2}};
  if (name == "B3") return {{2, -1, 0}, {-1, 2, -2}, {0, -1, 2}};
  if (name == "C3") return {{2, -1, 0}, {-1, 2, -1}, {0, -2, 2}};
  if (name == "F4") return {{2, -1, 0, 0}, {-1, 2, -2, 0}, {0, -1, 2, -1}, {0, 0, -1, 2}};
  return {};
}

inline Vec reflect(const Mat& a, std::size_t i, Vec v) {
  const auto c = v[i];
  for (std::size_t j = 0; j < v.size(); ++j) v[j] -= c * a[i][j];
  return v;
}

inline std::set<Vec> orbit(const Mat& a, const Vec& v) {
  std::set<Vec> seen{v};
  std::vector<Vec> todo{v};
  while (!todo.empty()) {
    auto x = todo.back();
    todo.pop_back();
    for (std::size_t i = 0; i < a.size(); ++i) {
      auto y = reflect(a, i, x);
      if (seen.insert(y).second) todo.push_back(y);
    }
  }
  return seen;
}

/// All roots: union of orbits of the simple roots.
inline std::set<Vec> roots(const Mat& a) {
  std::set<Vec> out;
  for (const auto& row : a) {
    auto o = orbit(a, row);
    out.insert(o.begin(), o.end());
  }
  return out;
}

/// Group elements as (image of each omega_j, sign-tracking word parity per
/// generator set) via BFS on the images of a generic weight.
struct Element {
  Vec image;           // w applied to the generic weight (1, 2, ..., n) scaled
  std::vector<int> word;
};

inline Vec generic(std::size_t n) {
  Vec v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<std::int64_t>(7 * i + 3);
  return v;
}

/// W as words reaching each distinct image of a regular weight.
inline std::map<Vec, std::vector<int>> group_words(const Mat& a) {
  const auto n = a.size();
  std::map<Vec, std::vector<int>> seen{{generic(n), {}}};
  std::vector<Vec> todo{generic(n)};
  while (!todo.empty()) {
    auto x = todo.back();
    todo.pop_back();
    for (std::size_t i = 0; i < n; ++i) {
      auto y = reflect(a, i, x);
      if (!seen.count(y)) {
        auto w = seen[x];
        w.insert(w.begin(), static_cast<int>(i));
        seen[y] = w;
        todo.push_back(y);
      }
    }
  }
  return seen;
}

/// Length class of simple roots from the symmetrizer: |alpha_i|^2 proportional to d_i.
inline std::vector<bool> simple_long(const Mat& a) {
  const auto n = a.size();
  std::vector<double> d(n, 0.0);
  d[0] = 1.0;
  for (int pass = 0; pass < 8; ++pass)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (a[i][j] != 0 && i != j && d[i] != 0.0 && d[j] == 0.0) d[j] = d[i] * a[j][i] / a[i][j];
  double m = 0;
  for (auto x : d) m = std::max(m, x);
  std::vector<bool> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = std::abs(d[i] - m) < 1e-9;
  return out;
}

/// kappa of a word: kind 0 id, 1 sigma, 2 long, 3 short.
inline int word_sign(const Mat& a, const std::vector<int>& word, int kind) {
  const auto lg = simple_long(a);
  int s = 1;
  for (int i : word) {
    const bool is_long = lg[static_cast<std::size_t>(i)];
    if (kind == 1 || (kind == 2 && is_long) || (kind == 3 && !is_long)) s = -s;
  }
  return s;
}

/// Apply a word (rightmost first) to v.
inline Vec apply_word(const Mat& a, const std::vector<int>& word, Vec v) {
  for (auto it = word.rbegin(); it != word.rend(); ++it) v = reflect(a, static_cast<std::size_t>(*it), v);
  return v;
}

/// Full-group sum of kappa(w) exp(2 pi i <w mu, x>).
inline std::complex<double> group_sum(const Mat& a, int kind, const Vec& mu, const std::vector<double>& x) {
  std::complex<double> s = 0;
  for (const auto& [img, word] : group_words(a)) {
    const auto wm = apply_word(a, word, mu);
    double t = 0;
    for (std::size_t i = 0; i < x.size(); ++i) t += static_cast<double>(wm[i]) * x[i];
    s += static_cast<double>(word_sign(a, word, kind)) * std::polar(1.0, 2 * std::numbers::pi * t);
  }
  return s;
}

}  // namespace oracle
