#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "orbitfn/errors.hpp"

namespace orbitfn {

using Rational = boost::rational<std::int64_t>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Membership tolerance for the defining inequalities of F.
inline constexpr double kMembershipTolerance = 1e-12;

namespace detail {

inline void hash_combine(std::size_t& seed, std::size_t value) {
  seed ^= value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

}  // namespace detail

/// Integral weight in the basis of fundamental weights (omega-coordinates).
///
/// All weights this library manipulates lie in P: fundamental weights,
/// roots and the rho-vectors rho, rho^L, rho^S are integral in this basis.
class Weight {
 public:
  Weight() = default;
  explicit Weight(std::size_t rank) : coords_(rank, 0) {}
  explicit Weight(std::vector<std::int64_t> coords) : coords_(std::move(coords)) {}
  Weight(std::initializer_list<std::int64_t> coords) : coords_(coords) {}

  static Weight fundamental(std::size_t rank, std::size_t i) {
    Weight w(rank);
    w.coords_.at(i) = 1;
    return w;
  }

  std::size_t size() const { return coords_.size(); }
  std::int64_t operator[](std::size_t i) const { return coords_[i]; }
  std::int64_t& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<std::int64_t>& coords() const { return coords_; }
  auto begin() const { return coords_.begin(); }
  auto end() const { return coords_.end(); }

  bool is_dominant() const {
    return std::all_of(coords_.begin(), coords_.end(), [](auto c) { return c >= 0; });
  }
  bool is_strictly_dominant() const {
    return std::all_of(coords_.begin(), coords_.end(), [](auto c) { return c > 0; });
  }
  bool is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](auto c) { return c == 0; });
  }

  Weight& operator+=(const Weight& o) {
    check_size(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
    return *this;
  }
  Weight& operator-=(const Weight& o) {
    check_size(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
    return *this;
  }
  friend Weight operator+(Weight a, const Weight& b) { return a += b; }
  friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
  friend Weight operator-(Weight a) {
    for (auto& c : a.coords_) c = -c;
    return a;
  }
  friend Weight operator*(std::int64_t k, Weight a) {
    for (auto& c : a.coords_) c *= k;
    return a;
  }

  friend bool operator==(const Weight&, const Weight&) = default;
  friend auto operator<=>(const Weight&, const Weight&) = default;

  std::string to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < coords_.size(); ++i) os << (i ? "," : "") << coords_[i];
    os << ')';
    return os.str();
  }
  friend std::ostream& operator<<(std::ostream& os, const Weight& w) { return os << w.to_string(); }

 private:
  void check_size(const Weight& o) const {
    if (o.size() != size()) throw DimensionMismatch("weight rank mismatch");
  }

  std::vector<std::int64_t> coords_;
};

struct WeightHash {
  std::size_t operator()(const Weight& w) const {
    std::size_t seed = w.size();
    for (auto c : w) detail::hash_combine(seed, std::hash<std::int64_t>{}(c));
    return seed;
  }
};

/// Real point in the basis of simple co-roots (alpha-check coordinates).
class Point {
 public:
  Point() = default;
  explicit Point(std::size_t rank) : coords_(rank, 0.0) {}
  explicit Point(std::vector<double> coords) : coords_(std::move(coords)) {}
  Point(std::initializer_list<double> coords) : coords_(coords) {}

  std::size_t size() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  double& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<double>& coords() const { return coords_; }
  auto begin() const { return coords_.begin(); }
  auto end() const { return coords_.end(); }

  Point& operator+=(const Point& o) {
    if (o.size() != size()) throw DimensionMismatch("point rank mismatch");
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
    return *this;
  }
  friend Point operator+(Point a, const Point& b) { return a += b; }
  friend Point operator*(double k, Point a) {
    for (auto& c : a.coords_) c *= k;
    return a;
  }
  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<double> coords_;
};

/// The natural pairing of P and Q-check: a plain coordinate dot product.
inline double pairing(const Weight& lambda, const Point& x) {
  if (lambda.size() != x.size()) throw DimensionMismatch("pairing: rank mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += static_cast<double>(lambda[i]) * x[i];
  return s;
}

/// Small dense square integer matrix, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(std::size_t n) : n_(n), data_(n * n, 0) {}
  IntMatrix(std::size_t n, std::vector<std::int64_t> data) : n_(n), data_(std::move(data)) {
    if (data_.size() != n * n) throw DimensionMismatch("IntMatrix: wrong element count");
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t size() const { return n_; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  std::int64_t& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const std::vector<std::int64_t>& data() const { return data_; }

  IntMatrix transpose() const {
    IntMatrix t(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.n_ != b.n_) throw DimensionMismatch("IntMatrix product: size mismatch");
    IntMatrix c(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i)
      for (std::size_t k = 0; k < a.n_; ++k) {
        const auto aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < a.n_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  Weight apply(const Weight& v) const {
    if (v.size() != n_) throw DimensionMismatch("IntMatrix::apply: rank mismatch");
    Weight r(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      std::int64_t s = 0;
      for (std::size_t j = 0; j < n_; ++j) s += (*this)(i, j) * v[j];
      r[i] = s;
    }
    return r;
  }

  Point apply(const Point& v) const {
    if (v.size() != n_) throw DimensionMismatch("IntMatrix::apply: rank mismatch");
    Point r(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n_; ++j) s += static_cast<double>((*this)(i, j)) * v[j];
      r[i] = s;
    }
    return r;
  }

  std::vector<std::int64_t> apply(std::span<const std::int64_t> v) const {
    std::vector<std::int64_t> r(n_, 0);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::int64_t> data_;
};

struct IntMatrixHash {
  std::size_t operator()(const IntMatrix& m) const {
    std::size_t seed = m.size();
    for (auto c : m.data()) detail::hash_combine(seed, std::hash<std::int64_t>{}(c));
    return seed;
  }
};

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Exact inverse by Gauss-Jordan elimination. Throws on singular input.
inline RationalMatrix invert(const IntMatrix& m) {
  const std::size_t n = m.size();
  RationalMatrix a(n, std::vector<Rational>(2 * n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(m(i, j));
    a[i][n + i] = Rational(1);
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == Rational(0)) ++pivot;
    if (pivot == n) throw InvalidAlgebra("singular Cartan matrix");
    std::swap(a[pivot], a[col]);
    const Rational p = a[col][col];
    for (auto& v : a[col]) v /= p;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == Rational(0)) continue;
      const Rational f = a[r][col];
      for (std::size_t c = 0; c < 2 * n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  RationalMatrix inv(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = a[i][n + j];
  return inv;
}

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

}  // namespace orbitfn
