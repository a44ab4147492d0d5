#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "errors.hpp"
#include "precision.hpp"

namespace cmvlab {

template <typename C>
struct scalar_of;
template <typename T>
struct scalar_of<std::complex<T>> {
  using type = T;
};
template <typename T>
struct scalar_of<Cx<T>> {
  using type = T;
};
template <typename C>
using scalar_of_t = typename scalar_of<C>::type;

// Row-major 2x2 matrix [[a,b],[c,d]] over a complex scalar type.
template <typename C>
struct Mat2 {
  C a{}, b{}, c{}, d{};

  static Mat2 identity() { return {C(1), C(0), C(0), C(1)}; }

  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d,
            c * o.a + d * o.c, c * o.b + d * o.d};
  }
  Mat2 operator+(const Mat2& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
  Mat2 operator-(const Mat2& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
  Mat2 operator*(const C& s) const { return {a * s, b * s, c * s, d * s}; }

  C det() const { return a * d - b * c; }
  C trace() const { return a + d; }

  Mat2 inverse() const {
    C dt = det();
    using std::abs;
    if (abs(dt) == scalar_of_t<C>(0)) throw DomainError("singular 2x2 matrix");
    return Mat2{d / dt, (-b) / dt, (-c) / dt, a / dt};
  }
};

// Operator 2-norm from the closed-form singular values:
// s_max^2 = (E + sqrt(E^2 - 4|det|^2)) / 2 with E the squared Frobenius norm.
template <typename C>
scalar_of_t<C> op_norm(const Mat2<C>& m) {
  using R = scalar_of_t<C>;
  using std::norm;
  using std::sqrt;
  R e = norm(m.a) + norm(m.b) + norm(m.c) + norm(m.d);
  R dd = norm(m.det());
  R disc = e * e - 4 * dd;
  if (disc < R(0)) disc = R(0);  // exact value is (s1^2-s2^2)^2 >= 0
  return sqrt((e + sqrt(disc)) / 2);
}

template <typename C>
scalar_of_t<C> max_abs_entry(const Mat2<C>& m) {
  using std::abs;
  using std::max;
  return max(max(abs(m.a), abs(m.b)), max(abs(m.c), abs(m.d)));
}

template <typename C>
struct Vec2 {
  C u{}, v{};
  scalar_of_t<C> norm2() const {
    using std::norm;
    return norm(u) + norm(v);
  }
  scalar_of_t<C> norm() const {
    using std::sqrt;
    return sqrt(norm2());
  }
};

template <typename C>
Vec2<C> operator*(const Mat2<C>& m, const Vec2<C>& p) {
  return {m.a * p.u + m.b * p.v, m.c * p.u + m.d * p.v};
}

using cd = std::complex<double>;
using Mat2d = Mat2<cd>;
using Vec2d = Vec2<cd>;

// Scale-and-log carrier for long matrix products: value = m * exp(log_scale).
// Entries of m are kept within [1e-100, 1e100] by renormalization, so
// products of arbitrary length never overflow.
struct ScaledMat2 {
  Mat2d m = Mat2d::identity();
  double log_scale = 0.0;

  static ScaledMat2 from(const Mat2d& mat) {
    ScaledMat2 s;
    s.m = mat;
    s.normalize();
    return s;
  }

  void normalize() {
    double mx = max_abs_entry(m);
    if (mx == 0.0) {
      log_scale = -std::numeric_limits<double>::infinity();
      return;
    }
    if (mx > 1e100 || mx < 1e-100) {
      m = m * cd(1.0 / mx, 0.0);
      log_scale += std::log(mx);
    }
  }

  ScaledMat2 operator*(const ScaledMat2& o) const {
    ScaledMat2 r;
    r.m = m * o.m;
    r.log_scale = log_scale + o.log_scale;
    r.normalize();
    return r;
  }

  double log_op_norm() const { return std::log(op_norm(m)) + log_scale; }
  double log_abs_trace() const { return std::log(std::abs(m.trace())) + log_scale; }

  // Materializes the plain matrix; refuses when out of double range.
  Mat2d to_mat2() const {
    if (log_scale == 0.0) return m;
    double mx = max_abs_entry(m);
    if (log_scale + std::log(mx) > 690.0)
      throw Overflow("scaled 2x2 matrix exceeds double range");
    return m * cd(std::exp(log_scale), 0.0);
  }
};

struct ScaledVec2 {
  Vec2d v;
  double log_scale = 0.0;

  static ScaledVec2 from(const Vec2d& vec) {
    ScaledVec2 s;
    s.v = vec;
    s.normalize();
    return s;
  }

  void normalize() {
    double mx = std::max(std::abs(v.u), std::abs(v.v));
    if (mx == 0.0) {
      log_scale = -std::numeric_limits<double>::infinity();
      return;
    }
    if (mx > 1e100 || mx < 1e-100) {
      v = {v.u * (1.0 / mx), v.v * (1.0 / mx)};
      log_scale += std::log(mx);
    }
  }

  double log_norm() const { return std::log(v.norm()) + log_scale; }

  Vec2d to_vec2() const {
    if (log_scale == 0.0) return v;
    double mx = std::max(std::abs(v.u), std::abs(v.v));
    if (log_scale + std::log(mx) > 690.0)
      throw Overflow("scaled 2-vector exceeds double range");
    return {v.u * std::exp(log_scale), v.v * std::exp(log_scale)};
  }
};

inline ScaledVec2 operator*(const ScaledMat2& m, const ScaledVec2& p) {
  ScaledVec2 r;
  r.v = m.m * p.v;
  r.log_scale = m.log_scale + p.log_scale;
  r.normalize();
  return r;
}

}  // namespace cmvlab
