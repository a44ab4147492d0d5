#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "cmv.hpp"
#include "errors.hpp"
#include "mat2.hpp"
#include "precision.hpp"

namespace cmvlab {

namespace detail {
template <typename C>
scalar_of_t<C> rho_of(const C& alpha) {
  using std::norm;
  using std::sqrt;
  scalar_of_t<C> n = norm(alpha);
  if (!(n < scalar_of_t<C>(1))) throw DomainError("Verblunsky parameter must lie in the open unit disk");
  return sqrt(scalar_of_t<C>(1) - n);
}
}  // namespace detail

// Szego one-step matrix, det = z.
template <typename C>
Mat2<C> szego(const C& alpha, const C& z) {
  using std::conj;
  auto r = detail::rho_of(alpha);
  C inv_r{scalar_of_t<C>(1) / r};
  return Mat2<C>{z, -conj(alpha), -alpha * z, C(scalar_of_t<C>(1))} * inv_r;
}

// Gesztesy-Zinchenko one-step matrices, det = -1.
template <typename C>
Mat2<C> gz_p(const C& alpha, const C& z) {
  using std::conj;
  auto r = detail::rho_of(alpha);
  C inv_r{scalar_of_t<C>(1) / r};
  C one{scalar_of_t<C>(1)};
  return Mat2<C>{-alpha, one / z, z, -conj(alpha)} * inv_r;
}

template <typename C>
Mat2<C> gz_q(const C& alpha, const C& z) {
  using std::conj;
  auto r = detail::rho_of(alpha);
  C inv_r{scalar_of_t<C>(1) / r};
  C one{scalar_of_t<C>(1)};
  return Mat2<C>{-conj(alpha), one, one, -alpha} * inv_r;
}

// One-step solution update Phi(n+1) = Y(n) Phi(n): P at even n, Q at odd n.
template <typename C>
Mat2<C> gz_y(long long n, const C& alpha, const C& z) {
  return (n % 2 == 0) ? gz_p(alpha, z) : gz_q(alpha, z);
}

// T(n,m;z) = S(alpha_{n-1}) ... S(alpha_m) for n > m; inverse for n < m.
inline Mat2d szego_cocycle(const AlphaWindow& a, long long n, long long m, cd z) {
  if (n == m) return Mat2d::identity();
  bool forward = n > m;
  long long lo = forward ? m : n, hi = forward ? n : m;
  Mat2d t = Mat2d::identity();
  for (long long j = lo; j < hi; ++j) t = szego(a.at(j), z) * t;
  return forward ? t : t.inverse();
}

inline Mat2d gz_cocycle(const AlphaWindow& a, long long n, long long m, cd z) {
  if (n == m) return Mat2d::identity();
  bool forward = n > m;
  long long lo = forward ? m : n, hi = forward ? n : m;
  Mat2d t = Mat2d::identity();
  for (long long j = lo; j < hi; ++j) t = gz_y(j, a.at(j), z) * t;
  return forward ? t : t.inverse();
}

// Phi(n) from Phi(0), stepping the GZ evolution with scale tracking.
inline ScaledVec2 propagate(const AlphaWindow& a, cd z, const Vec2d& phi0, long long n) {
  ScaledVec2 phi = ScaledVec2::from(phi0);
  if (n >= 0) {
    for (long long j = 0; j < n; ++j) {
      phi.v = gz_y(j, a.at(j), z) * phi.v;
      phi.normalize();
    }
  } else {
    for (long long j = -1; j >= n; --j) {
      phi.v = gz_y(j, a.at(j), z).inverse() * phi.v;
      phi.normalize();
    }
  }
  return phi;
}

// Reconstructs (u, v) solution data on [0, len) from Phi(0), for residual
// checks against the operator stencil. u_n = first component of Phi(n).
inline std::vector<cd> solution_u(const AlphaWindow& a, cd z, const Vec2d& phi0, long long n0,
                                  long long len) {
  std::vector<cd> u(static_cast<size_t>(len));
  ScaledVec2 phi = propagate(a, z, phi0, n0);
  for (long long i = 0; i < len; ++i) {
    Vec2d cur = phi.to_vec2();
    u[static_cast<size_t>(i)] = cur.u;
    phi.v = gz_y(n0 + i, a.at(n0 + i), z) * phi.v;
    phi.normalize();
  }
  return u;
}

// Deviation of the multistep identity z^{-n} T(2n,0;z) = Z(2n,0;z), computed
// at extended precision sized to the worst-case norm growth so the returned
// value reflects the identity itself rather than accumulation error.
inline double check_sgz_identity(const AlphaWindow& a, double z_angle, long long n) {
  if (n < 0) throw BadConfig("check_sgz_identity needs n >= 0");
  double log2_growth = 0;
  for (long long j = 0; j < 2 * n; ++j) {
    cd al = a.at(j);
    log2_growth += std::log2((1 + std::abs(al)) / std::sqrt(1 - std::norm(al)));
  }
  int bits = std::max(precision_bits(), static_cast<int>(2 * log2_growth) + 96);
  PrecisionScope scope(bits);

  using BC = BigComplex;
  BC z = big_unit(BigReal(z_angle));
  Mat2<BC> t = Mat2<BC>::identity();
  Mat2<BC> zz = Mat2<BC>::identity();
  for (long long j = 0; j < 2 * n; ++j) {
    BC al(BigReal(a.at(j).real()), BigReal(a.at(j).imag()));
    t = szego(al, z) * t;
    zz = ((j % 2 == 0) ? gz_p(al, z) : gz_q(al, z)) * zz;
  }
  BC zpow = big_unit(BigReal(-z_angle) * BigReal(static_cast<double>(n)));
  Mat2<BC> diff = t * zpow - zz;
  return static_cast<double>(op_norm(diff));
}

inline double check_sgz_identity(const AlphaWindow& a, cd z, long long n) {
  if (std::abs(std::abs(z) - 1.0) > 1e-12)
    throw DomainError("multistep identity check is implemented on the unit circle only");
  return check_sgz_identity(a, std::atan2(z.imag(), z.real()), n);
}

// One-step form Q(alpha,z) P(beta,z) = z^{-1} S(alpha,z) S(beta,z) in plain
// double arithmetic.
inline double one_step_identity_dev(cd alpha, cd beta, cd z) {
  Mat2d lhs = gz_q(alpha, z) * gz_p(beta, z);
  Mat2d rhs = (szego(alpha, z) * szego(beta, z)) * (cd(1.0, 0.0) / z);
  return op_norm(lhs - rhs);
}

// Explicit constant for the one-step GZ bounds: ||P||, ||Q|| <= A(r) and
// ||P(a)-P(b)||, ||Q(a)-Q(b)|| <= A(r)|a-b| whenever |a|,|b| <= r, |z| = 1.
inline double gz_step_const(double r) {
  if (!(r >= 0 && r < 1)) throw DomainError("gz_step_const needs r in [0,1)");
  double norm_bound = std::sqrt((1 + r) / (1 - r));
  double lip_bound = 2.0 / std::pow(1 - r * r, 1.5);
  return std::max(norm_bound, lip_bound);
}

struct PerturbationGap {
  double lhs = 0;      // ||Z(n,0;z) - Z~(n,0;z)||
  double bound = 0;    // delta * C(r)^n with C(r) = A(r) * 3^(1/3)
  double sharp = 0;    // n * delta * A(r)^n, the intermediate bound
  double r = 0;        // sup-norm bound actually observed
  double delta = 0;    // max per-site deviation actually observed
  bool within = false;
};

inline PerturbationGap perturbation_gap(const AlphaWindow& a, const AlphaWindow& at, cd z,
                                        long long n) {
  if (n < 1) throw BadConfig("perturbation_gap needs n >= 1");
  PerturbationGap g;
  for (long long j = 0; j < n; ++j) {
    g.r = std::max({g.r, std::abs(a.at(j)), std::abs(at.at(j))});
    g.delta = std::max(g.delta, std::abs(a.at(j) - at.at(j)));
  }
  if (g.r >= 1) throw DomainError("sequences must be bounded away from the unit circle");
  double A = gz_step_const(g.r);
  double C = A * std::cbrt(3.0);
  g.lhs = op_norm(gz_cocycle(a, n, 0, z) - gz_cocycle(at, n, 0, z));
  g.bound = g.delta * std::pow(C, static_cast<double>(n));
  g.sharp = static_cast<double>(n) * g.delta * std::pow(A, static_cast<double>(n));
  g.within = g.lhs <= g.bound;
  return g;
}

}  // namespace cmvlab
