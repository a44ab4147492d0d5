#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "mat2.hpp"
#include "words.hpp"

namespace cmvlab {

// Verblunsky coefficients on a contiguous integer window [start, start+len).
struct AlphaWindow {
  std::vector<cd> values;
  long long start = 0;

  long long lo() const { return start; }
  long long hi() const { return start + static_cast<long long>(values.size()); }

  const cd& at(long long n) const {
    if (n < lo() || n >= hi())
      throw OutOfWindow("alpha index " + std::to_string(n) + " outside [" +
                        std::to_string(lo()) + ", " + std::to_string(hi()) + ")");
    return values[static_cast<size_t>(n - start)];
  }

  double sup_norm() const {
    double r = 0;
    for (const cd& a : values) r = std::max(r, std::abs(a));
    return r;
  }
};

inline double rho_value(cd alpha) {
  double n = std::norm(alpha);
  if (!(n < 1.0)) throw DomainError("Verblunsky parameter must lie in the open unit disk");
  return std::sqrt(1.0 - n);
}

// Two-letter coefficient family: symbol 0 of the word maps to beta, symbol 1
// to gamma, i.e. alpha(n) = beta + w(n) * (gamma - beta).
struct VerblunskySequence {
  cd beta;
  cd gamma;
  Word word;

  VerblunskySequence(cd b, cd g, Word w) : beta(b), gamma(g), word(std::move(w)) {
    if (!(std::abs(beta) < 1.0) || !(std::abs(gamma) < 1.0))
      throw DomainError("beta and gamma must lie in the open unit disk");
    if (beta == gamma)
      throw BadConfig("beta and gamma coincide; the coefficient sequence would be constant");
  }

  double sup_bound() const { return std::max(std::abs(beta), std::abs(gamma)); }

  cd alpha_at(long long n) const { return word.at_ambient(n) == 1 ? gamma : beta; }

  AlphaWindow to_window() const {
    AlphaWindow w;
    w.start = word.lo();
    w.values.reserve(word.symbols.size());
    for (char c : word.symbols) w.values.push_back(c == '1' ? gamma : beta);
    return w;
  }
};

inline AlphaWindow sturmian_alphas(const Word& word, cd beta, cd gamma) {
  return VerblunskySequence(beta, gamma, word).to_window();
}

inline AlphaWindow constant_alphas(cd alpha, long long start, long long len) {
  rho_value(alpha);
  AlphaWindow w;
  w.start = start;
  w.values.assign(static_cast<size_t>(len), alpha);
  return w;
}

// Extended CMV operator E = L M over a coefficient window, applied without
// ever materializing the five-diagonal matrix.
struct CmvOperator {
  AlphaWindow alpha;

  double rho(long long n) const { return rho_value(alpha.at(n)); }
};

namespace detail {

// In-place rotation by Theta(alpha) of the pair (x[p], x[p+1]):
// (y_p, y_{p+1}) = (conj(a) x_p + r x_{p+1}, r x_p - a x_{p+1}).
inline void theta_rotate(cd alpha, cd& xp, cd& xp1) {
  double r = rho_value(alpha);
  cd yp = std::conj(alpha) * xp + r * xp1;
  cd yp1 = r * xp - alpha * xp1;
  xp = yp;
  xp1 = yp1;
}

}  // namespace detail

// Eu for u supported on [start, start+len) with a two-entry zero margin at
// each end. Under that margin the block factorization needs no coefficient
// outside [start, start+len-1) and the result equals the doubly infinite
// operator applied to the zero-extended vector, at every window entry.
inline std::vector<cd> apply(const CmvOperator& op, std::span<const cd> u, long long start) {
  long long len = static_cast<long long>(u.size());
  if (len < 5) throw InsufficientMargin("window too short for a two-entry margin each side");
  for (long long i : {0LL, 1LL, len - 2, len - 1}) {
    if (u[static_cast<size_t>(i)] != cd(0.0, 0.0))
      throw InsufficientMargin("input vector must vanish on the outer two entries per side");
  }
  long long A = start, B = start + len;
  std::vector<cd> x(u.begin(), u.end());
  // M pass: blocks at odd lower leg p, fully inside the window.
  long long p0 = A;
  if (((p0 % 2) + 2) % 2 == 0) ++p0;  // first odd index >= A
  for (long long p = p0; p + 1 <= B - 1; p += 2)
    detail::theta_rotate(op.alpha.at(p), x[static_cast<size_t>(p - A)],
                         x[static_cast<size_t>(p + 1 - A)]);
  // L pass: blocks at even lower leg.
  long long q0 = A;
  if (((q0 % 2) + 2) % 2 == 1) ++q0;  // first even index >= A
  for (long long p = q0; p + 1 <= B - 1; p += 2)
    detail::theta_rotate(op.alpha.at(p), x[static_cast<size_t>(p - A)],
                         x[static_cast<size_t>(p + 1 - A)]);
  return x;
}

// Row n of the five-diagonal representation, evaluated directly. Needs
// coefficients alpha_{n-2} .. alpha_{n+1} and the vector on [n-2, n+2].
inline cd stencil_row(const CmvOperator& op, std::span<const cd> u, long long start, long long n) {
  long long len = static_cast<long long>(u.size());
  if (n - 2 < start || n + 2 >= start + len)
    throw OutOfWindow("stencil row " + std::to_string(n) + " reaches outside the vector window");
  auto uu = [&](long long k) { return u[static_cast<size_t>(k - start)]; };
  auto al = [&](long long k) { return op.alpha.at(k); };
  auto rh = [&](long long k) { return cd(rho_value(op.alpha.at(k)), 0.0); };
  if (((n % 2) + 2) % 2 == 0) {
    // even row 2j
    return std::conj(al(n)) * rh(n - 1) * uu(n - 1) - std::conj(al(n)) * al(n - 1) * uu(n) +
           std::conj(al(n + 1)) * rh(n) * uu(n + 1) + rh(n + 1) * rh(n) * uu(n + 2);
  }
  // odd row 2j+1
  return rh(n - 1) * rh(n - 2) * uu(n - 2) - rh(n - 1) * al(n - 2) * uu(n - 1) -
         std::conj(al(n)) * al(n - 1) * uu(n) - rh(n) * al(n - 1) * uu(n + 1);
}

// l2 norm of (E - z)u over the interior rows [start+2, start+len-2), where the
// stencil is exact regardless of boundary behavior of u.
inline double residual(const CmvOperator& op, cd z, std::span<const cd> u, long long start) {
  long long len = static_cast<long long>(u.size());
  if (len < 5) throw WindowTooSmall("residual needs at least 5 sites");
  double s = 0;
  for (long long n = start + 2; n < start + len - 2; ++n) {
    cd r = stencil_row(op, u, start, n) - z * u[static_cast<size_t>(n - start)];
    s += std::norm(r);
  }
  return std::sqrt(s);
}

// Dense matrix of the window rows [A, B) of the doubly infinite operator,
// columns restricted to [A, B). Needs coefficients on [A-2, B].
inline Eigen::MatrixXcd dense_window(const CmvOperator& op, long long A, long long B) {
  if (B - A < 1 || B - A > 4096) throw BadConfig("dense window length must be in [1, 4096]");
  long long n_sites = B - A;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n_sites, n_sites);
  auto al = [&](long long k) { return op.alpha.at(k); };
  auto rh = [&](long long k) { return rho_value(op.alpha.at(k)); };
  for (long long n = A; n < B; ++n) {
    auto put = [&](long long col, cd val) {
      if (col >= A && col < B) m(n - A, col - A) = val;
    };
    if (((n % 2) + 2) % 2 == 0) {
      put(n - 1, std::conj(al(n)) * rh(n - 1));
      put(n, -std::conj(al(n)) * al(n - 1));
      put(n + 1, std::conj(al(n + 1)) * rh(n));
      put(n + 2, cd(rh(n + 1) * rh(n), 0.0));
    } else {
      put(n - 2, cd(rh(n - 1) * rh(n - 2), 0.0));
      put(n - 1, -rh(n - 1) * al(n - 2));
      put(n, -std::conj(al(n)) * al(n - 1));
      put(n + 1, -rh(n) * al(n - 1));
    }
  }
  return m;
}

// Unitary N x N truncation onto sites [0, N). The two Theta blocks cut by the
// boundary degenerate to 1 x 1 diagonal entries, which are set to the phase b:
// M(0,0) = b always, and the surviving corner of the last cut block (in M for
// N even, in L for N odd) is b as well. Equivalently alpha_{-1} = -b,
// alpha_{N-1} = conj(b). |b| = 1 keeps both factors unitary.
inline Eigen::MatrixXcd truncated_cmv(const AlphaWindow& alpha, long long N, cd b) {
  if (N < 1) throw BadConfig("truncation size must be positive");
  if (std::abs(std::abs(b) - 1.0) > 1e-14)
    throw BadConfig("boundary phase must be unimodular");
  Eigen::MatrixXcd L = Eigen::MatrixXcd::Zero(N, N);
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(N, N);
  auto fill_block = [&](Eigen::MatrixXcd& target, long long p) {
    cd a = alpha.at(p);
    double r = rho_value(a);
    target(p, p) = std::conj(a);
    target(p, p + 1) = r;
    target(p + 1, p) = r;
    target(p + 1, p + 1) = -a;
  };
  M(0, 0) = b;
  for (long long p = 1; p + 1 < N; p += 2) fill_block(M, p);
  for (long long p = 0; p + 1 < N; p += 2) fill_block(L, p);
  if (N % 2 == 0) {
    M(N - 1, N - 1) = b;
  } else {
    L(N - 1, N - 1) = b;
  }
  return L * M;
}

// Eigenvalues of the unitary truncation, sorted by argument in [0, 2*pi).
// Every eigenvalue must sit on the unit circle to within 1e-8.
inline std::vector<cd> truncated_spectrum(const AlphaWindow& alpha, long long N, cd b) {
  if (N > 2000) throw BadConfig("dense eigensolve budget is N <= 2000");
  Eigen::MatrixXcd e = truncated_cmv(alpha, N, b);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(e, false);
  if (solver.info() != Eigen::Success) throw EigensolveFailure("dense eigensolve did not converge");
  std::vector<cd> ev(static_cast<size_t>(N));
  for (long long i = 0; i < N; ++i) {
    cd v = solver.eigenvalues()(i);
    if (std::abs(std::abs(v) - 1.0) > 1e-8)
      throw EigensolveFailure("truncation eigenvalue off the unit circle by " +
                              std::to_string(std::abs(std::abs(v) - 1.0)));
    ev[static_cast<size_t>(i)] = v;
  }
  auto angle = [](cd v) {
    double a = std::arg(v);
    return a < 0 ? a + 2 * std::numbers::pi : a;
  };
  std::sort(ev.begin(), ev.end(), [&](cd x, cd y) { return angle(x) < angle(y); });
  return ev;
}

}  // namespace cmvlab
