#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cmv.hpp"
#include "contfrac.hpp"
#include "errors.hpp"
#include "mat2.hpp"
#include "transfer.hpp"

namespace cmvlab {

// Renormalization setup: two coefficient values, partial quotients, and a
// unit-circle spectral point held as its angle. All half-integer powers of
// zeta are taken as exp(-i k phi / 2), so power-of-zeta bookkeeping reduces
// to integer arithmetic on k and branch consistency is automatic.
struct TraceSetup {
  cd beta;
  cd gamma;
  std::vector<long long> a;  // partial quotients, a[j] is the (j+1)-th
  double phi = 0;            // zeta = exp(i phi), phi in [0, 2*pi)

  TraceSetup(cd b, cd g, std::vector<long long> quotients, double angle)
      : beta(b), gamma(g), a(std::move(quotients)), phi(angle) {
    rho_value(beta);
    rho_value(gamma);
    for (long long q : a)
      if (q < 1) throw BadConfig("partial quotients must be positive");
    if (!(phi >= 0 && phi < 2 * std::numbers::pi))
      throw BadConfig("spectral angle must lie in [0, 2*pi)");
  }

  cd zeta() const { return {std::cos(phi), std::sin(phi)}; }
};

struct TraceTriple {
  double x = 0, y = 0, z = 0;

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

struct OrbitRecord {
  std::vector<TraceTriple> triples;
  bool escaped = false;
  long long escape_step = -1;  // meaningful iff escaped
  double invariant_drift = 0;  // max over steps, normalized by max(1, ||triple||^3)

  const char* status() const { return escaped ? "escaped" : "bounded"; }
};

// M_{-1} = S(gamma) S(beta)^{-1} in closed form, and M_0 = zeta^{-1/2} S(beta).
struct InitMatrices {
  Mat2d m_minus1;
  Mat2d m_0;
};

inline InitMatrices init_matrices(cd beta, cd gamma, double phi) {
  double rb = rho_value(beta), rg = rho_value(gamma);
  cd one(1.0, 0.0);
  double inv = 1.0 / (rb * rg);
  Mat2d m1{(one - beta * std::conj(gamma)) * inv, (std::conj(beta) - std::conj(gamma)) * inv,
           (beta - gamma) * inv, (one - std::conj(beta) * gamma) * inv};
  cd zeta(std::cos(phi), std::sin(phi));
  cd half_branch(std::cos(phi / 2), -std::sin(phi / 2));  // zeta^{-1/2}
  Mat2d m0 = szego(beta, zeta) * half_branch;
  return {m1, m0};
}

// Half-traces of (M_{-1}, M_0, M_0 M_{-1}). Real on the unit circle, and the
// trace recursion has real coefficients, so the whole orbit stays real.
inline TraceTriple initial_triple(cd beta, cd gamma, double phi) {
  double rb = rho_value(beta), rg = rho_value(gamma);
  double K = 2.0 - 2.0 * (beta * std::conj(gamma)).real();
  double c = std::cos(phi / 2);
  return {K / (2 * rb * rg), c / rb, c / rg};
}

// Fricke-Vogt invariant x^2 + y^2 + z^2 - 2xyz - 1 of the orbit, in closed
// form as a function of (beta, gamma, zeta). Real for zeta anywhere in C.
inline double fricke_vogt(cd beta, cd gamma, cd zeta) {
  double rb2 = 1.0 - std::norm(beta), rg2 = 1.0 - std::norm(gamma);
  if (!(rb2 > 0) || !(rg2 > 0)) throw DomainError("coefficients must lie in the open unit disk");
  double K = 2.0 - 2.0 * (beta * std::conj(gamma)).real();
  return zeta.real() * (rb2 + rg2 - K) / (2 * rb2 * rg2) +
         (K * K - 2 * K + 2 * rb2 + 2 * rg2) / (4 * rb2 * rg2) - 1.0;
}

inline double fricke_vogt_of(const TraceTriple& t) {
  return t.x * t.x + t.y * t.y + t.z * t.z - 2 * t.x * t.y * t.z - 1.0;
}

// M_n for n = -1 .. N via the recursion M_n = M_{n-2} M_{n-1}^{a_n}.
// result[i] holds M_{i-1}. Scale-and-log products cannot overflow.
inline std::vector<ScaledMat2> iterate_matrices(const TraceSetup& s, int N) {
  if (N < 0) throw BadConfig("iterate_matrices needs N >= 0");
  if (static_cast<size_t>(N) > s.a.size())
    throw BadConfig("iterate_matrices needs a partial quotient per step");
  auto [m1, m0] = init_matrices(s.beta, s.gamma, s.phi);
  std::vector<ScaledMat2> m;
  m.reserve(static_cast<size_t>(N) + 2);
  m.push_back(ScaledMat2::from(m1));
  m.push_back(ScaledMat2::from(m0));
  for (int n = 1; n <= N; ++n) {
    // binary power of the previous matrix
    long long e = s.a[static_cast<size_t>(n - 1)];
    ScaledMat2 base = m[static_cast<size_t>(n)];
    ScaledMat2 acc = ScaledMat2::from(Mat2d::identity());
    while (e > 0) {
      if (e & 1) acc = acc * base;
      base = base * base;
      e >>= 1;
    }
    m.push_back(m[static_cast<size_t>(n - 1)] * acc);
  }
  return m;
}

namespace detail {

// One renormalization step of the half-trace triple for partial quotient a,
// using M^a = p_a M - p_{a-1} I with p_0 = 0, p_1 = 1, p_{k+1} = 2y p_k - p_{k-1}.
inline TraceTriple trace_step(const TraceTriple& t, long long a) {
  double pm = 0, p = 1;  // p_{k-1}, p_k starting at k = 1
  for (long long k = 1; k < a; ++k) {
    double nx = 2 * t.y * p - pm;
    pm = p;
    p = nx;
  }
  double p_a = p, p_am1 = pm;
  double p_ap1 = 2 * t.y * p_a - p_am1;
  return {t.y, p_a * t.z - p_am1 * t.x, p_ap1 * t.z - p_a * t.x};
}

inline constexpr double orbit_hard_cap = 1e50;

}  // namespace detail

// Orbit of half-trace triples for n = 0 .. N. Stops early and reports
// escaped when a component exceeds the hard cap, so stored values stay finite.
inline OrbitRecord trace_orbit(const TraceSetup& s, int N) {
  if (N < 0) throw BadConfig("trace_orbit needs N >= 0");
  if (static_cast<size_t>(N) > s.a.size())
    throw BadConfig("trace_orbit needs a partial quotient per step");
  double I = fricke_vogt(s.beta, s.gamma, s.zeta());
  OrbitRecord rec;
  TraceTriple t = initial_triple(s.beta, s.gamma, s.phi);
  for (int n = 0;; ++n) {
    rec.triples.push_back(t);
    double scale = std::max(1.0, std::pow(t.norm(), 3));
    rec.invariant_drift = std::max(rec.invariant_drift, std::abs(fricke_vogt_of(t) - I) / scale);
    if (n == N) break;
    t = detail::trace_step(t, s.a[static_cast<size_t>(n)]);
    if (std::max({std::abs(t.x), std::abs(t.y), std::abs(t.z)}) > detail::orbit_hard_cap) {
      rec.escaped = true;
      rec.escape_step = n + 1;
      break;
    }
  }
  return rec;
}

// Escape threshold: |y| must clear (2 + max(0, |tr M_{-1}| - 2)) / 2 before
// the monotone-growth test arms. |tr M_{-1}| / 2 = x_0 >= 1 always, so the
// guard is x_0 itself.
inline double escape_guard(cd beta, cd gamma) {
  return initial_triple(beta, gamma, 0.0).x;
}

// Budget-limited escape verdict. "Bounded" means only "did not escape within
// N_max steps". Escape fires at the first step k with |y_{k-1}| above the
// guard and |y_k| >= |y_{k-1}|; from that regime on, |y| grows without bound.
inline OrbitRecord bounded_orbit_test(const TraceSetup& s, int N_max,
                                      double escape_threshold = 0) {
  if (N_max < 5) throw BadConfig("bounded_orbit_test needs N_max >= 5");
  if (static_cast<size_t>(N_max) > s.a.size())
    throw BadConfig("bounded_orbit_test needs a partial quotient per step");
  double guard = std::max(escape_guard(s.beta, s.gamma), escape_threshold);
  double I = fricke_vogt(s.beta, s.gamma, s.zeta());
  OrbitRecord rec;
  TraceTriple t = initial_triple(s.beta, s.gamma, s.phi);
  for (int n = 0;; ++n) {
    rec.triples.push_back(t);
    double scale = std::max(1.0, std::pow(t.norm(), 3));
    rec.invariant_drift = std::max(rec.invariant_drift, std::abs(fricke_vogt_of(t) - I) / scale);
    if (n == N_max) break;
    double prev_y = std::abs(t.y);
    t = detail::trace_step(t, s.a[static_cast<size_t>(n)]);
    bool cap = std::max({std::abs(t.x), std::abs(t.y), std::abs(t.z)}) > detail::orbit_hard_cap;
    if (cap || (prev_y > guard && std::abs(t.y) >= prev_y)) {
      rec.escaped = true;
      rec.escape_step = n + 1;
      break;
    }
  }
  return rec;
}

// (1/q_n) log ||M_n||.
inline double lyapunov_estimate(const TraceSetup& s, int n) {
  if (n < 3) throw BadConfig("lyapunov_estimate needs n >= 3");
  if (static_cast<size_t>(n) > s.a.size())
    throw BadConfig("lyapunov_estimate needs a partial quotient per step");
  auto m = iterate_matrices(s, n);
  Convergents conv = convergents(std::span<const long long>(s.a.data(), s.a.size()),
                                 static_cast<int>(n));
  double qn = static_cast<double>(conv.q[static_cast<size_t>(n)]);
  return m.back().log_op_norm() / qn;
}

// G_0 = 1, G_1 = a_{k0+1}, G_{k+1} = a_{k0+k+1} G_k + G_{k-1}, compared
// exactly against C = min(1/q_{k0}, a_{k0+1}/q_{k0+1}).
struct GrowthSequence {
  std::vector<BigInt> G;
  BigInt c_num, c_den;     // C as an exact fraction
  std::vector<bool> ratio_ok;  // G_k / q_{k+k0} >= C, exact
  bool all_ok = true;
};

inline GrowthSequence growth_sequence(std::span<const long long> a, int k0, int k_max) {
  if (k0 < 1) throw BadConfig("growth_sequence needs k0 >= 1");
  if (k_max < 0) throw BadConfig("growth_sequence needs k_max >= 0");
  if (a.size() < static_cast<size_t>(k0 + k_max))
    throw BadConfig("growth_sequence needs partial quotients up to k0 + k_max");
  Convergents conv = convergents(a, k0 + k_max);
  GrowthSequence g;
  g.G.push_back(1);
  if (k_max >= 1) g.G.push_back(BigInt(a[static_cast<size_t>(k0)]));
  for (int k = 1; k < k_max; ++k)
    g.G.push_back(BigInt(a[static_cast<size_t>(k0 + k)]) * g.G[static_cast<size_t>(k)] +
                  g.G[static_cast<size_t>(k - 1)]);
  // C = min over cross-multiplication; q_{k0+1} > a_{k0+1} q_{k0} makes the
  // second fraction the minimum, but compare anyway.
  BigInt n1 = 1, d1 = conv.q[static_cast<size_t>(k0)];
  BigInt n2 = BigInt(a[static_cast<size_t>(k0)]), d2 = conv.q[static_cast<size_t>(k0 + 1)];
  if (n1 * d2 <= n2 * d1) {
    g.c_num = n1;
    g.c_den = d1;
  } else {
    g.c_num = n2;
    g.c_den = d2;
  }
  for (size_t k = 0; k < g.G.size(); ++k) {
    BigInt qk = conv.q[k + static_cast<size_t>(k0)];
    bool ok = g.G[k] * g.c_den >= g.c_num * qk;
    g.ratio_ok.push_back(ok);
    if (!ok) g.all_ok = false;
  }
  return g;
}

// Band test for a constant coefficient sequence alpha(n) = alpha: the point
// e^{i phi} lies in the spectrum iff |cos(phi/2)| <= rho.
inline bool constant_band_contains(cd alpha, double phi) {
  return std::abs(std::cos(phi / 2)) <= rho_value(alpha);
}

struct ScanPoint {
  double angle = 0;
  cd zeta;
  bool escaped = false;
  long long escape_step = -1;
  double lyapunov = 0;
  double invariant_drift = 0;

  bool bounded_at(int budget) const { return !(escaped && escape_step <= budget); }
};

struct SpectrumScan {
  cd beta, gamma;
  std::vector<long long> a;
  std::string theta_label;
  int grid = 0;
  int budget = 0;
  std::vector<ScanPoint> points;
  std::vector<ScanPoint> refined;
  int refine_depth = 0;

  // arc measure of the bounded set at a budget <= the scan budget
  double measure_at(int b) const {
    long long n = 0;
    for (const ScanPoint& p : points) n += p.bounded_at(b) ? 1 : 0;
    return 2 * std::numbers::pi * static_cast<double>(n) / static_cast<double>(grid);
  }
};

inline ScanPoint evaluate_scan_point(cd beta, cd gamma, const std::vector<long long>& a,
                                     double angle, int budget) {
  TraceSetup s(beta, gamma, a, angle);
  OrbitRecord rec = bounded_orbit_test(s, budget);
  ScanPoint p;
  p.angle = angle;
  p.zeta = s.zeta();
  p.escaped = rec.escaped;
  p.escape_step = rec.escape_step;
  p.invariant_drift = rec.invariant_drift;
  int n_lyap = std::min<int>(budget, static_cast<int>(a.size()));
  p.lyapunov = lyapunov_estimate(s, n_lyap);
  return p;
}

inline SpectrumScan spectrum_scan(cd beta, cd gamma, std::span<const long long> cf, int grid,
                                  int budget, const std::string& theta_label = "") {
  if (grid < 64) throw BadConfig("scan grid must have at least 64 points");
  if (budget < 5) throw BadConfig("scan budget must be at least 5");
  if (cf.size() < static_cast<size_t>(budget))
    throw BadConfig("scan needs a partial quotient per budget step");
  SpectrumScan scan;
  scan.beta = beta;
  scan.gamma = gamma;
  scan.a.assign(cf.begin(), cf.end());
  scan.theta_label = theta_label;
  scan.grid = grid;
  scan.budget = budget;
  scan.points.reserve(static_cast<size_t>(grid));
  for (int i = 0; i < grid; ++i) {
    double angle = 2 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(grid);
    scan.points.push_back(evaluate_scan_point(beta, gamma, scan.a, angle, budget));
  }
  return scan;
}

namespace detail {

inline void refine_cell(const SpectrumScan& scan, double left_angle, bool left_bounded,
                        double right_angle, bool right_bounded, int depth,
                        std::vector<ScanPoint>& out) {
  if (depth <= 0 || left_bounded == right_bounded) return;
  double mid = (left_angle + right_angle) / 2;
  ScanPoint p = evaluate_scan_point(scan.beta, scan.gamma, scan.a, mid, scan.budget);
  out.push_back(p);
  bool mid_bounded = p.bounded_at(scan.budget);
  refine_cell(scan, left_angle, left_bounded, mid, mid_bounded, depth - 1, out);
  refine_cell(scan, mid, mid_bounded, right_angle, right_bounded, depth - 1, out);
}

}  // namespace detail

// Bisects cells whose endpoint verdicts disagree, depth levels deep.
// Results are appended to scan.refined sorted by angle.
inline void refine_scan(SpectrumScan& scan, int depth) {
  if (depth < 0) throw BadConfig("refine depth must be nonnegative");
  scan.refine_depth = depth;
  scan.refined.clear();
  std::vector<ScanPoint> out;
  for (int i = 0; i < scan.grid; ++i) {
    const ScanPoint& l = scan.points[static_cast<size_t>(i)];
    double right_angle = 2 * std::numbers::pi * static_cast<double>(i + 1) /
                         static_cast<double>(scan.grid);
    const ScanPoint& r = scan.points[static_cast<size_t>((i + 1) % scan.grid)];
    detail::refine_cell(scan, l.angle, l.bounded_at(scan.budget), right_angle,
                        r.bounded_at(scan.budget), depth, out);
  }
  std::sort(out.begin(), out.end(),
            [](const ScanPoint& x, const ScanPoint& y) { return x.angle < y.angle; });
  scan.refined = std::move(out);
}

}  // namespace cmvlab
