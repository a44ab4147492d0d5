#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "cmv.hpp"
#include "contfrac.hpp"
#include "errors.hpp"
#include "tracemap.hpp"
#include "transfer.hpp"
#include "words.hpp"

namespace cmvlab {

struct GordonConstants {
  double c = 0;
  double eta = 0;    // (1/2) min(1, 1/c)
  double Gamma = 0;  // sup ||S(alpha_n, z)|| over the window
  double Delta = 0;  // eta / Gamma
};

inline GordonConstants gordon_constants(double c, double Gamma) {
  if (!(c >= 0)) throw BadConfig("trace bound c must be nonnegative");
  if (Gamma < 1.0 - 1e-12)
    throw InvariantViolation("Gamma < 1 contradicts |det S| = 1 on the unit circle");
  GordonConstants g;
  g.c = c;
  g.eta = 0.5 * ((c > 1.0) ? 1.0 / c : 1.0);
  g.Gamma = std::max(Gamma, 1.0);
  g.Delta = g.eta / g.Gamma;
  return g;
}

// max ||S(alpha_n, z)|| over n in [lo, hi)
inline double gamma_sup(const AlphaWindow& alpha, cd z, long long lo, long long hi) {
  double g = 0;
  for (long long n = lo; n < hi; ++n) g = std::max(g, op_norm(szego(alpha.at(n), z)));
  return g;
}

// Norms of the GZ state propagated from one initial condition.
struct StateNorms {
  double phi_minus = 0;  // ||Phi(-n_under)||, three-block checks only
  double phi_under = 0;  // ||Phi(n_under)||
  double phi_end = 0;    // ||Phi(2 n_k)||
  double best = 0;
  bool ok = false;  // best >= Delta (initial state has norm 1)
};

struct GordonCertificate {
  cd z0;
  long long n_k = 0;
  long long n_under = 0;  // greatest even integer <= n_k
  double trace_abs = 0;   // |tr T(n_k, 0; z0)|
  GordonConstants consts;
  StateNorms states[2];  // Phi(0) = (1,0) and (0,1); they span all solutions
  bool bound_ok = false;
  double slack = 0;  // min over states of best / Delta
};

namespace detail {

inline double norm_at(const AlphaWindow& alpha, cd z, const Vec2d& phi0, long long site) {
  return std::exp(propagate(alpha, z, phi0, site).log_norm());
}

inline void fill_states(GordonCertificate& cert, const AlphaWindow& alpha, cd z,
                        bool with_minus) {
  const Vec2d bases[2] = {{cd(1, 0), cd(0, 0)}, {cd(0, 0), cd(1, 0)}};
  cert.bound_ok = true;
  cert.slack = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 2; ++i) {
    StateNorms s;
    if (with_minus) s.phi_minus = norm_at(alpha, z, bases[i], -cert.n_under);
    s.phi_under = norm_at(alpha, z, bases[i], cert.n_under);
    s.phi_end = norm_at(alpha, z, bases[i], 2 * cert.n_k);
    s.best = std::max({s.phi_minus, s.phi_under, s.phi_end});
    s.ok = s.best >= cert.consts.Delta;
    cert.bound_ok = cert.bound_ok && s.ok;
    cert.slack = std::min(cert.slack, s.best / cert.consts.Delta);
    cert.states[i] = s;
  }
}

}  // namespace detail

// Two-block criterion: alpha repeats across [0, 2 n_k) and the transfer trace
// at scale n_k is at most c. Then no solution of the eigenvalue equation can
// be small at both n_under and 2 n_k:
// max(||Phi(n_under)||, ||Phi(2 n_k)||) >= Delta ||Phi(0)||.
inline GordonCertificate check_two_block(const AlphaWindow& alpha, cd z0, long long n_k,
                                         double c) {
  if (n_k < 1) throw BadConfig("repetition scale must be positive");
  for (long long j = 0; j < n_k; ++j) {
    if (alpha.at(j) != alpha.at(j + n_k))
      throw RepetitionViolated("alpha(j) != alpha(j + n_k) at j = " + std::to_string(j));
  }
  GordonCertificate cert;
  cert.z0 = z0;
  cert.n_k = n_k;
  cert.n_under = 2 * (n_k / 2);
  cert.trace_abs = std::abs(szego_cocycle(alpha, n_k, 0, z0).trace());
  if (cert.trace_abs > c)
    throw TraceBoundViolated("|tr T(n_k,0)| = " + std::to_string(cert.trace_abs) +
                             " exceeds c = " + std::to_string(c));
  cert.consts = gordon_constants(c, gamma_sup(alpha, z0, 0, 2 * n_k));
  detail::fill_states(cert, alpha, z0, false);
  return cert;
}

// Three-block criterion: alpha repeats across [-n_k, 2 n_k). No trace bound
// needed; Delta = 1 / (2 Gamma) and the max runs over three sites.
inline GordonCertificate check_three_block(const AlphaWindow& alpha, cd z, long long n_k) {
  if (n_k < 1) throw BadConfig("repetition scale must be positive");
  for (long long j = 0; j < n_k; ++j) {
    if (alpha.at(j) != alpha.at(j + n_k))
      throw RepetitionViolated("alpha(j) != alpha(j + n_k) at j = " + std::to_string(j));
    if (alpha.at(j - n_k) != alpha.at(j))
      throw RepetitionViolated("alpha(j - n_k) != alpha(j) at j = " + std::to_string(j));
  }
  GordonCertificate cert;
  cert.z0 = z;
  cert.n_k = n_k;
  cert.n_under = 2 * (n_k / 2);
  cert.trace_abs = std::abs(szego_cocycle(alpha, n_k, 0, z).trace());
  cert.consts = gordon_constants(1.0, gamma_sup(alpha, z, -n_k, 2 * n_k));
  detail::fill_states(cert, alpha, z, true);
  return cert;
}

// C^{n} max_j |alpha(j) - alpha(j +/- n)| for each scale and each C; the
// deviation takes the worse of the two signs.
struct GordonSequenceRow {
  double C = 0;
  std::vector<double> quantity;  // per scale
  bool reaches_tol = false;      // quantity at the largest scale <= tol
};

struct GordonSequenceReport {
  std::vector<long long> scales;
  std::vector<double> deviations;  // per scale, independent of C
  std::vector<GordonSequenceRow> rows;
  bool all_reach_tol = true;
};

inline GordonSequenceReport gordon_sequence_test(const AlphaWindow& alpha,
                                                 std::span<const long long> scales,
                                                 std::span<const double> C_list, double tol) {
  if (scales.empty()) throw BadConfig("gordon_sequence_test needs at least one scale");
  for (size_t i = 0; i + 1 < scales.size(); ++i)
    if (scales[i] >= scales[i + 1]) throw BadConfig("scales must be strictly increasing");
  GordonSequenceReport rep;
  rep.scales.assign(scales.begin(), scales.end());
  for (long long n : scales) {
    if (n < 1) throw BadConfig("scales must be positive");
    double dev = 0;
    for (long long j = 0; j < n; ++j) {
      dev = std::max(dev, std::abs(alpha.at(j) - alpha.at(j + n)));
      dev = std::max(dev, std::abs(alpha.at(j) - alpha.at(j - n)));
    }
    rep.deviations.push_back(dev);
  }
  for (double C : C_list) {
    if (!(C > 0)) throw BadConfig("growth constants C must be positive");
    GordonSequenceRow row;
    row.C = C;
    for (size_t i = 0; i < rep.scales.size(); ++i) {
      double dev = rep.deviations[i];
      if (dev == 0) {
        row.quantity.push_back(0);
        continue;
      }
      double lg = static_cast<double>(rep.scales[i]) * std::log(C) + std::log(dev);
      row.quantity.push_back(lg > 700 ? std::numeric_limits<double>::infinity() : std::exp(lg));
    }
    row.reaches_tol = row.quantity.back() <= tol;
    rep.all_reach_tol = rep.all_reach_tol && row.reaches_tol;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

// Runs the two-block certificate at every scale from gordon_scales for every
// bounded scan point. The trace bound c is the empirical maximum of
// |tr T(n_k, 0; zeta)| over the scales used at that point.
struct ExclusionRow {
  size_t point_index = 0;
  double angle = 0;
  int k = 0;
  long long n_k = 0;
  double trace_abs = 0;
  double delta = 0;
  double slack = 0;
  bool ok = false;
};

struct ExclusionSummary {
  long long points_used = 0;
  long long pairs = 0;
  long long certified = 0;
  double certified_fraction = 0;
  double min_slack = std::numeric_limits<double>::infinity();
  double max_trace = 0;
  std::vector<ExclusionRow> rows;
};

inline ExclusionSummary eigenvalue_excluder(const SpectrumScan& scan, const Frequency& freq,
                                            int k_lo, int k_hi, long long max_points = 0) {
  if (k_lo < 3) throw BadConfig("two-block scales are certified for k >= 3");
  if (k_hi < k_lo) throw BadConfig("empty k range");
  std::vector<long long> quotients = freq.quotients(k_hi + 2);
  Convergents conv = convergents(std::span<const long long>(quotients.data(), quotients.size()),
                                 k_hi + 1);
  if (conv.q[static_cast<size_t>(k_hi)] + conv.q[static_cast<size_t>(k_hi + 1)] >
      BigInt(1) << 24)
    throw BadConfig("repetition scales too large for direct certification");
  long long n_top = static_cast<long long>(conv.q[static_cast<size_t>(k_hi)] +
                                           conv.q[static_cast<size_t>(k_hi + 1)]);
  BigReal theta = freq.value();
  Word word = mechanical_word(theta, theta, -n_top, 3 * n_top);
  std::vector<std::pair<int, long long>> scales;
  for (int k = k_lo; k <= k_hi; ++k)
    scales.emplace_back(k, gordon_scales(word, conv, k).n_k);
  AlphaWindow alpha = sturmian_alphas(word, scan.beta, scan.gamma);

  ExclusionSummary sum;
  for (size_t pi = 0; pi < scan.points.size(); ++pi) {
    const ScanPoint& p = scan.points[pi];
    if (!p.bounded_at(scan.budget)) continue;
    if (max_points > 0 && sum.points_used >= max_points) break;
    ++sum.points_used;
    double c = 0;
    for (auto [k, n_k] : scales)
      c = std::max(c, std::abs(szego_cocycle(alpha, n_k, 0, p.zeta).trace()));
    for (auto [k, n_k] : scales) {
      GordonCertificate cert = check_two_block(alpha, p.zeta, n_k, c);
      ExclusionRow row;
      row.point_index = pi;
      row.angle = p.angle;
      row.k = k;
      row.n_k = n_k;
      row.trace_abs = cert.trace_abs;
      row.delta = cert.consts.Delta;
      row.slack = cert.slack;
      row.ok = cert.bound_ok;
      sum.rows.push_back(row);
      ++sum.pairs;
      if (row.ok) ++sum.certified;
      sum.min_slack = std::min(sum.min_slack, row.slack);
      sum.max_trace = std::max(sum.max_trace, row.trace_abs);
    }
  }
  sum.certified_fraction =
      sum.pairs == 0 ? 0 : static_cast<double>(sum.certified) / static_cast<double>(sum.pairs);
  return sum;
}

// Lower bound 1 - 4 q_n / q_{n+1} for the measure of phases admitting
// three-block scales, and the quotient-ratio bound (L + sqrt(L^2 + 4)) / 2.
struct PhaseMeasure {
  std::vector<double> per_n;   // n in [n_lo, n_hi]
  double limsup_estimate = 0;  // max partial quotient over the trailing half
  double kam_bound = 0;
  bool hypothesis_ok = false;  // limsup estimate >= 4
};

inline PhaseMeasure rotcode_phase_measure(std::span<const long long> a, int n_lo, int n_hi) {
  if (n_lo < 1 || n_hi < n_lo) throw BadConfig("need 1 <= n_lo <= n_hi");
  if (a.size() < static_cast<size_t>(n_hi + 1))
    throw BadConfig("rotcode_phase_measure needs quotients up to n_hi + 1");
  Convergents conv = convergents(a, n_hi + 1);
  PhaseMeasure pm;
  for (int n = n_lo; n <= n_hi; ++n) {
    BigReal ratio = BigReal(conv.q[static_cast<size_t>(n)]) /
                    BigReal(conv.q[static_cast<size_t>(n + 1)]);
    pm.per_n.push_back(1.0 - 4.0 * static_cast<double>(ratio));
  }
  long long lim = 0;
  for (size_t j = static_cast<size_t>(n_hi + 1) / 2; j < static_cast<size_t>(n_hi + 1); ++j)
    lim = std::max(lim, a[j]);
  pm.limsup_estimate = static_cast<double>(lim);
  pm.kam_bound = (pm.limsup_estimate + std::sqrt(pm.limsup_estimate * pm.limsup_estimate + 4)) / 2;
  pm.hypothesis_ok = pm.limsup_estimate >= 4;
  return pm;
}

// Approximate three-block mechanism: compare against the n_k-periodic
// coefficients, certify the exact bound there, and subtract the cocycle
// perturbation. Reports whether the true solution data still clears Delta/2.
struct ApproxThreeBlock {
  double delta = 0;         // Delta of the periodic comparison
  double perturbation = 0;  // max over probe sites of ||Z - Z_periodic||
  double best_norm[2] = {0, 0};
  bool half_bound_ok = false;
};

inline ApproxThreeBlock approx_three_block_bound(const AlphaWindow& alpha, cd z, long long n_k) {
  if (n_k < 1) throw BadConfig("repetition scale must be positive");
  AlphaWindow periodic;
  periodic.start = -n_k - 2;
  for (long long j = periodic.start; j < 2 * n_k + 2; ++j)
    periodic.values.push_back(alpha.at(((j % n_k) + n_k) % n_k));
  GordonCertificate cert = check_three_block(periodic, z, n_k);

  ApproxThreeBlock out;
  out.delta = cert.consts.Delta;
  long long probes[3] = {-cert.n_under, cert.n_under, 2 * n_k};
  for (long long site : probes) {
    Mat2d diff = gz_cocycle(alpha, site, 0, z) - gz_cocycle(periodic, site, 0, z);
    out.perturbation = std::max(out.perturbation, op_norm(diff));
  }
  const Vec2d bases[2] = {{cd(1, 0), cd(0, 0)}, {cd(0, 0), cd(1, 0)}};
  out.half_bound_ok = true;
  for (int i = 0; i < 2; ++i) {
    double best = 0;
    for (long long site : probes) best = std::max(best, detail::norm_at(alpha, z, bases[i], site));
    out.best_norm[i] = best;
    out.half_bound_ok = out.half_bound_ok && best >= out.delta / 2;
  }
  return out;
}

}  // namespace cmvlab
