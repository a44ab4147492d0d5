// Certifies the two-block eigenvalue exclusion bound at one spectral point of
// the golden-mean model and prints the certificate.

#include <cstdio>

#include <cmvlab/cmvlab.hpp>

using namespace cmvlab;

int main() {
  Frequency golden = Frequency::golden();
  BigReal theta = golden.value();
  const cd beta(0.5, 0.0), gamma(-0.5, 0.0);
  const int k = 6;

  std::vector<long long> quot = golden.quotients(k + 2);
  Convergents conv = convergents(quot, k + 1);
  long long top = static_cast<long long>(conv.q[k] + conv.q[k + 1]);
  Word w = mechanical_word(theta, theta, -top, 3 * top);
  GordonScale scale = gordon_scales(w, conv, k);

  // pick an angle the trace map keeps bounded
  std::vector<long long> quot14 = golden.quotients(14);
  double angle = 0;
  for (int i = 0; i < 4096; ++i) {
    double a = 2 * std::numbers::pi * i / 4096.0;
    if (evaluate_scan_point(beta, gamma, quot14, a, 14).bounded_at(14)) {
      angle = a;
      break;
    }
  }
  cd z = std::polar(1.0, angle);

  AlphaWindow alpha = sturmian_alphas(w, beta, gamma);
  double c = std::abs(szego_cocycle(alpha, scale.n_k, 0, z).trace()) * (1 + 1e-12);
  GordonCertificate cert = check_two_block(alpha, z, scale.n_k, c);

  std::printf("k = %d, repetition scale n_k = %lld (candidate %d)\n", k, scale.n_k,
              scale.candidate);
  std::printf("z angle %.17g, |trace| = %.6g\n", angle, cert.trace_abs);
  std::printf("eta %.6g, Gamma %.6g, Delta %.6g\n", cert.consts.eta, cert.consts.Gamma,
              cert.consts.Delta);
  for (const StateNorms& s : cert.states)
    std::printf("state: phi_under %.6g, phi_end %.6g, best %.6g\n", s.phi_under, s.phi_end,
                s.best);
  std::printf("bound holds: %s (slack %.6g)\n", cert.bound_ok ? "yes" : "no", cert.slack);
  return cert.bound_ok ? 0 : 1;
}
