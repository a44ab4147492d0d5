// Builds the golden-mean coefficient sequence for beta = 0.5, gamma = -0.5,
// truncates to 144 sites, and prints the eigenvalue angles next to the
// trace-map verdict at each angle.

#include <cstdio>

#include <cmvlab/cmvlab.hpp>

using namespace cmvlab;

int main() {
  Frequency golden = Frequency::golden();
  BigReal theta = golden.value();
  const long long N = 144;
  const cd beta(0.5, 0.0), gamma(-0.5, 0.0);

  Word w = mechanical_word(theta, theta, -2, N + 3);
  AlphaWindow alpha = sturmian_alphas(w, beta, gamma);
  std::vector<cd> ev = truncated_spectrum(alpha, N, cd(1, 0));

  std::vector<long long> quot = golden.quotients(16);
  std::printf("site count %lld, boundary phase 1\n", N);
  std::printf("%-6s %-22s %s\n", "#", "angle", "orbit");
  for (size_t i = 0; i < ev.size(); i += 12) {
    double angle = std::arg(ev[i]);
    if (angle < 0) angle += 2 * std::numbers::pi;
    ScanPoint p = evaluate_scan_point(beta, gamma, quot, angle, 14);
    std::printf("%-6zu %-22.17g %s\n", i, angle, p.bounded_at(14) ? "bounded" : "escaped");
  }
  return 0;
}
