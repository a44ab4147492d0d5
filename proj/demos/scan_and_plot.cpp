// Runs a coarse golden-mean scan, refines the verdict boundaries, and writes
// scan.json plus scan.svg into the working directory.

#include <cstdio>
#include <fstream>

#include <cmvlab/cmvlab.hpp>

using namespace cmvlab;

int main() {
  Frequency golden = Frequency::golden();
  std::vector<long long> quot = golden.quotients(14);
  SpectrumScan scan =
      spectrum_scan(cd(0.5, 0.0), cd(-0.5, 0.0), quot, 512, 14, golden.name());
  refine_scan(scan, 4);

  for (int b = 6; b <= scan.budget; b += 2)
    std::printf("budget %2d: measure %.6f\n", b, scan.measure_at(b));
  std::printf("refined points: %zu\n", scan.refined.size());

  std::ofstream("scan.json") << scan_to_json(scan, 0);
  std::ofstream("scan.svg") << scan_to_svg(scan);
  std::printf("wrote scan.json and scan.svg\n");
  return 0;
}
