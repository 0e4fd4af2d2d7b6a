// Covariant phase estimation: quadrature POVM against the closed form.
#include <cmath>
#include <cstdio>

#include "pcclone/pcclone.hpp"

int main() {
  using namespace pcclone;
  std::printf("%3s  %18s  %18s  %10s\n", "N", "numeric", "closed", "|diff|");
  for (int n = 1; n <= 8; ++n) {
    const double numeric = pe_fidelity_numeric(n, default_node_count(n)).mean_fidelity;
    const double closed = pe_fidelity_closed(n);
    std::printf("%3d  %18.15f  %18.15f  %10.2e\n", n, numeric, closed, std::abs(numeric - closed));
  }
}
