#include <cstdio>
#include <numbers>

#include "pcclone/pcclone.hpp"

int main() {
  using namespace pcclone;
  for (int j = 0; j < 8; ++j) {
    const double phi = 2.0 * std::numbers::pi * j / 8;
    const CloneResult r = clone(phi, EquatorConvention::xy);
    const BlochVector s = bloch_from_density(r.clone_a);
    std::printf("phi=%.4f  F=%.12f  clone Bloch=(%+.6f, %+.6f, %+.6f)\n", phi, r.fidelity, s.sx, s.sy, s.sz);
  }
  const ShrinkFactors f = shrink_from_gamma(gamma_from_kraus(reduced_single_qubit_map(to_xy_convention(optimal_12_clones()), 1)));
  std::printf("single-clone map: eta_xy=%.10f eta_z=%.10f\n", f.eta_xy, f.eta_z);
}
