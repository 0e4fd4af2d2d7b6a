// Prints the phase-covariant and universal cloning bounds for one input copy.
#include <cstdio>

#include "pcclone/pcclone.hpp"

int main() {
  std::printf("%4s  %12s  %12s\n", "M", "F_pcc", "F_universal");
  for (int m = 1; m <= 10; ++m) {
    std::printf("%4d  %12.9f  %12.9f\n", m, pcclone::bound_fidelity(1, m), pcclone::universal_fidelity(1, m));
  }
  std::printf("%4s  %12.9f  %12.9f\n", "inf", pcclone::bound_fidelity(1, pcclone::infinite_copies),
              pcclone::universal_fidelity(1, pcclone::infinite_copies));
}
