// Minimal library walk-through: closed-form spectra, the determinant oracle,
// and one calibration energy.  Build target: spectrum_demo.

#include <cstdio>

#include "paneitz/lab.hpp"

int main() {
  using namespace paneitz;

  std::printf("ball boundary spectrum (first levels):\n");
  for (long long l = 0; l <= 4; ++l)
    std::printf("  l=%lld  lambda=%g  multiplicity=%lld\n", l,
                ball_eigenvalue(ModeIndex(l)), ModeIndex(l).multiplicity());

  const AnnulusModel annulus(1.0, 0.5);
  const auto [lam_minus, lam_plus] = annulus_eigenvalues(ModeIndex(1), annulus);
  const EigenPair zero_mode = annulus_zero_mode(annulus);
  std::printf("\nannulus tau=1, alpha=0.5:\n");
  std::printf("  lambda_1^- = %.12g   lambda_1^+ = %.12g\n", lam_minus, lam_plus);
  std::printf("  lambda_0^+ = %.12g\n", zero_mode.value);

  // Cross-check the l=1 pair against determinant roots.
  const auto roots = oracle_eigenvalues(ModeIndex(1), annulus, 2.0 * lam_plus);
  std::printf("  oracle roots:");
  for (double r : roots) std::printf(" %.12g", r);
  std::printf("\n");

  const CylinderModel cyl(2.0 * pi);
  std::printf("\ncylinder period=2*pi: first eigenvalue %g (level 0)\n",
              cylinder_eigenvalue(ModeIndex(0), cyl));

  const EnergyResult energy = cylinder_moebius_energy(1.0, CylinderModel(1.0));
  std::printf("calibration energy at delta=1: %.12g (18*pi^2 = %.12g)\n", energy.value,
              18.0 * pi * pi);
  return 0;
}
