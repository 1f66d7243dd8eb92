#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace paneitz {

inline constexpr double pi = std::numbers::pi;

/// Round-sphere volumes under the conventions used throughout:
/// the boundary 3-sphere is normalized to vol(S^3) = 2*pi^2.
struct GeometricConstants {
  double vol_s3;
  double vol_s4;
};

constexpr double vol_s3() { return 2.0 * pi * pi; }
constexpr double vol_s4() { return 8.0 * pi * pi / 3.0; }
constexpr GeometricConstants geometric_constants() { return {vol_s3(), vol_s4()}; }

/// A spherical-harmonic level ell on S^3.  Carries the Laplace eigenvalue
/// ell*(ell+2) and the eigenspace dimension (ell+1)^2.
class ModeIndex {
 public:
  /// Levels above this would push the derived hyperbolic arguments and
  /// eigenvalues out of double range.
  static constexpr long long max_ell = 1'000'000;

  explicit ModeIndex(long long ell) : ell_(ell) {
    if (ell < 0 || ell > max_ell)
      throw std::domain_error("ModeIndex: ell must lie in [0, " +
                              std::to_string(max_ell) + "], got " + std::to_string(ell));
  }

  long long ell() const noexcept { return ell_; }
  long long laplace_eigenvalue() const noexcept { return ell_ * (ell_ + 2); }
  long long multiplicity() const noexcept { return (ell_ + 1) * (ell_ + 1); }

  friend bool operator==(ModeIndex a, ModeIndex b) noexcept { return a.ell_ == b.ell_; }

 private:
  long long ell_;
};

inline long long laplace_eigenvalue_s3(ModeIndex mode) { return mode.laplace_eigenvalue(); }
inline long long multiplicity_s3(ModeIndex mode) { return mode.multiplicity(); }

/// Periodic cylinder [0, period) x S^3 with the round product metric.
class CylinderModel {
 public:
  explicit CylinderModel(double period) : period_(period) {
    if (!(period > 0.0) || !std::isfinite(period))
      throw std::domain_error("CylinderModel: period must be positive and finite");
  }
  double period() const noexcept { return period_; }

 private:
  double period_;
};

/// Unit ball in cylindrical coordinates t in [0, inf), boundary at t = 0,
/// conformal factor normalized so the boundary sphere has volume 2*pi^2.
struct BallModel {};

/// Radial annulus in cylindrical coordinates t in [0, tau].
///
/// tau is the log-modulus (tau = -log rho) and alpha in (0,1) the weight of
/// the outer boundary in the normalization alpha + (1 - alpha) = 1 of the
/// two boundary conformal factors.  beta = alpha*(1-alpha) <= 1/4.
class AnnulusModel {
 public:
  // The nontrivial rotationally invariant eigenvalue scales like 1/beta and
  // overflows as alpha -> {0,1}; cosh(2*tau) leaves double range near
  // tau ~ 355.  Values outside these windows are rejected.
  static constexpr double min_tau = 1e-6;
  static constexpr double max_tau = 350.0;
  static constexpr double min_alpha = 1e-6;

  AnnulusModel(double tau, double alpha) : tau_(tau), alpha_(alpha) {
    if (!std::isfinite(tau) || tau < min_tau || tau > max_tau)
      throw std::domain_error("AnnulusModel: tau outside validated range [1e-6, 350]");
    if (!std::isfinite(alpha) || alpha < min_alpha || alpha > 1.0 - min_alpha)
      throw std::domain_error(
          "AnnulusModel: alpha outside validated range [1e-6, 1-1e-6] (degenerate boundary)");
  }

  double tau() const noexcept { return tau_; }
  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return alpha_ * (1.0 - alpha_); }
  double rho() const noexcept { return std::exp(-tau_); }

 private:
  double tau_;
  double alpha_;
};

/// Boundary weight from the boundary-volume ratio vol(Sigma_rho)/vol(Sigma_1):
/// alpha = 1/(1 + ratio), so (1-alpha)/alpha = ratio.
inline double alpha_from_volume_ratio(double ratio) {
  if (!(ratio > 0.0) || !std::isfinite(ratio))
    throw std::domain_error("alpha_from_volume_ratio: ratio must be positive and finite");
  return 1.0 / (1.0 + ratio);
}

}  // namespace paneitz
