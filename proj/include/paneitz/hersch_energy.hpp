#pragma once

#include <algorithm>
#include <array>
#include <cmath>

#include "errors.hpp"
#include "geometry.hpp"
#include "model_spectra.hpp"
#include "quadrature.hpp"

// Moebius calibration machinery on the round product cylinder and the
// explicit eigenvalue-bound constants derived from it.

namespace paneitz {

/// Dilation parameter of the Moebius map of S^3 with pole at the south pole
/// (the general pole is a rotation conjugate).  delta = 1 is the identity;
/// the map concentrates at the pole as delta -> 0.
struct MoebiusParams {
  double delta;
  explicit MoebiusParams(double d) : delta(d) {
    if (!(d > 0.0) || !(d <= 1.0) || !std::isfinite(d))
      throw std::domain_error("MoebiusParams: delta must lie in (0, 1]");
  }
};

using Vec4 = std::array<double, 4>;

namespace detail {

/// The raw map formula, valid for any delta > 0; parameters delta and
/// 1/delta compose to the identity.
inline Vec4 moebius_apply(double delta, const Vec4& y) {
  const double d2 = delta * delta;
  const double denom = (1.0 - y[3]) + d2 * (1.0 + y[3]);
  return {2.0 * delta * y[0] / denom, 2.0 * delta * y[1] / denom, 2.0 * delta * y[2] / denom,
          (y[3] - 1.0 + d2 * (1.0 + y[3])) / denom};
}

}  // namespace detail

/// phi_{S,delta}(y) for a unit 4-vector y; preserves the unit sphere and
/// fixes both poles.
inline Vec4 moebius_map_s3(const MoebiusParams& params, const Vec4& point) {
  const double norm = std::sqrt(point[0] * point[0] + point[1] * point[1] +
                                point[2] * point[2] + point[3] * point[3]);
  if (std::abs(norm - 1.0) > 1e-12)
    throw std::domain_error("moebius_map_s3: point must lie on the unit sphere");
  return detail::moebius_apply(params.delta, point);
}

struct EnergyResult {
  double value;
  double delta;
  double period;
  double quadrature_error_estimate;
};

/// Sum over the four S^3 coordinates of the conformal energy of
/// x_i o phi_{S,delta} on [0, period) x S^3 with the round product metric.
/// Writing f(phi) = 1 / (1 - cos phi + delta^2 (1 + cos phi)), the sum
/// reduces to two polar-angle integrals:
///
///   16 d^2 pi rho I[ f^2 sin^4 (3 + 5 cos (1-d^2) f - 2 (1-d^2)^2 f^2 sin^2)^2 ]
/// + 64 d^4 pi rho I[ f^4 sin^2 (3 cos - 2 sin^2 (1-d^2) f)^2 ].
///
/// Equals 18 pi^2 rho at delta = 1 and grows like 1/delta as delta -> 0.
/// Each integral is split at pi/2 before adaptive refinement: for small
/// delta the mass concentrates near phi = 0.
inline EnergyResult cylinder_moebius_energy(double delta, const CylinderModel& model,
                                            const QuadratureSpec& spec = {}) {
  if (!(delta > 0.0) || !(delta <= 1.0) || !std::isfinite(delta))
    throw std::domain_error("cylinder_moebius_energy: delta must lie in (0, 1]");
  const double d2 = delta * delta;
  auto f = [d2](double phi) {
    return 1.0 / ((1.0 - std::cos(phi)) + d2 * (1.0 + std::cos(phi)));
  };
  auto g1 = [&](double phi) {
    const double ff = f(phi);
    const double s = std::sin(phi), c = std::cos(phi);
    const double bracket =
        3.0 + 5.0 * c * (1.0 - d2) * ff - 2.0 * (1.0 - d2) * (1.0 - d2) * ff * ff * s * s;
    return ff * ff * s * s * s * s * bracket * bracket;
  };
  auto g2 = [&](double phi) {
    const double ff = f(phi);
    const double s = std::sin(phi), c = std::cos(phi);
    const double bracket = 3.0 * c - 2.0 * s * s * (1.0 - d2) * ff;
    return ff * ff * ff * ff * s * s * bracket * bracket;
  };
  const auto i1a = integrate_with_estimate(g1, 0.0, 0.5 * pi, spec);
  const auto i1b = integrate_with_estimate(g1, 0.5 * pi, pi, spec);
  const auto i2a = integrate_with_estimate(g2, 0.0, 0.5 * pi, spec);
  const auto i2b = integrate_with_estimate(g2, 0.5 * pi, pi, spec);
  const double rho = model.period();
  const double pref1 = 16.0 * d2 * pi;
  const double pref2 = 64.0 * d2 * d2 * pi;
  // the period multiplies last, so linearity in it is exact
  const double per_unit = pref1 * (i1a.value + i1b.value) + pref2 * (i2a.value + i2b.value);
  const double err_unit = pref1 * (i1a.error_estimate + i1b.error_estimate) +
                          pref2 * (i2a.error_estimate + i2b.error_estimate);
  return {per_unit * rho, delta, rho, err_unit * rho};
}

struct HerschBound {
  double constant;          // sup of energy / period over admissible delta
  double maximizing_delta;
};

/// Explicit admissible constant C(epsilon, delta0): the supremum of
/// energy(delta) / period over delta in [min(delta0, 1 - epsilon), 1]
/// (admissible calibrating dilations satisfy delta >= min(delta0, 1-eps)).
/// 256-point grid followed by golden-section refinement of the best bracket.
inline HerschBound hersch_bound_constant(double epsilon, double delta0,
                                         const QuadratureSpec& spec = {}) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::domain_error("hersch_bound_constant: epsilon must lie in (0, 1)");
  if (!(delta0 > 0.0 && delta0 <= 1.0))
    throw std::domain_error("hersch_bound_constant: delta0 must lie in (0, 1]");
  const double lo_delta = std::min(delta0, 1.0 - epsilon);
  const CylinderModel unit(1.0);  // energy / period is period-free
  auto energy = [&](double d) { return cylinder_moebius_energy(d, unit, spec).value; };

  constexpr int n = 256;
  double best_delta = lo_delta, best_value = -1.0;
  std::array<double, n> grid{};
  for (int i = 0; i < n; ++i) {
    grid[static_cast<std::size_t>(i)] =
        lo_delta + (1.0 - lo_delta) * static_cast<double>(i) / (n - 1);
  }
  int best_index = 0;
  for (int i = 0; i < n; ++i) {
    const double v = energy(grid[static_cast<std::size_t>(i)]);
    if (v > best_value) {
      best_value = v;
      best_index = i;
      best_delta = grid[static_cast<std::size_t>(i)];
    }
  }
  double lo = grid[static_cast<std::size_t>(std::max(best_index - 1, 0))];
  double hi = grid[static_cast<std::size_t>(std::min(best_index + 1, n - 1))];
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - ratio * (hi - lo);
  double x2 = lo + ratio * (hi - lo);
  double f1 = energy(x1), f2 = energy(x2);
  for (int iter = 0; iter < 80 && (hi - lo) > 1e-10; ++iter) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      f2 = energy(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      f1 = energy(x1);
    }
  }
  if (f1 > best_value) { best_value = f1; best_delta = x1; }
  if (f2 > best_value) { best_value = f2; best_delta = x2; }
  const double mid = 0.5 * (lo + hi);
  const double fm = energy(mid);
  if (fm > best_value) { best_value = fm; best_delta = mid; }
  return {best_value, best_delta};
}

/// Coordinate center of mass F_i = \int_M x_i o phi_{S,delta} dv over the
/// round product cylinder.  The first three components vanish by the odd
/// symmetry of x_1..x_3; the fourth is
///   F_4 = vol(S^2) * period * \int_0^pi (x_4 o phi)(phi) sin^2 phi dphi.
/// F -> (south pole) * vol(M) = (0,0,0,-2 pi^2 period) as delta -> 0, and
/// vanishes at delta = 1.
inline Vec4 moebius_center_of_mass(double delta, const CylinderModel& model,
                                   const QuadratureSpec& spec = {}) {
  if (!(delta > 0.0) || !(delta <= 1.0) || !std::isfinite(delta))
    throw std::domain_error("moebius_center_of_mass: delta must lie in (0, 1]");
  const double d2 = delta * delta;
  auto integrand = [d2](double phi) {
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    const double x4 = (c - 1.0 + d2 * (1.0 + c)) / ((1.0 - c) + d2 * (1.0 + c));
    return x4 * s * s;
  };
  const auto ia = integrate_with_estimate(integrand, 0.0, 0.5 * pi, spec);
  const auto ib = integrate_with_estimate(integrand, 0.5 * pi, pi, spec);
  return {0.0, 0.0, 0.0, (4.0 * pi * (ia.value + ib.value)) * model.period()};
}

/// (mu_1^2 + 2 mu_1) vol(S^4) with mu_1 = 4 the first nonzero Laplace
/// eigenvalue of S^4: the total conformal energy of the five coordinate
/// functions, 24 * 8 pi^2 / 3 = 64 pi^2.  Evaluated analytically and through
/// the slice quadrature vol(S^4) = vol(S^3) \int_0^pi sin^3, asserting
/// agreement of the two routes.
inline double sphere_coordinate_energy_sum(const QuadratureSpec& spec = {}) {
  const double mu1 = 4.0;
  const double coefficient = mu1 * mu1 + 2.0 * mu1;
  const double analytic = coefficient * vol_s4();
  const double vol_quad = vol_s3() * integrate(
                                         [](double theta) {
                                           const double s = std::sin(theta);
                                           return s * s * s;
                                         },
                                         0.0, pi, spec);
  const double quadrature = coefficient * vol_quad;
  if (std::abs(quadrature - analytic) > 1e-9 * std::abs(analytic))
    throw numerical_error("sphere_coordinate_energy_sum: quadrature route disagrees",
                          quadrature, std::abs(quadrature - analytic));
  return analytic;
}

/// The ball bound constant: first nonzero ball eigenvalue times the
/// normalized boundary volume, 12 * 2 pi^2 = 24 pi^2.  Sharp (attained by
/// the flat unit ball).
inline double ball_bound_constant() {
  return ball_eigenvalue(ModeIndex(1)) * vol_s3();
}

}  // namespace paneitz
