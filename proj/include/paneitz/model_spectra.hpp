#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "detail/hyperbolic.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "radial_profile.hpp"
#include "roots.hpp"

namespace paneitz {

/// Lowest eigenvalue of the fundamental-frequency periodic branch on level
/// ell of the round product cylinder:
///   [(2 + 2l + l^2) + (2 pi / period)^2]^2 - 4 (l+1)^2.
/// Strictly positive for every l >= 0 and period > 0; increasing in l,
/// decreasing in period.
inline double cylinder_eigenvalue(ModeIndex mode, const CylinderModel& model) {
  const double l = static_cast<double>(mode.ell());
  const double s = l * l + 2.0 * l + 2.0;
  const double w = 2.0 * pi / model.period();
  const double m = l + 1.0;
  return (s + w * w) * (s + w * w) - 4.0 * m * m;
}

/// Steklov-type boundary eigenvalue of the flat unit ball on level ell:
/// 0 on the constants, 2 l (l+1)(l+2) for l >= 1.  (These are twice the
/// eigenvalues of the third-order intertwining operator on S^3.)
inline double ball_eigenvalue(ModeIndex mode) {
  if (mode.ell() == 0) return 0.0;
  const double l = static_cast<double>(mode.ell());
  return 2.0 * l * (l + 1.0) * (l + 2.0);
}

/// Radial eigenfunction of the ball problem on level ell >= 1:
///   u_l(t) = ((l+2)/(2l)) e^{-l t} - e^{-(l+2)t}/2,
/// normalized as printed (u_l(0) = 1/l, u_l'(0) = 0, decaying as t -> inf).
inline RadialProfile ball_eigenfunction(ModeIndex mode) {
  if (mode.ell() < 1)
    throw std::domain_error("ball_eigenfunction: the l = 0 eigenfunction is the constant");
  const double l = static_cast<double>(mode.ell());
  return RadialProfile::decaying_ball(mode, {(l + 2.0) / (2.0 * l), -0.5});
}

/// Coefficients of the per-mode annulus boundary eigenvalue quadratic
/// a(l) x^2 + b(l) x + c(l) = 0, each multiplied by the common positive
/// factor e^{-(2l+2) tau} so nothing overflows for tau <= 350.  The root set
/// is unchanged by the common factor.
///
/// The discriminant b_scaled^2 - 4 a_scaled c_scaled is carried through its
/// square root, evaluated from the exact decomposition
///   disc = (K/beta)^2 [ (1 - 4 beta) P^2 + 4 beta W^2 ],
///   K = 4 l (l+1)(l+2),
///   P = (l+1) sinh(2 tau) + sinh((2l+2) tau),
///   W = (l+2) sinh((l+2) tau) - l sinh(l tau),
/// whose two addends are nonnegative.  The textbook difference b^2 - 4ac
/// cancels to noise once beta is near 1/4 and l*tau is large (the two roots
/// coalesce); this form does not, and the square root stays representable
/// where the discriminant itself would underflow (the root gap shrinks like
/// e^{-l tau} in this scaling).  discriminant_scaled is the square of
/// sqrt_discriminant_scaled and may underflow to zero at extreme l*tau.
struct QuadraticCoefficients {
  double a_scaled;
  double b_scaled;
  double c_scaled;
  double sqrt_discriminant_scaled;
  double discriminant_scaled;
  long long ell;
  double tau;
  double alpha;
};

namespace detail {

/// P(l,tau) * e^{-(2l+2) tau}, all addends positive.
inline double p_factor_scaled(long long ell, double tau) {
  const double l = static_cast<double>(ell);
  const double e2l = std::exp(-2.0 * l * tau);
  return 0.5 * ((l + 1.0) * e2l * (-std::expm1(-4.0 * tau)) +
                (-std::expm1(-(4.0 * l + 4.0) * tau)));
}

/// W(l,tau) * e^{-(l+2) tau}.
inline double w_factor_scaled(long long ell, double tau) {
  const double l = static_cast<double>(ell);
  const double grow = (l + 2.0) * (-std::expm1(-(2.0 * l + 4.0) * tau));
  const double decay = l * std::exp(-2.0 * tau) * (-std::expm1(-2.0 * l * tau));
  return 0.5 * (grow - decay);
}

/// a(l) * e^{-(2l+2) tau}.  Near tau = 0 the direct hyperbolic combination
/// cancels (a -> 0 like tau^4), so small arguments go through the identity
/// a = -4 sinh^2(tau) * V * (V + 2(l+1)) with V = U_l(cosh tau) - (l+1) >= 0.
inline double a_factor_scaled(long long ell, double tau) {
  const double l = static_cast<double>(ell);
  if ((l + 1.0) * tau <= 1.0) {
    const double sh = std::sinh(0.5 * tau);
    const double y = 2.0 * sh * sh;  // cosh(tau) - 1
    const double v = chebyshev_u_excess(ell, y);
    const double s = std::sinh(tau);
    return -4.0 * s * s * v * (v + 2.0 * (l + 1.0)) * std::exp(-(2.0 * l + 2.0) * tau);
  }
  const double e2l2 = std::exp(-(2.0 * l + 2.0) * tau);
  const double e2l = std::exp(-2.0 * l * tau);
  const double e2l4 = std::exp(-(2.0 * l + 4.0) * tau);
  const double e4l4 = std::exp(-(4.0 * l + 4.0) * tau);
  return -2.0 * l * (l + 2.0) * e2l2 + (l + 1.0) * (l + 1.0) * (e2l + e2l4) - (1.0 + e4l4);
}

/// The nontrivial rotationally invariant eigenvalue
///   lambda_0^+ = (4/beta) sinh(2 tau) / (1 - cosh(2 tau) + tau sinh(2 tau)),
/// evaluated via the identities
///   1 - cosh(2 tau) + tau sinh(2 tau) = 2 sinh(tau) (tau cosh(tau) - sinh(tau))
///   =>  lambda_0^+ = (4/beta) cosh(tau) / (tau cosh(tau) - sinh(tau))
///                  = (4/beta) / (tau - tanh(tau)),
/// which stay accurate for small tau and never overflow.
inline double lambda0_plus(double tau, double beta) {
  if (tau < 0.5) return 4.0 * std::cosh(tau) / (beta * tcosh_minus_sinh(tau));
  return 4.0 / (beta * (tau - std::tanh(tau)));
}

}  // namespace detail

inline QuadraticCoefficients annulus_quadratic_coeffs(ModeIndex mode,
                                                      const AnnulusModel& model) {
  if (mode.ell() < 1)
    throw std::domain_error(
        "annulus_quadratic_coeffs: requires ell >= 1 (the l = 0 sector is annulus_zero_mode)");
  const double l = static_cast<double>(mode.ell());
  const double tau = model.tau();
  const double beta = model.beta();
  const double big_k = 4.0 * l * (l + 1.0) * (l + 2.0);

  const double p = detail::p_factor_scaled(mode.ell(), tau);
  const double a = detail::a_factor_scaled(mode.ell(), tau);
  const double b = (big_k / beta) * p;
  // [cosh((2l+2)tau) - cosh(2 tau)] * e^{-(2l+2) tau} = expm1(-2(l+2)tau) expm1(-2l tau)/2
  const double q = 0.5 * std::expm1(-2.0 * (l + 2.0) * tau) * std::expm1(-2.0 * l * tau);
  const double c = -(big_k * big_k / (2.0 * beta)) * q;

  const double w_scaled = detail::w_factor_scaled(mode.ell(), tau) * std::exp(-l * tau);
  const double kb = big_k / beta;
  const double sqrt_disc =
      kb * std::hypot(std::sqrt(std::max(0.0, 1.0 - 4.0 * beta)) * p,
                      2.0 * std::sqrt(beta) * w_scaled);
  return {a, b, c, sqrt_disc, sqrt_disc * sqrt_disc, mode.ell(), tau, model.alpha()};
}

/// The two boundary eigenvalues (lambda_l^-, lambda_l^+) on level l >= 1,
/// both strictly positive.  The smaller root is taken as c/q, never through
/// the -b + sqrt(...) form, so it keeps full relative accuracy at large tau.
inline std::pair<double, double> annulus_eigenvalues(ModeIndex mode,
                                                     const AnnulusModel& model) {
  const QuadraticCoefficients qc = annulus_quadratic_coeffs(mode, model);
  if (qc.sqrt_discriminant_scaled < 0.0 || !std::isfinite(qc.sqrt_discriminant_scaled))
    throw numerical_error("annulus_eigenvalues: invalid discriminant at l=" +
                          std::to_string(qc.ell));
  const QuadraticRoots roots = stable_quadratic_roots_with_sqrt_discriminant(
      qc.a_scaled, qc.b_scaled, qc.c_scaled, qc.sqrt_discriminant_scaled);
  return {roots.lower, roots.upper};
}

/// The l = 0 sector: eigenvalue lambda_0^+ with its affine-0 eigenfunction
///   u_0^+(t) = sinh(2 tau)(sinh(2t) - 2t) + (1 - cosh(2 tau)) cosh(2t)
///              + 2(1 - alpha)(1 - cosh(2 tau) + tau sinh(2 tau)) - 1 + cosh(2 tau),
/// stored with exactly these coefficients (no unit normalization).
inline EigenPair annulus_zero_mode(const AnnulusModel& model) {
  const double tau = model.tau();
  const double alpha = model.alpha();
  const double lam = detail::lambda0_plus(tau, model.beta());
  const double ch = std::cosh(2.0 * tau);
  const double sh = std::sinh(2.0 * tau);
  const double g = 2.0 * std::sinh(tau) * detail::tcosh_minus_sinh(tau);
  RadialProfile profile = RadialProfile::affine_zero(
      {2.0 * (1.0 - alpha) * g - 1.0 + ch, -2.0 * sh, 1.0 - ch, sh});
  return {lam, ModeIndex(0), Branch::plus, 1, profile};
}

/// Radial eigenfunction u_l^{+-} = u_l^1 + (lambda alpha / (4 l (l+2)(l+1))) u_l^2
/// over the hyperbolic basis, with the printed coefficients.
inline RadialProfile annulus_eigenfunction(ModeIndex mode, Branch branch,
                                           const AnnulusModel& model) {
  if (branch != Branch::minus && branch != Branch::plus)
    throw std::domain_error("annulus_eigenfunction: branch must be minus or plus");
  if (mode.ell() < 1)
    throw std::domain_error("annulus_eigenfunction: requires ell >= 1");
  const auto [lam_minus, lam_plus] = annulus_eigenvalues(mode, model);
  const double lam = branch == Branch::minus ? lam_minus : lam_plus;
  const double l = static_cast<double>(mode.ell());
  const double tau = model.tau();
  const double shl = std::sinh(l * tau);
  const double shl2 = std::sinh((l + 2.0) * tau);
  const double chl = std::cosh(l * tau);
  const double chl2 = std::cosh((l + 2.0) * tau);
  const double kappa = lam * model.alpha() / (4.0 * l * (l + 2.0) * (l + 1.0));
  const double s12 = l * shl - (l + 2.0) * shl2;
  const double c12 = l * (l + 2.0) * (chl - chl2);
  return RadialProfile::hyperbolic(mode, {(l + 2.0) * shl2 - kappa * c12,
                                          kappa * s12 * (l + 2.0),
                                          -l * shl + kappa * c12,
                                          -kappa * s12 * l});
}

inline EigenPair annulus_eigenpair(ModeIndex mode, Branch branch, const AnnulusModel& model) {
  const auto [lam_minus, lam_plus] = annulus_eigenvalues(mode, model);
  return {branch == Branch::minus ? lam_minus : lam_plus, mode, branch, mode.multiplicity(),
          annulus_eigenfunction(mode, branch, model)};
}

/// Spectral-gap ratio F(beta, tau) = lambda_1^- / lambda_0^+.  Both carry
/// the same 1/beta prefactor, so F depends on alpha only through
/// beta = alpha (1 - alpha); alpha is recovered as the smaller root of
/// alpha(1-alpha) = beta.
inline double gap_ratio(double beta, double tau) {
  if (!(beta > 0.0) || !(beta <= 0.25) || !std::isfinite(beta))
    throw std::domain_error("gap_ratio: beta must lie in (0, 1/4]");
  const double alpha = 0.5 * (1.0 - std::sqrt(std::max(0.0, 1.0 - 4.0 * beta)));
  const AnnulusModel model(tau, alpha);
  return annulus_eigenvalues(ModeIndex(1), model).first /
         detail::lambda0_plus(tau, model.beta());
}

struct TauStarResult {
  double tau_star;
  long long crossing_count;
};

/// Smallest tau in [1e-3, 50] with F(beta, tau) = 1, located by a sign scan
/// of F - 1 over a 2000-point log-spaced grid followed by Brent, together
/// with the number of crossings the scan detected (reported, not assumed 1).
inline TauStarResult find_tau_star(double beta, const RootSpec& spec = {}) {
  constexpr int n = 2000;
  constexpr double lo = 1e-3, hi = 50.0;
  std::vector<double> grid(n);
  const double span = std::log(hi / lo);
  for (int i = 0; i < n; ++i)
    grid[i] = lo * std::exp(span * static_cast<double>(i) / (n - 1));
  grid.front() = lo;
  grid.back() = hi;
  auto excess = [beta](double tau) { return gap_ratio(beta, tau) - 1.0; };
  const auto brackets = bracket_scan(excess, std::span<const double>(grid));
  if (brackets.empty())
    throw numerical_error("find_tau_star: no crossing of F = 1 in [1e-3, 50]; F(lo) = " +
                          std::to_string(excess(lo) + 1.0) + ", F(hi) = " +
                          std::to_string(excess(hi) + 1.0));
  const auto& first = brackets.front();
  const double tau_star =
      first.lo == first.hi ? first.lo : brent_root(excess, first.lo, first.hi, spec);
  return {tau_star, static_cast<long long>(brackets.size())};
}

struct MonotonicityReport {
  struct Entry {
    long long ell;
    double lambda_minus;
  };
  struct Violation {
    long long ell_lower;
    long long ell_upper;
  };
  std::vector<Entry> values;        // lambda_l^- for l = 1..lmax
  std::vector<Violation> violations;  // adjacent pairs with no increase
  double lambda0_plus;              // for gap context
};

/// lambda_l^- for l = 1..lmax plus every adjacent pair that fails to
/// increase.  An empty violation list supports monotonicity in l.
inline MonotonicityReport scan_monotonicity(const AnnulusModel& model, long long lmax) {
  if (lmax < 2) throw std::domain_error("scan_monotonicity: lmax must be >= 2");
  MonotonicityReport report;
  report.lambda0_plus = detail::lambda0_plus(model.tau(), model.beta());
  report.values.reserve(static_cast<std::size_t>(lmax));
  for (long long l = 1; l <= lmax; ++l)
    report.values.push_back({l, annulus_eigenvalues(ModeIndex(l), model).first});
  for (std::size_t i = 0; i + 1 < report.values.size(); ++i)
    if (report.values[i + 1].lambda_minus <= report.values[i].lambda_minus)
      report.violations.push_back({report.values[i].ell, report.values[i + 1].ell});
  return report;
}

/// Result of a first-eigenvalue search.  For the annulus and cylinder the
/// candidate set is truncated at lmax and flagged as such; monotonicity in l
/// is scanned, not assumed.
struct FirstEigenvalue {
  EigenPair pair;
  bool truncated;
  long long lmax;
};

inline FirstEigenvalue first_nonzero_eigenvalue(const BallModel&, long long lmax) {
  if (lmax < 1) throw std::domain_error("first_nonzero_eigenvalue: lmax must be >= 1");
  long long best = 1;
  for (long long l = 2; l <= lmax; ++l)
    if (ball_eigenvalue(ModeIndex(l)) < ball_eigenvalue(ModeIndex(best))) best = l;
  const ModeIndex m(best);
  return {{ball_eigenvalue(m), m, Branch::plus, m.multiplicity(), ball_eigenfunction(m)},
          false,
          lmax};
}

inline FirstEigenvalue first_nonzero_eigenvalue(const CylinderModel& model, long long lmax) {
  if (lmax < 1) throw std::domain_error("first_nonzero_eigenvalue: lmax must be >= 1");
  long long best = 0;
  for (long long l = 1; l <= lmax; ++l)
    if (cylinder_eigenvalue(ModeIndex(l), model) < cylinder_eigenvalue(ModeIndex(best), model))
      best = l;
  const ModeIndex m(best);
  return {{cylinder_eigenvalue(m, model), m, Branch::cylinder, m.multiplicity(), std::nullopt},
          true,
          lmax};
}

inline FirstEigenvalue first_nonzero_eigenvalue(const AnnulusModel& model, long long lmax) {
  if (lmax < 1) throw std::domain_error("first_nonzero_eigenvalue: lmax must be >= 1");
  EigenPair best = annulus_zero_mode(model);
  for (long long l = 1; l <= lmax; ++l)
    if (annulus_eigenvalues(ModeIndex(l), model).first < best.value)
      best = annulus_eigenpair(ModeIndex(l), Branch::minus, model);
  return {best, true, lmax};
}

/// Explicit annulus bound constant c(rho, ratio): the rotationally invariant
/// eigenvalue of the comparison annulus with tau = -log(rho) and boundary
/// weight alpha = 1/(1 + ratio), times the normalized boundary volume 2 pi^2.
inline double annulus_bound_constant(double rho, double volume_ratio) {
  if (!(rho > 0.0 && rho < 1.0) || !std::isfinite(rho))
    throw std::domain_error("annulus_bound_constant: rho must lie in (0, 1)");
  const AnnulusModel model(-std::log(rho), alpha_from_volume_ratio(volume_ratio));
  return detail::lambda0_plus(model.tau(), model.beta()) * vol_s3();
}

}  // namespace paneitz
