#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "detail/hyperbolic.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "model_spectra.hpp"
#include "radial_profile.hpp"
#include "roots.hpp"

// Independent verification of the closed-form spectra: the boundary
// conditions are assembled into a matrix over the exact solution basis of
// the projected interior equation, and eigenvalues are recovered as roots of
// its determinant.  Nothing here reuses the closed-form quadratic
// coefficients.

namespace paneitz {

enum class OracleDomain { annulus, ball, zero_mode };

/// One exact kernel element of (d_tt - (l+2)^2)(d_tt - l^2) with analytic
/// derivatives up to order 3.  derivative_scaled multiplies by e^{-shift}
/// without forming the (possibly overflowing) plain value first.
class OracleBasisFunction {
 public:
  enum class Kind { cosh_kt, sinh_kt, exp_neg_kt, one, linear_t };

  OracleBasisFunction(Kind kind, double rate) : kind_(kind), rate_(rate) {}

  Kind kind() const noexcept { return kind_; }
  double rate() const noexcept { return rate_; }

  double derivative(double t, int order) const { return derivative_scaled(t, order, 0.0); }

  double derivative_scaled(double t, int order, double shift) const {
    if (order < 0 || order > 3)
      throw std::domain_error("OracleBasisFunction: derivative order must lie in 0..3");
    const double k = rate_;
    switch (kind_) {
      case Kind::cosh_kt: {
        const double v = (order % 2 == 0) ? detail::cosh_scaled(k * t, shift)
                                          : detail::sinh_scaled(k * t, shift);
        return int_pow(k, order) * v;
      }
      case Kind::sinh_kt: {
        const double v = (order % 2 == 0) ? detail::sinh_scaled(k * t, shift)
                                          : detail::cosh_scaled(k * t, shift);
        return int_pow(k, order) * v;
      }
      case Kind::exp_neg_kt:
        return int_pow(-k, order) * std::exp(-k * t - shift);
      case Kind::one:
        return order == 0 ? std::exp(-shift) : 0.0;
      case Kind::linear_t:
        if (order == 0) return t * std::exp(-shift);
        return order == 1 ? std::exp(-shift) : 0.0;
    }
    return 0.0;
  }

 private:
  static double int_pow(double x, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
  }

  Kind kind_;
  double rate_;
};

/// Exact solution basis of the projected interior equation for the given
/// mode/domain pairing:
///   annulus, l >= 1 : {cosh(l t), sinh(l t), cosh((l+2)t), sinh((l+2)t)}
///   annulus, l = 0  : {1, t, cosh(2t), sinh(2t)}   (also OracleDomain::zero_mode)
///   ball,    l >= 1 : {e^{-l t}, e^{-(l+2)t}}      (decaying at t -> inf)
inline std::vector<OracleBasisFunction> solution_basis(ModeIndex mode, OracleDomain domain) {
  using Kind = OracleBasisFunction::Kind;
  const double l = static_cast<double>(mode.ell());
  switch (domain) {
    case OracleDomain::zero_mode:
      if (mode.ell() != 0)
        throw std::domain_error("solution_basis: zero_mode domain requires ell = 0");
      [[fallthrough]];
    case OracleDomain::annulus:
      if (mode.ell() == 0)
        return {{Kind::one, 0.0}, {Kind::linear_t, 0.0}, {Kind::cosh_kt, 2.0},
                {Kind::sinh_kt, 2.0}};
      return {{Kind::cosh_kt, l}, {Kind::sinh_kt, l}, {Kind::cosh_kt, l + 2.0},
              {Kind::sinh_kt, l + 2.0}};
    case OracleDomain::ball:
      if (mode.ell() == 0)
        throw std::domain_error(
            "solution_basis: the l = 0 ball solution with the Neumann condition is constant; "
            "no nontrivial decaying basis");
      return {{Kind::exp_neg_kt, l}, {Kind::exp_neg_kt, l + 2.0}};
  }
  throw std::domain_error("solution_basis: invalid domain");
}

/// Determinant together with the accumulated magnitude of its permutation
/// products; |value| / scale is the natural normalized size of a candidate
/// "zero" of the determinant.
struct DeterminantValue {
  double value;
  double scale;
};

namespace detail {

inline int permutation_sign(const std::array<int, 4>& p) {
  int inversions = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (p[i] > p[j]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

inline DeterminantValue det4_with_scale(const std::array<std::array<double, 4>, 4>& m) {
  double det = 0.0, scale = 0.0;
  std::array<int, 4> p{0, 1, 2, 3};
  do {
    const double prod = m[0][p[0]] * m[1][p[1]] * m[2][p[2]] * m[3][p[3]];
    det += permutation_sign(p) * prod;
    scale += std::abs(prod);
  } while (std::next_permutation(p.begin(), p.end()));
  return {det, scale};
}

inline DeterminantValue det2_with_scale(const std::array<std::array<double, 2>, 2>& m) {
  const double p1 = m[0][0] * m[1][1];
  const double p2 = m[0][1] * m[1][0];
  return {p1 - p2, std::abs(p1) + std::abs(p2)};
}

}  // namespace detail

/// Annulus boundary matrix at candidate eigenvalue lambda.  Rows, in order:
///   (1) u'(0) = 0
///   (2) u'(tau) = 0
///   (3) alpha^{-1}(u''' - (3 mu_l + 3) u')(0) - lambda u(0)
///   (4) -(1-alpha)^{-1}(u''' - (3 mu_l + 3) u')(tau) - lambda u(tau)
/// The sign flip in row 4 encodes the reversed outward normal at the inner
/// boundary.  Rows evaluated at tau carry the factor e^{-(l+2) tau}
/// (e^{-2 tau} for l = 0); row scaling by positive constants preserves the
/// zero set.
inline DeterminantValue char_determinant_with_scale(ModeIndex mode, const AnnulusModel& model,
                                                    double lambda) {
  if (!std::isfinite(lambda))
    throw std::domain_error("char_determinant: lambda must be finite");
  const auto basis = solution_basis(mode, OracleDomain::annulus);
  const double tau = model.tau();
  const double alpha = model.alpha();
  const double m3 = 3.0 * static_cast<double>(mode.laplace_eigenvalue()) + 3.0;
  const double shift = (mode.ell() == 0 ? 2.0 : static_cast<double>(mode.ell() + 2)) * tau;

  std::array<std::array<double, 4>, 4> m{};
  for (int j = 0; j < 4; ++j) {
    const auto& f = basis[static_cast<std::size_t>(j)];
    m[0][j] = f.derivative(0.0, 1);
    m[1][j] = f.derivative_scaled(tau, 1, shift);
    m[2][j] = (f.derivative(0.0, 3) - m3 * f.derivative(0.0, 1)) / alpha -
              lambda * f.derivative(0.0, 0);
    m[3][j] = -(f.derivative_scaled(tau, 3, shift) - m3 * f.derivative_scaled(tau, 1, shift)) /
                  (1.0 - alpha) -
              lambda * f.derivative_scaled(tau, 0, shift);
    for (int i = 0; i < 4; ++i)
      if (!std::isfinite(m[i][j]))
        throw numerical_error("char_determinant: boundary matrix overflow despite row scaling");
  }
  return detail::det4_with_scale(m);
}

/// Ball boundary matrix over the decaying basis: rows u'(0) = 0 and
/// (u''' - (3 mu_l + 3) u')(0) - lambda u(0).
inline DeterminantValue char_determinant_with_scale(ModeIndex mode, const BallModel&,
                                                    double lambda) {
  if (!std::isfinite(lambda))
    throw std::domain_error("char_determinant: lambda must be finite");
  const auto basis = solution_basis(mode, OracleDomain::ball);
  const double m3 = 3.0 * static_cast<double>(mode.laplace_eigenvalue()) + 3.0;
  std::array<std::array<double, 2>, 2> m{};
  for (int j = 0; j < 2; ++j) {
    const auto& f = basis[static_cast<std::size_t>(j)];
    m[0][j] = f.derivative(0.0, 1);
    m[1][j] = f.derivative(0.0, 3) - m3 * f.derivative(0.0, 1) - lambda * f.derivative(0.0, 0);
  }
  return detail::det2_with_scale(m);
}

inline double char_determinant(ModeIndex mode, const AnnulusModel& model, double lambda) {
  return char_determinant_with_scale(mode, model, lambda).value;
}

inline double char_determinant(ModeIndex mode, const BallModel& model, double lambda) {
  return char_determinant_with_scale(mode, model, lambda).value;
}

namespace detail {

inline std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> grid(static_cast<std::size_t>(n));
  const double span = std::log(hi / lo);
  for (int i = 0; i < n; ++i)
    grid[static_cast<std::size_t>(i)] = lo * std::exp(span * static_cast<double>(i) / (n - 1));
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

inline void push_unique_sorted(std::vector<double>& roots, double x) {
  for (double r : roots)
    if (std::abs(x - r) <= 1e-9 * std::max(std::abs(x), std::abs(r))) return;
  roots.push_back(x);
  std::sort(roots.begin(), roots.end());
}

template <class Det>
std::vector<double> scan_determinant_roots(Det&& det, double lo, double hi, int grid_points) {
  const auto grid = log_grid(lo, hi, grid_points);
  const auto brackets = bracket_scan(det, std::span<const double>(grid));
  std::vector<double> roots;
  for (const auto& br : brackets) {
    const double r = br.lo == br.hi ? br.lo : brent_root(det, br.lo, br.hi);
    push_unique_sorted(roots, r);
  }
  return roots;
}

}  // namespace detail

/// All determinant roots in (0, search_max], sorted ascending.  Primary
/// search: sign-change scan over a log-spaced grid (default 512 points,
/// spanning (1e-4 * scale, search_max] with scale the l = 0 eigenvalue
/// estimate) refined by Brent.  search_min > 0 overrides the lower end.
///
/// The determinant is exactly quadratic in lambda for l >= 1; when the two
/// roots lie closer than the scan can separate (they coalesce on the
/// symmetric annulus as l tau grows), a sign scan sees no crossing.  In that
/// case the quadratic is reconstructed exactly from three determinant
/// probes and its roots are kept only if the determinant itself certifies
/// them (normalized |det| <= 1e-8 at the candidate).
inline std::vector<double> oracle_eigenvalues(ModeIndex mode, const AnnulusModel& model,
                                              double search_max, int grid_points = 512,
                                              double search_min = 0.0) {
  if (!(search_max > 0.0) || !std::isfinite(search_max))
    throw std::domain_error("oracle_eigenvalues: search_max must be positive");
  if (grid_points < 16) throw std::domain_error("oracle_eigenvalues: grid_points must be >= 16");
  auto det = [&](double lam) { return char_determinant(mode, model, lam); };

  const double scale = detail::lambda0_plus(model.tau(), model.beta());
  double lo = search_min > 0.0 ? search_min : 1e-4 * scale;
  if (!(lo < search_max)) lo = search_max * 1e-8;

  std::vector<double> roots = detail::scan_determinant_roots(det, lo, search_max, grid_points);

  if (mode.ell() >= 1 && roots.size() < 2) {
    // The coarse scan cannot separate a root pair tighter than its spacing.
    // The determinant is exactly quadratic in lambda, so three wide probes
    // locate the vertex; a least-squares quadratic fit over a narrow window
    // there then recovers the pair.  Averaging over many samples pushes the
    // coefficient noise well below a single evaluation's, so the fit
    // resolves gaps down to ~1e-7 relative; a pair tighter than the fit's
    // own noise floor is certified as a tangent root by the normalized
    // determinant value at the vertex.
    const double r4 = std::pow(search_max / lo, 0.25);
    const double p1 = lo * r4, p2 = lo * r4 * r4, p3 = lo * r4 * r4 * r4;
    const double d1 = det(p1), d2 = det(p2), d3 = det(p3);
    const double s12 = (d2 - d1) / (p2 - p1);
    const double s23 = (d3 - d2) / (p3 - p2);
    const double qa = (s23 - s12) / (p3 - p1);
    const double qb = s12 - qa * (p1 + p2);
    const double vertex = qa != 0.0 ? -qb / (2.0 * qa) : 0.0;
    if (std::isfinite(vertex) && vertex > 0.0 && vertex <= search_max) {
      // fit det(vertex + halfwidth * x) ~ a x^2 + b x + c on x in [-1, 1];
      // the symmetric grid decouples the odd normal equation
      const double halfwidth = 0.01 * vertex;
      constexpr int n = 4001;
      double s2 = 0.0, s4 = 0.0, sd = 0.0, sdx = 0.0, sdx2 = 0.0;
      std::array<double, n> xs{}, ds{};
      for (int i = 0; i < n; ++i) {
        const double x = -1.0 + 2.0 * static_cast<double>(i) / (n - 1);
        const double d = det(vertex + halfwidth * x);
        xs[static_cast<std::size_t>(i)] = x;
        ds[static_cast<std::size_t>(i)] = d;
        s2 += x * x;
        s4 += x * x * x * x;
        sd += d;
        sdx += d * x;
        sdx2 += d * x * x;
      }
      const double den = s4 * n - s2 * s2;
      const double fa = (sdx2 * n - sd * s2) / den;
      const double fb = sdx / s2;
      const double fc = (s4 * sd - s2 * sdx2) / den;
      double rss = 0.0;
      for (int i = 0; i < n; ++i) {
        const double x = xs[static_cast<std::size_t>(i)];
        const double e = ds[static_cast<std::size_t>(i)] - ((fa * x + fb) * x + fc);
        rss += e * e;
      }
      const double rho = std::sqrt(rss / n);
      const double sigma_a = rho * std::sqrt(n / den);
      const double sigma_b = rho / std::sqrt(s2);
      const double sigma_c = rho * std::sqrt(s4 / den);
      const double disc = fb * fb - 4.0 * fa * fc;
      const double sigma_disc =
          2.0 * std::abs(fb) * sigma_b + 4.0 * (std::abs(fa) * sigma_c + std::abs(fc) * sigma_a);
      if (fa != 0.0 && disc > 9.0 * sigma_disc) {
        const QuadraticRoots xr = stable_quadratic_roots_with_discriminant(fa, fb, fc, disc);
        const double split = halfwidth * (xr.upper - xr.lower);
        // localize each root against its own slope by a linear fit over a
        // window of a quarter gap; averaging beats single-evaluation noise
        auto refine = [&](double r) {
          const double w = 0.25 * split;
          if (!(w > 0.0) || !(r - w > 0.0)) return r;
          constexpr int m = 2001;
          double t2 = 0.0, td = 0.0, tdx = 0.0;
          for (int i = 0; i < m; ++i) {
            const double x = -1.0 + 2.0 * static_cast<double>(i) / (m - 1);
            const double d = det(r + w * x);
            t2 += x * x;
            td += d;
            tdx += d * x;
          }
          const double slope = tdx / t2;
          if (slope == 0.0) return r;
          const double x_root = -(td / m) / slope;
          return std::abs(x_root) <= 2.0 ? r + w * x_root : r;
        };
        for (double x : {xr.lower, xr.upper}) {
          double lam = vertex + halfwidth * x;
          if (!(lam > 0.0 && lam <= search_max) || !std::isfinite(lam)) continue;
          lam = refine(lam);
          const DeterminantValue dv = char_determinant_with_scale(mode, model, lam);
          if (dv.scale > 0.0 && std::abs(dv.value) <= 1e-8 * dv.scale)
            detail::push_unique_sorted(roots, lam);
        }
      } else if (fa != 0.0) {
        const double lam = vertex - halfwidth * fb / (2.0 * fa);
        if (lam > 0.0 && lam <= search_max && std::isfinite(lam)) {
          const DeterminantValue dv = char_determinant_with_scale(mode, model, lam);
          if (dv.scale > 0.0 && std::abs(dv.value) <= 1e-8 * dv.scale)
            detail::push_unique_sorted(roots, lam);
        }
      }
    }
  }
  return roots;
}

inline std::vector<double> oracle_eigenvalues(ModeIndex mode, const BallModel& model,
                                              double search_max, int grid_points = 512,
                                              double search_min = 0.0) {
  if (!(search_max > 0.0) || !std::isfinite(search_max))
    throw std::domain_error("oracle_eigenvalues: search_max must be positive");
  if (grid_points < 16) throw std::domain_error("oracle_eigenvalues: grid_points must be >= 16");
  auto det = [&](double lam) { return char_determinant(mode, model, lam); };
  double lo = search_min > 0.0 ? search_min : 1e-4 * search_max;
  if (!(lo < search_max)) lo = search_max * 1e-8;
  return detail::scan_determinant_roots(det, lo, search_max, grid_points);
}

/// Residual report for an eigenpair: the worst finite-difference residual of
/// the projected fourth-order equation over a uniform grid, and per-boundary
/// first-order (u') and eigen-relation (B^3 u - lambda u) residuals from
/// analytic derivatives.  All residuals are relative to the largest term
/// magnitude of the same expression over the grid; an identically zero
/// expression reports 0.
struct BoundaryResidual {
  double b1;
  double eigen_relation;
};

struct ResidualReport {
  double ode_residual;
  std::vector<BoundaryResidual> boundary;  // one entry per boundary component
};

namespace detail {

template <class Eval>
double fd_second(Eval&& u, double t, double h) {
  return (u(t - h) - 2.0 * u(t) + u(t + h)) / (h * h);
}

template <class Eval>
double fd_fourth(Eval&& u, double t, double h) {
  return (u(t - 2.0 * h) - 4.0 * u(t - h) + 6.0 * u(t) - 4.0 * u(t + h) + u(t + 2.0 * h)) /
         (h * h * h * h);
}

inline double richardson2(double coarse, double fine) { return (4.0 * fine - coarse) / 3.0; }

inline double ode_residual_max(const RadialProfile& u, long long ell, double length,
                               int sample_count) {
  const double l = static_cast<double>(ell);
  const double k2 = (l + 2.0) * (l + 2.0) + l * l;
  const double k0 = (l + 2.0) * (l + 2.0) * l * l;
  // Step targeted at h * rate ~ 0.04: fourth differences are roundoff-
  // dominated below that and truncation-dominated much above; tying h to
  // sample_count would push small domains into the roundoff regime.
  const double h = std::min(0.04 / (l + 2.0), length / 16.0);
  auto eval = [&u](double t) { return u.value(t); };
  double worst = 0.0, scale = 0.0;
  for (int i = 0; i <= sample_count; ++i) {
    const double t = length * static_cast<double>(i) / sample_count;
    const double d2 = richardson2(fd_second(eval, t, h), fd_second(eval, t, 0.5 * h));
    const double d4 = richardson2(fd_fourth(eval, t, h), fd_fourth(eval, t, 0.5 * h));
    const double r = d4 - k2 * d2 + k0 * u.value(t);
    worst = std::max(worst, std::abs(r));
    // normalize against the representation envelope, not the (possibly
    // cancelling) profile values
    scale = std::max(scale, u.derivative_magnitude(t, 4) +
                                k2 * u.derivative_magnitude(t, 2) +
                                k0 * u.derivative_magnitude(t, 0));
  }
  return scale == 0.0 ? 0.0 : worst / scale;
}

inline double derivative_scale(const RadialProfile& u, double length, int sample_count) {
  double scale = 0.0;
  for (int i = 0; i <= sample_count; ++i) {
    const double t = length * static_cast<double>(i) / sample_count;
    scale = std::max(scale, u.derivative_magnitude(t, 1));
  }
  return scale;
}

inline double eigen_relation_residual(const RadialProfile& u, double lambda, double m3,
                                      double t, double weight) {
  const double b3 = weight * (u.derivative(t, 3) - m3 * u.derivative(t, 1));
  const double rhs = lambda * u.value(t);
  const double scale = std::abs(weight) * (u.derivative_magnitude(t, 3) +
                                           m3 * u.derivative_magnitude(t, 1)) +
                       std::abs(lambda) * u.derivative_magnitude(t, 0);
  return scale == 0.0 ? 0.0 : std::abs(b3 - rhs) / scale;
}

}  // namespace detail

inline ResidualReport residual_check(const EigenPair& pair, const AnnulusModel& model,
                                     int sample_count) {
  if (sample_count < 8) throw std::domain_error("residual_check: sample_count must be >= 8");
  if (!pair.profile)
    throw std::domain_error("residual_check: eigenpair carries no radial profile");
  const RadialProfile& u = *pair.profile;
  const double tau = model.tau();
  const double m3 = 3.0 * static_cast<double>(pair.mode.laplace_eigenvalue()) + 3.0;
  ResidualReport report;
  report.ode_residual = detail::ode_residual_max(u, pair.mode.ell(), tau, sample_count);
  const double dscale = detail::derivative_scale(u, tau, sample_count);
  auto b1 = [&](double t) {
    return dscale == 0.0 ? 0.0 : std::abs(u.derivative(t, 1)) / dscale;
  };
  report.boundary.push_back(
      {b1(0.0), detail::eigen_relation_residual(u, pair.value, m3, 0.0, 1.0 / model.alpha())});
  report.boundary.push_back(
      {b1(tau),
       detail::eigen_relation_residual(u, pair.value, m3, tau, -1.0 / (1.0 - model.alpha()))});
  return report;
}

inline ResidualReport residual_check(const EigenPair& pair, const BallModel&,
                                     int sample_count) {
  if (sample_count < 8) throw std::domain_error("residual_check: sample_count must be >= 8");
  if (!pair.profile)
    throw std::domain_error("residual_check: eigenpair carries no radial profile");
  const RadialProfile& u = *pair.profile;
  const double length = 1.0;  // decaying profiles; the boundary sits at t = 0
  const double m3 = 3.0 * static_cast<double>(pair.mode.laplace_eigenvalue()) + 3.0;
  ResidualReport report;
  report.ode_residual = detail::ode_residual_max(u, pair.mode.ell(), length, sample_count);
  const double dscale = detail::derivative_scale(u, length, sample_count);
  report.boundary.push_back(
      {dscale == 0.0 ? 0.0 : std::abs(u.derivative(0.0, 1)) / dscale,
       detail::eigen_relation_residual(u, pair.value, m3, 0.0, 1.0)});
  return report;
}

}  // namespace paneitz
