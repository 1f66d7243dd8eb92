#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "errors.hpp"

namespace paneitz {

struct RootSpec {
  double rel_tol = 1e-12;   // relative width of the final bracket
  int max_iterations = 200;
};

/// Bracketed root finding (Brent: bisection / secant / inverse quadratic).
/// Requires f(lo) * f(hi) < 0 unless an endpoint is an exact zero; the
/// returned point never leaves [lo, hi].
template <class F>
double brent_root(F&& f, double lo, double hi, const RootSpec& spec = {}) {
  if (!(spec.rel_tol > 0.0) || spec.max_iterations < 1)
    throw std::domain_error("brent_root: invalid RootSpec");
  if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi))
    throw std::domain_error("brent_root: requires finite lo <= hi");

  double a = lo, b = hi;
  double fa = f(a), fb = f(b);
  if (!std::isfinite(fa) || !std::isfinite(fb))
    throw numerical_error("brent_root: non-finite function value at bracket endpoint");
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (fa * fb > 0.0)
    throw std::domain_error("brent_root: f(lo) and f(hi) do not bracket a root");

  double c = b, fc = fb;
  double d = 0.0, e = 0.0;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int iter = 0; iter < spec.max_iterations; ++iter) {
    if ((fb > 0.0 && fc > 0.0) || (fb < 0.0 && fc < 0.0)) {
      c = a;
      fc = fa;
      e = d = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol1 =
        2.0 * eps * std::abs(b) + 0.5 * spec.rel_tol * std::max(std::abs(b), 1e-300);
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0) return b;
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      const double s = fb / fa;
      double p, q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        q = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
        q = (q - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
      const double min2 = std::abs(e * q);
      if (2.0 * p < std::min(min1, min2)) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    if (std::abs(d) > tol1)
      b += d;
    else
      b += std::copysign(tol1, xm);
    fb = f(b);
    if (!std::isfinite(fb)) throw numerical_error("brent_root: non-finite function value");
  }
  throw numerical_error("brent_root: iteration limit reached", b, std::abs(c - b));
}

/// A sign-change interval from a grid scan; lo == hi marks an exact zero at
/// a grid point.
struct SignChangeInterval {
  double lo;
  double hi;
};

/// Every consecutive grid pair across which f changes sign, in ascending
/// order.  The grid must be strictly increasing with at least two points.
template <class F>
std::vector<SignChangeInterval> bracket_scan(F&& f, std::span<const double> grid) {
  if (grid.size() < 2) throw std::domain_error("bracket_scan: grid needs at least 2 points");
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    if (!(grid[i] < grid[i + 1]))
      throw std::domain_error("bracket_scan: grid must be strictly increasing");
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    values[i] = f(grid[i]);
    if (!std::isfinite(values[i]))
      throw numerical_error("bracket_scan: non-finite value at grid point " +
                            std::to_string(grid[i]));
  }
  std::vector<SignChangeInterval> result;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (values[i] == 0.0) result.push_back({grid[i], grid[i]});
    if (i + 1 < grid.size() && values[i] * values[i + 1] < 0.0)
      result.push_back({grid[i], grid[i + 1]});
  }
  return result;
}

struct QuadraticRoots {
  double lower;
  double upper;
};

/// Roots of a x^2 + b x + c with sqrt(b^2 - 4ac) supplied by the caller
/// (callers with an algebraically equivalent cancellation-free expression
/// for the discriminant pass its square root, which stays representable far
/// beyond the discriminant itself).  Uses q = -(b + sign(b) sqrt(disc))/2
/// and the pair {q/a, c/q}, so neither root suffers subtractive
/// cancellation.
inline QuadraticRoots stable_quadratic_roots_with_sqrt_discriminant(double a, double b,
                                                                    double c,
                                                                    double sqrt_disc) {
  if (a == 0.0 || !std::isfinite(a))
    throw std::domain_error("stable_quadratic_roots: degenerate quadratic (a == 0)");
  if (sqrt_disc < 0.0 || !std::isfinite(sqrt_disc))
    throw std::domain_error("stable_quadratic_roots: negative discriminant, no real roots");
  const double q = -0.5 * (b + (b == 0.0 ? sqrt_disc : std::copysign(sqrt_disc, b)));
  double r1, r2;
  if (q == 0.0) {
    // b == 0 and disc == 0 force c == 0: a double root at the origin
    r1 = r2 = 0.0;
  } else {
    r1 = q / a;
    r2 = c / q;
  }
  return {std::min(r1, r2), std::max(r1, r2)};
}

inline QuadraticRoots stable_quadratic_roots_with_discriminant(double a, double b, double c,
                                                               double discriminant) {
  if (discriminant < 0.0 || !std::isfinite(discriminant))
    throw std::domain_error("stable_quadratic_roots: negative discriminant, no real roots");
  return stable_quadratic_roots_with_sqrt_discriminant(a, b, c, std::sqrt(discriminant));
}

inline QuadraticRoots stable_quadratic_roots(double a, double b, double c) {
  return stable_quadratic_roots_with_discriminant(a, b, c, b * b - 4.0 * a * c);
}

}  // namespace paneitz
