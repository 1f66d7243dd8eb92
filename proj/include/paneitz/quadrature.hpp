#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "errors.hpp"
#include "geometry.hpp"

namespace paneitz {

/// Tolerances for adaptive Gauss-Legendre quadrature.  A panel is accepted
/// when its two-half refinement agrees with the single-panel value to within
/// rel_tol of the refined value plus the panel's share of abs_tol.
struct QuadratureSpec {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  int max_subdivisions = 40;   // maximum bisection depth
  int points_per_panel = 32;   // Gauss-Legendre nodes per panel
};

struct QuadratureResult {
  double value;
  double error_estimate;  // accumulated panel-halving disagreement
};

namespace detail {

struct GaussRule {
  std::vector<double> nodes;    // ascending on (-1, 1)
  std::vector<double> weights;
};

/// Nodes and weights of the n-point Gauss-Legendre rule by Newton iteration
/// on the Legendre recurrence.  Exact for polynomials of degree < 2n.
inline GaussRule gauss_legendre(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 1; i <= half; ++i) {
    double z = std::cos(pi * (i - 0.25) / (n + 0.5));
    double pn = 0.0, pn1 = 0.0;
    auto legendre = [n, &pn, &pn1](double x) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pn = p0;   // P_n(x)
      pn1 = p1;  // P_{n-1}(x)
    };
    for (int iter = 0; iter < 64; ++iter) {
      legendre(z);
      const double dpn = n * (z * pn - pn1) / (z * z - 1.0);
      const double dz = pn / dpn;
      z -= dz;
      if (std::abs(dz) < 4.0 * std::numeric_limits<double>::epsilon()) break;
    }
    legendre(z);
    const double dpn = n * (z * pn - pn1) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dpn * dpn);
    rule.nodes[i - 1] = -z;
    rule.nodes[n - i] = z;
    rule.weights[i - 1] = w;
    rule.weights[n - i] = w;
  }
  return rule;
}

template <class F>
double apply_rule(F&& f, const GaussRule& rule, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return sum * half;
}

template <class F>
void integrate_panel(F&& f, const GaussRule& rule, double a, double b, double coarse,
                     int depth, const QuadratureSpec& spec, double total_span,
                     double& value, double& error_acc) {
  const double mid = 0.5 * (a + b);
  const double left = apply_rule(f, rule, a, mid);
  const double right = apply_rule(f, rule, mid, b);
  const double fine = left + right;
  if (!std::isfinite(fine) || !std::isfinite(coarse))
    throw numerical_error("integrate: non-finite integrand value on panel");
  const double err = std::abs(fine - coarse);
  const double tol =
      std::max(spec.rel_tol * std::abs(fine), spec.abs_tol * ((b - a) / total_span));
  if (err <= tol) {
    value += fine;
    error_acc += err;
    return;
  }
  if (depth >= spec.max_subdivisions)
    throw numerical_error("integrate: panel did not converge within max_subdivisions",
                          value + fine, err);
  integrate_panel(f, rule, a, mid, left, depth + 1, spec, total_span, value, error_acc);
  integrate_panel(f, rule, mid, b, right, depth + 1, spec, total_span, value, error_acc);
}

}  // namespace detail

/// \int_a^b f, adaptive bisection with the panel-halving error estimate.
/// Deterministic arithmetic order (panels accumulate left to right).
template <class F>
QuadratureResult integrate_with_estimate(F&& f, double a, double b,
                                         const QuadratureSpec& spec = {}) {
  if (!(spec.rel_tol > 0.0) || !(spec.abs_tol > 0.0))
    throw std::domain_error("integrate: tolerances must be positive");
  if (spec.max_subdivisions < 1 || spec.points_per_panel < 1)
    throw std::domain_error("integrate: max_subdivisions and points_per_panel must be >= 1");
  if (!(a <= b)) throw std::domain_error("integrate: requires a <= b");
  if (a == b) return {0.0, 0.0};
  const detail::GaussRule rule = detail::gauss_legendre(spec.points_per_panel);
  double value = 0.0, error = 0.0;
  const double coarse = detail::apply_rule(f, rule, a, b);
  detail::integrate_panel(f, rule, a, b, coarse, 0, spec, b - a, value, error);
  return {value, error};
}

template <class F>
double integrate(F&& f, double a, double b, const QuadratureSpec& spec = {}) {
  return integrate_with_estimate(f, a, b, spec).value;
}

}  // namespace paneitz
