#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>

#include "errors.hpp"
#include "geometry.hpp"

namespace paneitz {

enum class RadialBasis { hyperbolic, affine_zero, decaying_ball };
enum class Branch { zero, minus, plus, cylinder };

constexpr const char* to_string(Branch b) {
  switch (b) {
    case Branch::zero: return "zero";
    case Branch::minus: return "minus";
    case Branch::plus: return "plus";
    case Branch::cylinder: return "cylinder";
  }
  return "?";
}

constexpr const char* to_string(RadialBasis b) {
  switch (b) {
    case RadialBasis::hyperbolic: return "hyperbolic";
    case RadialBasis::affine_zero: return "affine-0";
    case RadialBasis::decaying_ball: return "decaying-ball";
  }
  return "?";
}

/// Radial factor of a separated solution, stored over an exact kernel basis
/// of the projected operator (d_tt - (l+2)^2)(d_tt - l^2):
///
///   hyperbolic     {cosh(l t), sinh(l t), cosh((l+2)t), sinh((l+2)t)}   l >= 1
///   affine-0       {1, t, cosh(2t), sinh(2t)}                           l  = 0
///   decaying-ball  {e^{-l t}, e^{-(l+2)t}}                              l >= 1
///
/// Evaluation and derivatives up to order 3 are analytic in the basis.
class RadialProfile {
 public:
  static RadialProfile hyperbolic(ModeIndex mode, const std::array<double, 4>& coeff) {
    if (mode.ell() < 1)
      throw std::domain_error("RadialProfile::hyperbolic: requires ell >= 1 (use affine_zero)");
    return RadialProfile(RadialBasis::hyperbolic, mode, {coeff[0], coeff[1], coeff[2], coeff[3]}, 4);
  }

  static RadialProfile affine_zero(const std::array<double, 4>& coeff) {
    return RadialProfile(RadialBasis::affine_zero, ModeIndex(0),
                         {coeff[0], coeff[1], coeff[2], coeff[3]}, 4);
  }

  static RadialProfile decaying_ball(ModeIndex mode, const std::array<double, 2>& coeff) {
    if (mode.ell() < 1)
      throw std::domain_error("RadialProfile::decaying_ball: requires ell >= 1");
    return RadialProfile(RadialBasis::decaying_ball, mode, {coeff[0], coeff[1], 0.0, 0.0}, 2);
  }

  static RadialProfile constant(double value = 1.0) {
    return affine_zero({value, 0.0, 0.0, 0.0});
  }

  RadialBasis basis() const noexcept { return basis_; }
  ModeIndex mode() const noexcept { return mode_; }
  std::span<const double> coefficients() const noexcept { return {coeff_.data(), arity_}; }

  double value(double t) const { return derivative(t, 0); }

  double derivative(double t, int order) const {
    if (order < 0 || order > 3)
      throw std::domain_error("RadialProfile: derivative order must lie in 0..3");
    const double l = static_cast<double>(mode_.ell());
    switch (basis_) {
      case RadialBasis::hyperbolic:
        return pair_derivative(l, coeff_[0], coeff_[1], t, order) +
               pair_derivative(l + 2.0, coeff_[2], coeff_[3], t, order);
      case RadialBasis::affine_zero: {
        double poly = 0.0;
        if (order == 0) poly = coeff_[0] + coeff_[1] * t;
        else if (order == 1) poly = coeff_[1];
        return poly + pair_derivative(2.0, coeff_[2], coeff_[3], t, order);
      }
      case RadialBasis::decaying_ball: {
        const double k1 = l, k2 = l + 2.0;
        return coeff_[0] * int_pow(-k1, order) * std::exp(-k1 * t) +
               coeff_[1] * int_pow(-k2, order) * std::exp(-k2 * t);
      }
    }
    return 0.0;
  }

  /// Upper envelope sum_i |c_i| |phi_i^(order)(t)| of the stored
  /// representation (orders 0..4): the backward-error scale against which
  /// residuals of this profile are meaningful.  (Hyperbolic profiles at
  /// large l*tau cancel across the whole domain; the function value can sit
  /// many orders below this envelope, and no double-precision check can
  /// resolve residuals below epsilon times it.)
  double derivative_magnitude(double t, int order) const {
    if (order < 0 || order > 4)
      throw std::domain_error("RadialProfile: magnitude order must lie in 0..4");
    const double l = static_cast<double>(mode_.ell());
    const double at = std::abs(t);
    switch (basis_) {
      case RadialBasis::hyperbolic:
        return (std::abs(coeff_[0]) + std::abs(coeff_[1])) * int_pow(l, order) *
                   std::cosh(l * at) +
               (std::abs(coeff_[2]) + std::abs(coeff_[3])) * int_pow(l + 2.0, order) *
                   std::cosh((l + 2.0) * at);
      case RadialBasis::affine_zero: {
        double poly = 0.0;
        if (order == 0) poly = std::abs(coeff_[0]) + std::abs(coeff_[1]) * at;
        else if (order == 1) poly = std::abs(coeff_[1]);
        return poly + (std::abs(coeff_[2]) + std::abs(coeff_[3])) * int_pow(2.0, order) *
                          std::cosh(2.0 * at);
      }
      case RadialBasis::decaying_ball:
        return std::abs(coeff_[0]) * int_pow(l, order) * std::exp(-l * t) +
               std::abs(coeff_[1]) * int_pow(l + 2.0, order) * std::exp(-(l + 2.0) * t);
    }
    return 0.0;
  }

 private:
  RadialProfile(RadialBasis basis, ModeIndex mode, std::array<double, 4> coeff,
                std::size_t arity)
      : basis_(basis), mode_(mode), coeff_(coeff), arity_(arity) {
    for (std::size_t i = 0; i < arity_; ++i)
      if (!std::isfinite(coeff_[i]))
        throw numerical_error("RadialProfile: non-finite coefficient (overflow upstream)");
  }

  static double int_pow(double x, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
  }

  // d^order/dt^order of c_even*cosh(kt) + c_odd*sinh(kt)
  static double pair_derivative(double k, double c_even, double c_odd, double t, int order) {
    const double kp = int_pow(k, order);
    if (order % 2 == 0) return kp * (c_even * std::cosh(k * t) + c_odd * std::sinh(k * t));
    return kp * (c_even * std::sinh(k * t) + c_odd * std::cosh(k * t));
  }

  RadialBasis basis_;
  ModeIndex mode_;
  std::array<double, 4> coeff_;
  std::size_t arity_;
};

/// An eigenvalue with its mode, branch tag, and multiplicity.  Ball and
/// annulus eigenfunctions are radial and carry a RadialProfile; cylinder
/// modes oscillate in t (they are not kernel elements of the projected
/// operator) and carry none.
struct EigenPair {
  double value;
  ModeIndex mode;
  Branch branch;
  long long multiplicity;
  std::optional<RadialProfile> profile;
};

}  // namespace paneitz
