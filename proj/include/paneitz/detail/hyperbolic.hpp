#pragma once

#include <cmath>
#include <limits>

// Overflow-safe and cancellation-free hyperbolic kernels shared by the
// spectra and the boundary-determinant oracle.

namespace paneitz::detail {

/// e^{-shift} * cosh(x) for 0 <= x <= shift, evaluated without overflow.
inline double cosh_scaled(double x, double shift) {
  return 0.5 * (std::exp(x - shift) + std::exp(-x - shift));
}

/// e^{-shift} * sinh(x) for 0 <= x <= shift.
inline double sinh_scaled(double x, double shift) {
  return 0.5 * (std::exp(x - shift) - std::exp(-x - shift));
}

/// t*cosh(t) - sinh(t), positive for t > 0.  The direct difference loses
/// ~t^2/3 of its digits near zero, so small arguments use the series
/// sum_{k>=1} 2k t^{2k+1} / (2k+1)!.
inline double tcosh_minus_sinh(double t) {
  if (t >= 0.5) return t * std::cosh(t) - std::sinh(t);
  const double t2 = t * t;
  double term = t * t2 / 3.0;  // k = 1
  double sum = term;
  for (int k = 2; k < 40; ++k) {
    // ratio of consecutive terms: t^2 * k / ((k-1)(2k)(2k+1))
    term *= t2 * k / (double(k - 1) * (2 * k) * (2 * k + 1));
    sum += term;
    if (term < sum * std::numeric_limits<double>::epsilon()) break;
  }
  return sum;
}

/// sinh((l+1)t)/sinh(t) - (l+1)  ==  U_l(cosh t) - U_l(1), evaluated through
/// the Chebyshev recurrence shifted by y = cosh(t) - 1.  Every addend is
/// nonnegative, so the result carries no cancellation; intended for
/// (l+1)*t <~ 1 where the direct difference of sinh values degrades.
inline double chebyshev_u_excess(long long l, double y) {
  if (l <= 0) return 0.0;
  double v_prev = 0.0;   // V_0
  double v_cur = 2.0 * y;  // V_1
  for (long long k = 1; k < l; ++k) {
    const double v_next = 2.0 * (1.0 + y) * v_cur - v_prev + 2.0 * y * double(k + 1);
    v_prev = v_cur;
    v_cur = v_next;
  }
  return v_cur;
}

}  // namespace paneitz::detail
