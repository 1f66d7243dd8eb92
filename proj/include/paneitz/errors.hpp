#pragma once

#include <stdexcept>
#include <string>

namespace paneitz {

/// Thrown when an iterative numerical procedure cannot reach its target
/// accuracy: quadrature non-convergence, root-search iteration caps,
/// overflow in scaled evaluation.  Carries the last estimate and the
/// associated error bound when the failing routine has one.
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}

  numerical_error(const std::string& what, double estimate, double error_bound)
      : std::runtime_error(what),
        estimate_(estimate),
        error_bound_(error_bound),
        has_estimate_(true) {}

  bool has_estimate() const noexcept { return has_estimate_; }
  double estimate() const noexcept { return estimate_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  double estimate_ = 0.0;
  double error_bound_ = 0.0;
  bool has_estimate_ = false;
};

}  // namespace paneitz
