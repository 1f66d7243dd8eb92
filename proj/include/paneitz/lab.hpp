#pragma once

// Umbrella header: closed-form spectra of the fourth-order conformal
// boundary eigenvalue problem on the model 4-manifolds, the independent
// boundary-determinant oracle, and the Moebius calibration energies.

#include "errors.hpp"
#include "geometry.hpp"
#include "hersch_energy.hpp"
#include "model_spectra.hpp"
#include "ode_oracle.hpp"
#include "quadrature.hpp"
#include "radial_profile.hpp"
#include "roots.hpp"
