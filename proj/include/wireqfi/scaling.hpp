#pragma once

#include "wireqfi/types.hpp"

namespace wireqfi::scaling {

// y = exp(log_prefactor) * x^exponent, fitted by ordinary least squares in
// log-log space. Requires >= 4 points with x, y > 0.
struct PowerLawFit {
  Real exponent = 0.0;
  Real log_prefactor = 0.0;
  Real r2 = 0.0;
  Real stderr_exponent = 0.0;
};
PowerLawFit fit_power_law(const RealVector& x, const RealVector& y);

// y = a * x^(-mu) + b, fitted by Levenberg-Marquardt with a log-log seed.
// Requires >= 4 points.
struct GapLawFit {
  Real a = 0.0;
  Real mu = 0.0;
  Real b = 0.0;
  Real r2 = 0.0;
  Real stderr_mu = 0.0;
  int iterations = 0;
  bool converged = false;
};
GapLawFit fit_gap_law(const RealVector& x, const RealVector& y);

}  // namespace wireqfi::scaling
