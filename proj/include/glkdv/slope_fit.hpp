#pragma once
#include <vector>

namespace glkdv {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;  // defined for n >= 3 (n-2 residual dof)
  double r2 = 0.0;
  int n = 0;
  bool valid = false;
};

// Ordinary least squares y ~ intercept + slope * x (valid for n >= 2).
LinearFit fit_linear(const std::vector<double>& x, const std::vector<double>& y);

// Least squares on (log x, log y); requires >= 3 strictly positive points.
LinearFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace glkdv
