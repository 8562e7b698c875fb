#pragma once
#include "glkdv/field.hpp"

namespace glkdv {

// Weighted Sobolev / Gevrey norm parameters: weight e^{2 mu |k|} (1+k^2)^s.
struct AnalyticNormParams {
  double mu = 0.0;
  double s = 0.0;
};

// sqrt( dk * sum_j e^{2 mu |k_j|} (1+k_j^2)^s |coef_j|^2 ).  On the uniform
// periodic k-lattice the rectangle sum is the trapezoid sum.
double analytic_norm(const SpectralField& f, const AnalyticNormParams& np);

// Pair version: sqrt of the sum of squared component norms.
double analytic_norm(const SpectralField& a, const SpectralField& b,
                     const AnalyticNormParams& np);

// Algebra norm: dk * sum_j (1 + |k_j|^m) e^{mu |k_j|} |coef_j|.
double w_norm(const SpectralField& f, double mu, double m);

double l2_norm(const SpectralField& f);
double sup_norm(const SpectralField& f);  // max_m |u(x_m)|

}  // namespace glkdv
