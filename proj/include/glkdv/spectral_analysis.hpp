#pragma once
#include <vector>

#include "glkdv/cgl_params.hpp"
#include "glkdv/mat2.hpp"

namespace glkdv {

// Both eigenvalue branches of the linearization about the wave train at
// sideband wave number k, plus the square-root factor they came from.
struct DispersionSample {
  cplx lambda_plus;
  cplx lambda_minus;
  cplx upsilon;  // principal branch, Re(upsilon) > 0 enforced
};

// Small-k expansion of the critical branch,
//   lambda_plus(k) = c1*i*k - c2*k^2 + c3*i*k^3 - c4*k^4 + O(k^5),
// evaluated at the parameters' sigma, plus the threshold constants c3s, c4s
// (their values at sigma = sigma_s, functions of alpha, beta only).
struct ExpansionCoefficients {
  double c1, c2, c3, c4;
  double c3s, c4s;
};

struct SidebandThreshold {
  double sigma_s;  // 2*(1+beta^2)/(1+alpha*beta)
  double zeta_s;   // sqrt((1+alpha*beta)/(2*(1+beta^2)+1+alpha*beta))
};

enum class Region {
  SidebandAs,            // sideband-stable set (KdV regime lives on its threshold)
  HopfTuringAh,          // O(1) instability at a nonzero wave number
  UnstableHalfPlane,     // 1 + alpha*beta <= 0
  BoundaryIndeterminate  // within tolerance of a region boundary
};

struct RegionVerdict {
  Region region = Region::BoundaryIndeterminate;
  bool has_r_bound = false;  // true when the r(beta/alpha) clause was evaluated
  double r_bound = 0.0;      // finite r(beta/alpha) value when has_r_bound
};

// Stability-bound check of both branches on a k-grid:
//   Re lambda_minus(k) <= -sigma_s/2 - k^2      (margin reported)
//   Re lambda_plus(k)  <= C * eps^3 * |k|       (smallest such C >= 0 reported)
struct SpectralBoundReport {
  bool minus_ok = false;      // lower-branch bound holds on the whole grid
  double minus_margin = 0.0;  // min over grid of (-sigma_s/2 - k^2 - Re lambda_minus)
  double C_plus = 0.0;        // max(0, max_{k != 0} Re lambda_plus / (eps^3 |k|))
  double k_worst = 0.0;       // grid point attaining C_plus
  double max_re_plus = 0.0;   // max over grid of Re lambda_plus
};

// Fourier symbol of the linearized phase/log-amplitude system at wave number k.
Mat2c eval_symbol(const CGLParams& p, double k);

// Closed-form eigenvalue branches; throws if the principal square root fails
// Re(upsilon) > 0 (cannot happen for real k, checked defensively).
DispersionSample eval_dispersion(const CGLParams& p, double k);

ExpansionCoefficients expansion_coeffs(const CGLParams& p);

// Same coefficients from high-order central finite differences of
// lambda_plus at k = 0; numerical cross-check of the closed forms.  The step
// is h_frac times the estimated convergence radius of the symbol's
// square-root branch, so accuracy is uniform in sigma.
ExpansionCoefficients expansion_coeffs_fd(const CGLParams& p, double h_frac = 1.0 / 32.0);

// Requires 1 + alpha*beta > 0.
SidebandThreshold sideband_threshold(double alpha, double beta);

// Magnitude bound of the sideband-stable set along rays beta = z*alpha.
// Branches: z^{-1/2} on (0,1/3]; the unique positive root of
// r^4 z^2 (4z-3) + r^2 (5z^2-4z+1) + 1 = 0 on (1/3,3/4) (closed form via the
// quadratic in r^2); +infinity on [3/4,1). Domain (0,1).
double r_of_z(double z);

RegionVerdict classify_region(double alpha, double beta, double tol = 1e-9);

SpectralBoundReport check_spectral_bounds(const CGLParams& p,
                                          const std::vector<double>& kgrid);

}  // namespace glkdv
