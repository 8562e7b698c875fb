#include "glkdv/cgl_params.hpp"
#include "glkdv/spectral_analysis.hpp"

#include <cmath>
#include <stdexcept>

namespace glkdv {

CGLParams CGLParams::from_zeta(double alpha, double beta, double zeta) {
  if (!(zeta > 0.0 && zeta < 1.0))
    throw std::domain_error("CGLParams: zeta must lie in (0,1)");
  CGLParams p;
  p.alpha = alpha;
  p.beta = beta;
  p.zeta = zeta;
  p.sigma = 1.0 / (zeta * zeta) - 1.0;
  p.psi0sq = 1.0 - zeta * zeta;
  p.r0 = 0.5 * std::log(p.psi0sq);
  p.omega0 = -alpha * zeta * zeta - beta * p.psi0sq;
  p.c = 2.0 * (alpha - beta);
  return p;
}

CGLParams CGLParams::from_sigma(double alpha, double beta, double sigma) {
  if (!(sigma > 0.0))
    throw std::domain_error("CGLParams: sigma must be positive");
  return from_zeta(alpha, beta, 1.0 / std::sqrt(1.0 + sigma));
}

CGLParams CGLParams::from_epsilon(double alpha, double beta, double eps) {
  const SidebandThreshold th = sideband_threshold(alpha, beta);
  if (!(eps >= 0.0) || eps * eps >= th.sigma_s)
    throw std::domain_error("CGLParams: need 0 <= eps^2 < sigma_s");
  CGLParams p = from_sigma(alpha, beta, th.sigma_s - eps * eps);
  p.eps = eps;
  return p;
}

}  // namespace glkdv
