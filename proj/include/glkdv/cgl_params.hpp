#pragma once
#include <complex>

namespace glkdv {

using cplx = std::complex<double>;

// Wave-train parameters of the complex Ginzburg-Landau equation
//   d_T Psi = (1+i*alpha) d_X^2 Psi + Psi - (1+i*beta) Psi |Psi|^2
// together with the co-moving rescaled frame x = zeta*(X - c*zeta*T),
// t = zeta^2*T used by the modulation equations.
struct CGLParams {
  double alpha = 0.0;
  double beta = 0.0;
  double zeta = 0.0;    // wave number of the underlying wave train, 0 < zeta < 1
  double sigma = 0.0;   // zeta^{-2} - 1 > 0
  double psi0sq = 0.0;  // squared amplitude, 1 - zeta^2
  double r0 = 0.0;      // log amplitude, 0.5*log(psi0sq)
  double omega0 = 0.0;  // frequency: omega0 = -alpha*zeta^2 - beta*psi0sq
  double c = 0.0;       // frame speed, 2*(alpha - beta)

  // eps distance to the sideband threshold when constructed marginally
  // (sigma = sigma_s - eps^2); zero otherwise.
  double eps = 0.0;

  static CGLParams from_zeta(double alpha, double beta, double zeta);
  static CGLParams from_sigma(double alpha, double beta, double sigma);
  // Marginal regime sigma = sigma_s(alpha,beta) - eps^2; requires 1+alpha*beta > 0
  // and eps^2 < sigma_s.
  static CGLParams from_epsilon(double alpha, double beta, double eps);
};

}  // namespace glkdv
