#pragma once
#include <string>

#include "glkdv/cgl_params.hpp"
#include "glkdv/field.hpp"
#include "glkdv/modulation.hpp"
#include "glkdv/steppers.hpp"

namespace glkdv {

// Constants of the amplitude-equation reduction. The slaving constants nu_j
// are evaluated at the parameters' sigma; the KdV coefficients gamma_* are the
// threshold values (functions of alpha, beta only):
//   d_tau A = gamma_lin d_xi^3 A + gamma_non d_xi(A^2),
//   gamma_lin = (beta-alpha)(1+alpha beta)/(1+beta^2),  gamma_non = beta-alpha.
struct AnsatzCoefficients {
  double alpha, beta, sigma, sigma_s, eps;
  double gamma_lin, gamma_non;
  double nu0, nu1, nu2, nu3;
  double c;
};

// Errors: alpha == beta (the reduction degenerates), 1 + alpha*beta <= 0.
AnsatzCoefficients make_coefficients(const CGLParams& p);

struct KdVState {
  SpectralField a;
  double tau = 0.0;
};

struct KdVConserved {
  double mass;      // int A dxi
  double momentum;  // int A^2 dxi
};
KdVConserved kdv_conserved(const SpectralField& a);

// Exact spatial right-hand side gamma_lin A''' + gamma_non (A^2)' with the
// quadratic term computed alias-free (padded product).
SpectralField kdv_rhs(const AnsatzCoefficients& co, const SpectralField& a);

using KdvObserver = std::function<void(double tau, const SpectralField& a)>;

SimStatus solve_kdv(const AnsatzCoefficients& co, KdVState& st, double tau_end,
                    const StepperConfig& cfg, double record_dtau = 0.0,
                    const KdvObserver& obs = nullptr);

// Initial-condition library: "cosine", "gaussian" (periodized), "sech2"
// (periodized). All profiles are shifted to zero mean so the wave-number
// field of the resulting ansatz satisfies the zero-mode policy.
SpectralField kdv_profile(const GridPtr& g, const std::string& name, double amplitude,
                          double width);

}  // namespace glkdv
