#pragma once
#include "glkdv/cgl_params.hpp"
#include "glkdv/kdv.hpp"
#include "glkdv/modulation.hpp"

namespace glkdv {

// Rescaling map between the slow grid (length L) and the fast grid (length
// L/eps): the field eps^amp_pow * A(eps x) is represented exactly by copying
// coefficient j of A onto coefficient j of the fast grid, scaled by
// eps^(amp_pow-1). Requires fast->length * eps == slow length and fast->n >=
// slow->n.
SpectralField embed_scaled(const SpectralField& a, const GridPtr& fast, double eps,
                           int amp_pow);

// Slaved second component on the slow grid:
//   order 0: B = nu0 A
//   order 1: B = nu0 A + eps nu1 A' + eps^2 nu2 A'' + eps^2 nu3 A^2
// The quadratic term is computed alias-free.
SpectralField ansatz_b(const AnsatzCoefficients& co, const SpectralField& a, double eps,
                       int order);

// V_app = (eps^2 A(eps x), eps^2 B(eps x)).
ModulationState build_ansatz(const AnsatzCoefficients& co, const SpectralField& a,
                             double eps, const GridPtr& fast, int order);

// d/dt V_app, obtained by the chain rule through the amplitude equation:
// d_t [eps^2 A(eps x, eps^3 t)] = eps^5 (d_tau A)(eps x), d_tau A = kdv_rhs(A).
ModulationState ansatz_time_derivative(const AnsatzCoefficients& co, const SpectralField& a,
                                       double eps, const GridPtr& fast, int order);

// Res(V_app) = d_t V_app - L V_app - N(V_app), evaluated spectrally on the
// fast grid without dealiasing (the ansatz occupies only the low band).
ModulationState ansatz_residual(const CGLParams& p, const AnsatzCoefficients& co,
                                const SpectralField& a, const GridPtr& fast, int order);

}  // namespace glkdv
