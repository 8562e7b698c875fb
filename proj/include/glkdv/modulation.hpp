#pragma once
#include <functional>

#include "glkdv/cgl_params.hpp"
#include "glkdv/field.hpp"
#include "glkdv/mat2.hpp"
#include "glkdv/steppers.hpp"

namespace glkdv {

// Local wave number / log amplitude pair (psi, s), stored spectrally on a
// common grid. Both are real fields.
struct ModulationState {
  SpectralField psi;
  SpectralField s;

  static ModulationState zero(const GridPtr& g) {
    return {SpectralField::zero(g), SpectralField::zero(g)};
  }
};

// Fourier symbol of the generator of the (psi, s) modulation system.
Mat2c lv_symbol(const CGLParams& p, double k);

// Symbol of the theta-transformed generator (first component weighted by
// min{1,|k|^{-1}}); similar to lv for k != 0 and regular at k = 0.
Mat2c ly_symbol(const CGLParams& p, double k);

// Diagonal damped-branch symbol diag(lambda_+ - eps^2 eta |k|,
//                                    lambda_- - eps^2 eta |k|).
Mat2c lz_symbol(const CGLParams& p, double k, double eta);

// Nonlinear tendency N(V):
//   N1 = d_x( alpha (d_x s)^2 - sigma beta h(s) - alpha psi^2 + 2 psi d_x s )
//   N2 =      (d_x s)^2 - sigma h(s) - psi^2 - 2 alpha psi d_x s
// with h(s) = e^{2s} - 1 - 2s evaluated by direct exponentiation (expm1).
void modulation_nonlinear(const CGLParams& p, const SpectralField& psi,
                          const SpectralField& s, SpectralField& n1, SpectralField& n2,
                          bool dealias);

// Full right-hand side L V + N(V) (diagnostic / residual use).
ModulationState rhs_modulation(const CGLParams& p, const ModulationState& v, bool dealias);

using PairObserver =
    std::function<void(double t, const ModulationState& v)>;

// Integrates the modulation system to t_end, invoking obs at t = 0 and every
// record_dt (dt is reduced if needed so records land on steps). A blow-up
// guard aborts when the physical sup of either component exceeds
// cfg.guard_sup; the abort is reported in the status, not thrown.
SimStatus simulate_modulation(const CGLParams& p, ModulationState& v, double t_end,
                              const StepperConfig& cfg, double record_dt = 0.0,
                              const PairObserver& obs = nullptr);

}  // namespace glkdv
