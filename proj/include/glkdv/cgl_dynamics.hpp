#pragma once
#include "glkdv/cgl_params.hpp"
#include "glkdv/modulation.hpp"

namespace glkdv {

// Frames for the full Ginzburg-Landau field:
//   Lab       original (X,T) variables; linear symbol 1 - (1+i alpha) k^2,
//             wave train Psi0 e^{i(zeta X + omega0 T)}.
//   CoMoving  rescaled co-moving (x,t) = (zeta(X - c zeta T), zeta^2 T);
//             linear symbol (1+sigma) + i c k - (1+i alpha) k^2, wave train
//             Psi0 e^{i(x + omega_t t)} with omega_t = c + omega0 (1+sigma).
enum class CglFrame { Lab, CoMoving };

cplx cgl_linear_symbol(const CGLParams& p, double k, CglFrame frame);
double cgl_carrier_wavenumber(const CGLParams& p, CglFrame frame);  // zeta or 1
double cgl_carrier_frequency(const CGLParams& p, CglFrame frame);   // omega0 or omega_t

// Full tendency (linear + cubic term), dealiased when requested.
SpectralField rhs_cgl(const CGLParams& p, const SpectralField& psi, CglFrame frame,
                      bool dealias = true);

// Wave train sampled on a grid at the given frame time.
SpectralField cgl_wave_train(const CGLParams& p, const GridPtr& g, CglFrame frame,
                             double time);

// Psi = Psi0 exp(s + i(k_c x + phase0 + int_0^x psi dx')) at frame time 0.
// The modulation pair must live on a grid resolving the carrier exactly
// (k_c * length / 2pi integral); psi must be mean-free per the zero-mode
// policy of the spectral antiderivative.
SpectralField build_modulated_cgl(const CGLParams& p, const ModulationState& v,
                                  CglFrame frame = CglFrame::CoMoving,
                                  double phase0 = 0.0);

// Inverse map at frame time `time`: s = log|Psi| - r0 and the local wave
// number deviation. In the lab frame the field is first translated by
// c*zeta*T spectrally (exact for band-limited fields) so samples land on the
// co-moving grid; the result lives on that grid.
ModulationState extract_modulation(const CGLParams& p, const SpectralField& psi,
                                   CglFrame frame, double time);

using CglObserver = std::function<void(double t, const SpectralField& psi)>;

SimStatus simulate_cgl(const CGLParams& p, SpectralField& psi, double t_end,
                       const StepperConfig& cfg, CglFrame frame, double record_dt = 0.0,
                       const CglObserver& obs = nullptr);

}  // namespace glkdv
