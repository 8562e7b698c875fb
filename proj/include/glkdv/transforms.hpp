#pragma once
#include "glkdv/cgl_params.hpp"
#include "glkdv/field.hpp"
#include "glkdv/mat2.hpp"

namespace glkdv {

enum class Direction { Forward, Inverse };

// Weight transform S_theta: multiplies the first component of a pair by
// min{1, |k|^-1} (forward) or its reciprocal max{1, |k|} (inverse). The
// symbol equals 1 at k = 0, so both directions are regular there.
void s_theta(SpectralField& first, Direction dir);

// Exponential weight S_omega: multiplies a field by e^{-mu|k|} (forward,
// damping) or e^{+mu|k|} (inverse, amplifying). The amplifying direction is
// overflow-checked; the largest offending mode is reported.
void s_omega(SpectralField& f, double mu, Direction dir);

// Diagonalizer of the theta-transformed generator:
//   S_diag(k)      = [[1, -(1-upsilon) theta/gamma], [-1, (1+upsilon) theta/gamma]]
//   S_diag(k)^{-1} = 1/(2 upsilon) [[1+upsilon, 1-upsilon],
//                                   [gamma/theta, gamma/theta]]
// Both are evaluated through the cancellation-free forms
//   theta/gamma = i min{1,|k|^{-1}} sigma / (alpha k - 2i),
//   1 - upsilon = gamma (gamma + 2 beta) / (1 + upsilon),
// which are regular at k = 0 (theta/gamma -> -sigma/2, matching the analytic
// limit). Near-singular upsilon (|upsilon| < 1e-8) is reported with the
// offending k.
Mat2c s_diag_symbol(const CGLParams& p, double k);
Mat2c s_diag_inv_symbol(const CGLParams& p, double k);

// Applies S_diag (forward) or its inverse to a component pair.
void s_diag(SpectralField& first, SpectralField& second, const CGLParams& p, Direction dir);

}  // namespace glkdv
