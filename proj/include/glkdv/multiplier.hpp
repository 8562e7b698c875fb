#pragma once
#include <functional>

#include "glkdv/field.hpp"

namespace glkdv {

// A Fourier multiplier is represented by its symbol k -> g(k).
using Symbol = std::function<cplx(double)>;

// Coefficient-wise product; a non-finite symbol value on a mode carrying a
// nonzero coefficient is an error (reported with the mode index).
SpectralField apply_multiplier(const SpectralField& f, const Symbol& sym);
void apply_multiplier_inplace(SpectralField& f, const Symbol& sym);

Symbol deriv_symbol(int order);  // (ik)^order
Symbol theta_hat();              // ik * min(1, 1/|k|)
Symbol theta_hat_power(double p);  // principal power of theta_hat

// 0/1 mask of the 2/3 dealiasing rule.
std::vector<double> dealias_mask(const SpectralGrid& g);
void apply_mask(SpectralField& f, const std::vector<double>& mask);

// Spectral antiderivative: divides by ik for k != 0. The k = 0 mode has no
// periodic antiderivative; the first component must be (near-)mean-free,
// |mean| <= tol, else a zero-mode policy error is thrown.
SpectralField spectral_antiderivative(const SpectralField& f, double mean_tol = 1e-10);

}  // namespace glkdv
