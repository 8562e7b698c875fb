#pragma once
#include <complex>
#include <vector>

#include "glkdv/grid.hpp"

namespace glkdv {

using cplx = std::complex<double>;

// A field stored by its Fourier coefficients in the continuum-consistent
// normalization
//   coef[j] ~ (1/sqrt(2 pi)) \int_0^L u(x) e^{-i k_j x} dx,
// so that sum_j |coef[j]|^2 dk = int |u|^2 dx (discrete Parseval) and spectral
// quantities approximate their whole-line counterparts on the periodic
// surrogate domain.
struct SpectralField {
  GridPtr grid;
  std::vector<cplx> coef;

  static SpectralField zero(const GridPtr& g);
  static SpectralField from_coeffs(const GridPtr& g, std::vector<cplx> c);
  static SpectralField from_physical(const GridPtr& g, const std::vector<cplx>& samples);
  static SpectralField from_physical_real(const GridPtr& g, const std::vector<double>& samples);

  std::vector<cplx> physical() const;
  std::vector<double> physical_real() const;  // real parts of physical()

  double sup_abs() const;   // max_m |u(x_m)|
  cplx mean() const;        // coef[0] * dk / sqrt(2 pi) * ... = average of u
  bool finite() const;      // all coefficients finite

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double a);
  SpectralField operator+(const SpectralField& o) const;
  SpectralField operator-(const SpectralField& o) const;
  SpectralField operator*(double a) const;

  // Project onto Hermitian symmetry (real physical field): coef[-j] = conj(coef[j]).
  void enforce_real();
};

// Unnormalized FFT layer (thread-safe; plans cached per size).
void fft_forward_raw(int n, const cplx* in, cplx* out);
void fft_inverse_raw(int n, const cplx* in, cplx* out);

// Pointwise product computed exactly via zero padding onto a doubled grid,
// then truncated back; no aliasing for inputs occupying up to half the band.
SpectralField padded_product(const SpectralField& a, const SpectralField& b);

}  // namespace glkdv
