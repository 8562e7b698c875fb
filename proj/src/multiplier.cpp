#include "glkdv/multiplier.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace glkdv {

void apply_multiplier_inplace(SpectralField& f, const Symbol& sym) {
  const auto& k = f.grid->k;
  for (int j = 0; j < f.grid->n; ++j) {
    const cplx s = sym(k[j]);
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
      if (std::abs(f.coef[j]) > 0.0)
        throw std::runtime_error("apply_multiplier: non-finite symbol on occupied mode " +
                                 std::to_string(j) + " (k = " + std::to_string(k[j]) + ")");
      f.coef[j] = 0.0;
      continue;
    }
    f.coef[j] *= s;
  }
}

SpectralField apply_multiplier(const SpectralField& f, const Symbol& sym) {
  SpectralField g = f;
  apply_multiplier_inplace(g, sym);
  return g;
}

Symbol deriv_symbol(int order) {
  return [order](double k) { return std::pow(cplx(0.0, k), order); };
}

Symbol theta_hat() {
  return [](double k) {
    const double m = std::abs(k) > 1.0 ? 1.0 / std::abs(k) : 1.0;
    return cplx(0.0, k * m);
  };
}

Symbol theta_hat_power(double p) {
  return [p](double k) {
    const double m = std::abs(k) > 1.0 ? 1.0 / std::abs(k) : 1.0;
    return std::pow(cplx(0.0, k * m), p);
  };
}

std::vector<double> dealias_mask(const SpectralGrid& g) {
  std::vector<double> mask(g.n, 0.0);
  const int cut = g.dealias_cut();
  for (int j = 0; j < g.n; ++j) {
    const int js = j < g.n / 2 ? j : j - g.n;
    if (std::abs(js) <= cut) mask[j] = 1.0;
  }
  return mask;
}

void apply_mask(SpectralField& f, const std::vector<double>& mask) {
  for (size_t j = 0; j < f.coef.size(); ++j) f.coef[j] *= mask[j];
}

SpectralField spectral_antiderivative(const SpectralField& f, double mean_tol) {
  if (std::abs(f.mean()) > mean_tol)
    throw std::runtime_error("spectral_antiderivative: zero-mode policy violated, |mean| = " +
                             std::to_string(std::abs(f.mean())));
  SpectralField g = f;
  g.coef[0] = 0.0;
  const auto& k = g.grid->k;
  for (int j = 1; j < g.grid->n; ++j) g.coef[j] /= cplx(0.0, k[j]);
  return g;
}

}  // namespace glkdv
