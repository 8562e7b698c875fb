#include "glkdv/norms.hpp"

#include <cmath>

namespace glkdv {

namespace {
double norm2_sq(const SpectralField& f, const AnalyticNormParams& np) {
  double acc = 0.0;
  const auto& k = f.grid->k;
  for (int j = 0; j < f.grid->n; ++j) {
    const double a = std::norm(f.coef[j]);
    if (a == 0.0) continue;
    const double w =
        std::exp(2.0 * np.mu * std::abs(k[j])) * std::pow(1.0 + k[j] * k[j], np.s);
    acc += w * a;
  }
  return acc * f.grid->dk();
}
}  // namespace

double analytic_norm(const SpectralField& f, const AnalyticNormParams& np) {
  return std::sqrt(norm2_sq(f, np));
}

double analytic_norm(const SpectralField& a, const SpectralField& b,
                     const AnalyticNormParams& np) {
  return std::sqrt(norm2_sq(a, np) + norm2_sq(b, np));
}

double w_norm(const SpectralField& f, double mu, double m) {
  double acc = 0.0;
  const auto& k = f.grid->k;
  for (int j = 0; j < f.grid->n; ++j) {
    const double a = std::abs(f.coef[j]);
    if (a == 0.0) continue;
    acc += (1.0 + std::pow(std::abs(k[j]), m)) * std::exp(mu * std::abs(k[j])) * a;
  }
  return acc * f.grid->dk();
}

double l2_norm(const SpectralField& f) { return analytic_norm(f, {0.0, 0.0}); }

double sup_norm(const SpectralField& f) { return f.sup_abs(); }

}  // namespace glkdv
