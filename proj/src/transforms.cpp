#include "glkdv/transforms.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "glkdv/spectral_analysis.hpp"

namespace glkdv {

void s_theta(SpectralField& first, Direction dir) {
  const auto& k = first.grid->k;
  for (int j = 0; j < first.grid->n; ++j) {
    const double a = std::abs(k[j]);
    const double m = a > 1.0 ? 1.0 / a : 1.0;
    first.coef[j] *= (dir == Direction::Forward ? m : 1.0 / m);
  }
}

void s_omega(SpectralField& f, double mu, Direction dir) {
  const auto& k = f.grid->k;
  const double sign = dir == Direction::Forward ? -1.0 : 1.0;
  int worst = -1;
  double worst_arg = 0.0;
  for (int j = 0; j < f.grid->n; ++j) {
    const double w = std::exp(sign * mu * std::abs(k[j]));
    const cplx v = f.coef[j] * w;
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      if (sign * mu * std::abs(k[j]) > worst_arg) {
        worst_arg = sign * mu * std::abs(k[j]);
        worst = j;
      }
      continue;
    }
    f.coef[j] = v;
  }
  if (worst >= 0)
    throw std::runtime_error("s_omega: overflow in amplifying direction at mode " +
                             std::to_string(worst) + " (k = " + std::to_string(k[worst]) +
                             ", mu|k| = " + std::to_string(mu * std::abs(k[worst])) + ")");
}

namespace {

struct DiagParts {
  cplx ups;        // upsilon(k)
  cplx one_minus;  // 1 - upsilon, cancellation-free
  cplx tg;         // theta / gamma
};

DiagParts diag_parts(const CGLParams& p, double k) {
  const cplx g = (p.alpha * k * k - cplx(0.0, 2.0 * k)) / p.sigma;
  const cplx u = std::sqrt(1.0 - g * g - 2.0 * p.beta * g);
  if (std::abs(u) < 1e-8)
    throw std::runtime_error("s_diag: near-singular upsilon at k = " + std::to_string(k));
  const double m = std::abs(k) > 1.0 ? 1.0 / std::abs(k) : 1.0;
  DiagParts d;
  d.ups = u;
  d.one_minus = g * (g + 2.0 * p.beta) / (1.0 + u);
  d.tg = cplx(0.0, m) * p.sigma / cplx(p.alpha * k, -2.0);
  return d;
}

}  // namespace

Mat2c s_diag_symbol(const CGLParams& p, double k) {
  const DiagParts d = diag_parts(p, k);
  return {1.0, -d.one_minus * d.tg, -1.0, (1.0 + d.ups) * d.tg};
}

Mat2c s_diag_inv_symbol(const CGLParams& p, double k) {
  const DiagParts d = diag_parts(p, k);
  const cplx gt = 1.0 / d.tg;
  const cplx s = 0.5 / d.ups;
  return {s * (1.0 + d.ups), s * d.one_minus, s * gt, s * gt};
}

void s_diag(SpectralField& first, SpectralField& second, const CGLParams& p, Direction dir) {
  if (first.grid != second.grid) throw std::invalid_argument("s_diag: grid mismatch");
  const auto& k = first.grid->k;
  for (int j = 0; j < first.grid->n; ++j) {
    const Mat2c m =
        dir == Direction::Forward ? s_diag_symbol(p, k[j]) : s_diag_inv_symbol(p, k[j]);
    const auto v = m.apply(first.coef[j], second.coef[j]);
    first.coef[j] = v[0];
    second.coef[j] = v[1];
  }
}

}  // namespace glkdv
