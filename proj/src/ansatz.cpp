#include "glkdv/ansatz.hpp"

#include <cmath>
#include <stdexcept>

#include "glkdv/multiplier.hpp"

namespace glkdv {

SpectralField embed_scaled(const SpectralField& a, const GridPtr& fast, double eps,
                           int amp_pow) {
  const auto slow = a.grid;
  if (fast->n < slow->n)
    throw std::invalid_argument("embed_scaled: fast grid has fewer modes than the slow grid");
  if (std::abs(fast->length * eps - slow->length) > 1e-9 * slow->length)
    throw std::invalid_argument("embed_scaled: grid lengths violate fast = slow / eps");
  SpectralField out = SpectralField::zero(fast);
  const double amp = std::pow(eps, amp_pow - 1);
  const long ns = (long)slow->n, nf = (long)fast->n;
  for (long j = 0; j < ns; ++j) {
    const long js = j < ns / 2 ? j : j - ns;  // signed mode index
    const long jf = js >= 0 ? js : js + nf;
    out.coef[(std::size_t)jf] = amp * a.coef[(std::size_t)j];
  }
  return out;
}

SpectralField ansatz_b(const AnsatzCoefficients& co, const SpectralField& a, double eps,
                       int order) {
  SpectralField b = a;
  b *= co.nu0;
  if (order >= 1) {
    SpectralField d1 = apply_multiplier(a, deriv_symbol(1));
    d1 *= eps * co.nu1;
    b += d1;
    SpectralField d2 = apply_multiplier(a, deriv_symbol(2));
    d2 *= eps * eps * co.nu2;
    b += d2;
    SpectralField sq = padded_product(a, a);
    sq *= eps * eps * co.nu3;
    b += sq;
  }
  return b;
}

ModulationState build_ansatz(const AnsatzCoefficients& co, const SpectralField& a,
                             double eps, const GridPtr& fast, int order) {
  ModulationState v{embed_scaled(a, fast, eps, 2),
                    embed_scaled(ansatz_b(co, a, eps, order), fast, eps, 2)};
  return v;
}

ModulationState ansatz_time_derivative(const AnsatzCoefficients& co, const SpectralField& a,
                                       double eps, const GridPtr& fast, int order) {
  const SpectralField r = kdv_rhs(co, a);
  SpectralField db = r;
  db *= co.nu0;
  if (order >= 1) {
    SpectralField d1 = apply_multiplier(r, deriv_symbol(1));
    d1 *= eps * co.nu1;
    db += d1;
    SpectralField d2 = apply_multiplier(r, deriv_symbol(2));
    d2 *= eps * eps * co.nu2;
    db += d2;
    SpectralField cr = padded_product(a, r);
    cr *= 2.0 * eps * eps * co.nu3;
    db += cr;
  }
  ModulationState dv{embed_scaled(r, fast, eps, 5), embed_scaled(db, fast, eps, 5)};
  return dv;
}

ModulationState ansatz_residual(const CGLParams& p, const AnsatzCoefficients& co,
                                const SpectralField& a, const GridPtr& fast, int order) {
  ModulationState res = ansatz_time_derivative(co, a, p.eps, fast, order);
  const ModulationState v = build_ansatz(co, a, p.eps, fast, order);
  const ModulationState rhs = rhs_modulation(p, v, /*dealias=*/false);
  res.psi -= rhs.psi;
  res.s -= rhs.s;
  return res;
}

}  // namespace glkdv
