#include "glkdv/kdv.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "glkdv/multiplier.hpp"
#include "glkdv/norms.hpp"
#include "glkdv/spectral_analysis.hpp"

namespace glkdv {

AnsatzCoefficients make_coefficients(const CGLParams& p) {
  if (p.alpha == p.beta)
    throw std::invalid_argument(
        "make_coefficients: alpha == beta degenerates the amplitude equation");
  if (1.0 + p.alpha * p.beta <= 0.0)
    throw std::invalid_argument("make_coefficients: requires 1 + alpha*beta > 0");
  AnsatzCoefficients co{};
  co.alpha = p.alpha;
  co.beta = p.beta;
  co.sigma = p.sigma;
  co.sigma_s = sideband_threshold(p.alpha, p.beta).sigma_s;
  co.eps = p.eps;
  co.c = p.c;
  co.gamma_lin = (p.beta - p.alpha) * (1.0 + p.alpha * p.beta) / (1.0 + p.beta * p.beta);
  co.gamma_non = p.beta - p.alpha;
  const double s = p.sigma;
  co.nu0 = -1.0 / s;
  co.nu1 = (2.0 * p.beta / s - p.alpha) / (2.0 * s);
  co.nu2 = (-1.0 / s - 2.0 * p.beta * co.nu1) / (2.0 * s);
  co.nu3 = (-2.0 / s - 1.0) / (2.0 * s);
  return co;
}

KdVConserved kdv_conserved(const SpectralField& a) {
  KdVConserved q{};
  q.mass = (a.mean() * (double)a.grid->length).real();
  const double l2 = l2_norm(a);
  q.momentum = l2 * l2;
  return q;
}

SpectralField kdv_rhs(const AnsatzCoefficients& co, const SpectralField& a) {
  SpectralField out = apply_multiplier(a, deriv_symbol(3));
  out *= co.gamma_lin;
  SpectralField sq = padded_product(a, a);
  apply_multiplier_inplace(sq, deriv_symbol(1));
  sq *= co.gamma_non;
  out += sq;
  return out;
}

SimStatus solve_kdv(const AnsatzCoefficients& co, KdVState& st, double tau_end,
                    const StepperConfig& cfg, double record_dtau, const KdvObserver& obs) {
  const auto g = st.a.grid;
  const double span = tau_end - st.tau;
  if (span <= 0.0) {
    if (obs) obs(st.tau, st.a);
    SimStatus done{};
    done.t_stop = st.tau;
    done.sup_at_stop = st.a.sup_abs();
    return done;
  }
  if (record_dtau <= 0.0) record_dtau = span;
  const int n_rec = (int)std::lround(span / record_dtau);
  if (n_rec < 1 || std::abs(n_rec * record_dtau - span) > 1e-9 * std::max(1.0, span))
    throw std::invalid_argument("solve_kdv: horizon is not an integer number of records");
  const int steps_per_rec = (int)std::ceil(record_dtau / cfg.dt - 1e-12);
  const double dt = record_dtau / steps_per_rec;

  std::vector<Etd4Scalar> tab(g->n);
  std::vector<cplx> lam(g->n);
  for (int j = 0; j < g->n; ++j) {
    const double k = g->k[j];
    lam[j] = cplx(0.0, -co.gamma_lin * k * k * k);
    tab[j] = etd4_scalar(lam[j], dt);
  }
  const auto mask = dealias_mask(*g);

  auto nonlin = [&](const std::vector<cplx>& u, std::vector<cplx>& out) {
    SpectralField f = SpectralField::from_coeffs(g, u);
    if (cfg.dealias) apply_mask(f, mask);
    auto vals = f.physical_real();
    for (auto& v : vals) v *= v;
    SpectralField sq = SpectralField::from_physical_real(g, vals);
    apply_multiplier_inplace(sq, deriv_symbol(1));
    sq *= co.gamma_non;
    if (cfg.dealias) apply_mask(sq, mask);
    out = std::move(sq.coef);
  };

  ImexBdf2Scalar imex;
  std::vector<cplx> prev, prev_n;
  bool have_prev = false;
  if (cfg.scheme == Scheme::ImexBdf2) imex = imex_tables_scalar(lam, dt);

  SimStatus status{};
  if (cfg.dealias) apply_mask(st.a, mask);
  st.a.enforce_real();
  if (obs) obs(st.tau, st.a);

  long step_idx = 0;
  for (int r = 0; r < n_rec; ++r) {
    for (int s = 0; s < steps_per_rec; ++s, ++step_idx) {
      if (cfg.scheme == Scheme::EtdRk4) {
        etd4_step_scalar(tab, st.a.coef, nonlin);
      } else if (!have_prev) {
        prev = st.a.coef;
        prev_n.resize(g->n);
        nonlin(prev, prev_n);
        etd4_step_scalar(tab, st.a.coef, nonlin);  // bootstrap
        have_prev = true;
      } else {
        std::vector<cplx> cur_n(g->n), rhs(g->n);
        nonlin(st.a.coef, cur_n);
        const double w = 2.0 * dt / 3.0;
        for (int j = 0; j < g->n; ++j)
          rhs[j] = (4.0 * st.a.coef[j] - prev[j]) / 3.0 + w * (2.0 * cur_n[j] - prev_n[j]);
        prev = st.a.coef;
        prev_n = std::move(cur_n);
        for (int j = 0; j < g->n; ++j) st.a.coef[j] = imex.inv[j] * rhs[j];
      }
      st.tau += dt;
      if (step_idx % cfg.guard_stride == 0 || s + 1 == steps_per_rec) {
        if (!st.a.finite()) {
          status.outcome = SimStatus::Outcome::NonFinite;
          status.t_stop = st.tau;
          status.sup_at_stop = std::numeric_limits<double>::quiet_NaN();
          return status;
        }
        const double sup = st.a.sup_abs();
        if (sup > cfg.guard_sup) {
          status.outcome = SimStatus::Outcome::GuardTripped;
          status.t_stop = st.tau;
          status.sup_at_stop = sup;
          return status;
        }
      }
    }
    st.a.enforce_real();
    if (obs) obs(st.tau, st.a);
  }
  status.t_stop = st.tau;
  status.sup_at_stop = st.a.sup_abs();
  return status;
}

SpectralField kdv_profile(const GridPtr& g, const std::string& name, double amplitude,
                          double width) {
  const double L = g->length;
  const auto xs = g->points();
  std::vector<double> vals(g->n);
  if (name == "cosine") {
    const double k1 = 2.0 * M_PI / L;
    for (int j = 0; j < g->n; ++j) vals[j] = amplitude * std::cos(k1 * xs[j]);
  } else if (name == "gaussian" || name == "sech2") {
    if (width <= 0.0) throw std::invalid_argument("kdv_profile: width must be positive");
    for (int j = 0; j < g->n; ++j) {
      const double x0 = xs[j] - 0.5 * L;
      double v = 0.0;
      for (int im = -3; im <= 3; ++im) {
        const double x = x0 + im * L;
        if (name == "gaussian") {
          v += amplitude * std::exp(-x * x / (2.0 * width * width));
        } else {
          const double ch = std::cosh(x / width);
          v += amplitude / (ch * ch);
        }
      }
      vals[j] = v;
    }
  } else {
    throw std::invalid_argument("kdv_profile: unknown profile '" + name + "'");
  }
  SpectralField a = SpectralField::from_physical_real(g, vals);
  a.coef[0] = 0.0;  // zero-mean shift; conserved exactly afterwards
  return a;
}

}  // namespace glkdv
