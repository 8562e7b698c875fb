#include "glkdv/modulation.hpp"

#include <cmath>
#include <stdexcept>

#include "glkdv/multiplier.hpp"
#include "glkdv/spectral_analysis.hpp"

namespace glkdv {

Mat2c lv_symbol(const CGLParams& p, double k) {
  const cplx ik(0.0, k);
  const double k2 = k * k;
  const cplx diag = -k2 + (p.c - 2.0 * p.alpha) * ik;
  return {diag, ik * (-2.0 * p.beta * p.sigma - p.alpha * k2) - 2.0 * k2,
          -p.alpha * ik - 2.0, diag - 2.0 * p.sigma};
}

Mat2c ly_symbol(const CGLParams& p, double k) {
  const cplx ik(0.0, k);
  const double k2 = k * k;
  const double m = std::abs(k) > 1.0 ? 1.0 / std::abs(k) : 1.0;
  const cplx diag = -k2 + (p.c - 2.0 * p.alpha) * ik;
  return {diag, ik * m * (-2.0 * p.beta * p.sigma + 2.0 * ik - p.alpha * k2),
          (-p.alpha * ik - 2.0) / m, diag - 2.0 * p.sigma};
}

Mat2c lz_symbol(const CGLParams& p, double k, double eta) {
  const DispersionSample d = eval_dispersion(p, k);
  const double damp = p.eps * p.eps * eta * std::abs(k);
  return Mat2c::diag(d.lambda_plus - damp, d.lambda_minus - damp);
}

void modulation_nonlinear(const CGLParams& p, const SpectralField& psi,
                          const SpectralField& s, SpectralField& n1, SpectralField& n2,
                          bool dealias) {
  const auto& g = psi.grid;
  const auto P = psi.physical_real();
  const auto S = s.physical_real();
  const auto SX = apply_multiplier(s, deriv_symbol(1)).physical_real();

  std::vector<double> g1(g->n), g2(g->n);
  for (int j = 0; j < g->n; ++j) {
    const double h = std::expm1(2.0 * S[j]) - 2.0 * S[j];
    const double sx2 = SX[j] * SX[j];
    const double p2 = P[j] * P[j];
    g1[j] = p.alpha * sx2 - p.sigma * p.beta * h - p.alpha * p2 + 2.0 * P[j] * SX[j];
    g2[j] = sx2 - p.sigma * h - p2 - 2.0 * p.alpha * P[j] * SX[j];
  }
  n1 = apply_multiplier(SpectralField::from_physical_real(g, g1), deriv_symbol(1));
  n2 = SpectralField::from_physical_real(g, g2);
  if (dealias) {
    const auto mask = dealias_mask(*g);
    apply_mask(n1, mask);
    apply_mask(n2, mask);
  }
}

ModulationState rhs_modulation(const CGLParams& p, const ModulationState& v, bool dealias) {
  ModulationState out = ModulationState::zero(v.psi.grid);
  modulation_nonlinear(p, v.psi, v.s, out.psi, out.s, dealias);
  const auto& k = v.psi.grid->k;
  for (int j = 0; j < v.psi.grid->n; ++j) {
    const Mat2c L = lv_symbol(p, k[j]);
    const auto lv = L.apply(v.psi.coef[j], v.s.coef[j]);
    out.psi.coef[j] += lv[0];
    out.s.coef[j] += lv[1];
  }
  return out;
}

namespace {

bool pair_finite(const ModulationState& v) { return v.psi.finite() && v.s.finite(); }

double pair_sup(const ModulationState& v) {
  return std::max(v.psi.sup_abs(), v.s.sup_abs());
}

}  // namespace

SimStatus simulate_modulation(const CGLParams& p, ModulationState& v, double t_end,
                              const StepperConfig& cfg, double record_dt,
                              const PairObserver& obs) {
  if (v.psi.grid != v.s.grid)
    throw std::invalid_argument("simulate_modulation: component grid mismatch");
  const auto& g = v.psi.grid;
  if (record_dt <= 0.0) record_dt = t_end;

  int n_rec = 0;
  int steps_per_rec = 0;
  double dt = cfg.dt;
  if (t_end > 0.0) {
    n_rec = static_cast<int>(std::lround(t_end / record_dt));
    if (std::abs(n_rec * record_dt - t_end) > 1e-9 * std::max(1.0, t_end))
      throw std::invalid_argument("simulate_modulation: t_end must be a multiple of record_dt");
    steps_per_rec = static_cast<int>(std::ceil(record_dt / cfg.dt - 1e-12));
    dt = record_dt / steps_per_rec;
  }

  if (cfg.dealias) {
    const auto mask = dealias_mask(*g);
    apply_mask(v.psi, mask);
    apply_mask(v.s, mask);
  }

  std::vector<Etd4Mat> tab(g->n);
  std::vector<Mat2c> lin(g->n);
  for (int j = 0; j < g->n; ++j) {
    lin[j] = lv_symbol(p, g->k[j]);
    tab[j] = etd4_mat(lin[j], dt);
    if (!std::isfinite(tab[j].E.max_abs()))
      throw std::runtime_error("simulate_modulation: non-finite propagator at setup");
  }

  auto nonlin = [&](const std::vector<cplx>& u1, const std::vector<cplx>& u2,
                    std::vector<cplx>& o1, std::vector<cplx>& o2) {
    const SpectralField f1 = SpectralField::from_coeffs(g, u1);
    const SpectralField f2 = SpectralField::from_coeffs(g, u2);
    SpectralField r1, r2;
    modulation_nonlinear(p, f1, f2, r1, r2, cfg.dealias);
    o1 = std::move(r1.coef);
    o2 = std::move(r2.coef);
  };

  SimStatus st;
  if (obs) obs(0.0, v);

  // IMEX-BDF2 history
  ImexBdf2Mat imex;
  std::vector<cplx> prev1, prev2, prevN1, prevN2;
  bool have_prev = false;
  if (cfg.scheme == Scheme::ImexBdf2) imex = imex_tables_mat(lin, dt);

  int step_count = 0;
  for (int r = 1; r <= n_rec; ++r) {
    for (int sctr = 0; sctr < steps_per_rec; ++sctr) {
      if (cfg.scheme == Scheme::EtdRk4) {
        etd4_step_pair(tab, v.psi.coef, v.s.coef, nonlin);
      } else {
        if (!have_prev) {
          prev1 = v.psi.coef;
          prev2 = v.s.coef;
          prevN1.resize(g->n);
          prevN2.resize(g->n);
          nonlin(prev1, prev2, prevN1, prevN2);
          etd4_step_pair(tab, v.psi.coef, v.s.coef, nonlin);  // bootstrap
          have_prev = true;
        } else {
          std::vector<cplx> curN1(g->n), curN2(g->n);
          nonlin(v.psi.coef, v.s.coef, curN1, curN2);
          std::vector<cplx> rhs1(g->n), rhs2(g->n);
          const double w = 2.0 * dt / 3.0;
          for (int j = 0; j < g->n; ++j) {
            rhs1[j] = (4.0 * v.psi.coef[j] - prev1[j]) / 3.0 + w * (2.0 * curN1[j] - prevN1[j]);
            rhs2[j] = (4.0 * v.s.coef[j] - prev2[j]) / 3.0 + w * (2.0 * curN2[j] - prevN2[j]);
          }
          prev1 = v.psi.coef;
          prev2 = v.s.coef;
          prevN1 = std::move(curN1);
          prevN2 = std::move(curN2);
          for (int j = 0; j < g->n; ++j) {
            const auto x = imex.inv[j].apply(rhs1[j], rhs2[j]);
            v.psi.coef[j] = x[0];
            v.s.coef[j] = x[1];
          }
        }
      }
      ++step_count;
      if (step_count % cfg.guard_stride == 0 || sctr == steps_per_rec - 1) {
        const double t_now = (r - 1.0) * record_dt + (sctr + 1.0) * dt;
        if (!pair_finite(v)) {
          st.outcome = SimStatus::Outcome::NonFinite;
          st.t_stop = t_now;
          return st;
        }
        const double sup = pair_sup(v);
        if (sup > cfg.guard_sup) {
          st.outcome = SimStatus::Outcome::GuardTripped;
          st.t_stop = t_now;
          st.sup_at_stop = sup;
          return st;
        }
      }
    }
    if (obs) obs(r * record_dt, v);
  }
  st.t_stop = t_end;
  st.sup_at_stop = n_rec > 0 ? pair_sup(v) : 0.0;
  return st;
}

}  // namespace glkdv
