#include "glkdv/cgl_dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "glkdv/multiplier.hpp"

namespace glkdv {

cplx cgl_linear_symbol(const CGLParams& p, double k, CglFrame frame) {
  const cplx diff = -(cplx(1.0, p.alpha)) * k * k;
  if (frame == CglFrame::Lab) return 1.0 + diff;
  return (1.0 + p.sigma) + cplx(0.0, p.c * k) + diff;
}

double cgl_carrier_wavenumber(const CGLParams& p, CglFrame frame) {
  return frame == CglFrame::Lab ? p.zeta : 1.0;
}

double cgl_carrier_frequency(const CGLParams& p, CglFrame frame) {
  return frame == CglFrame::Lab ? p.omega0 : p.c + p.omega0 * (1.0 + p.sigma);
}

namespace {

double cubic_factor(const CGLParams& p, CglFrame frame) {
  return frame == CglFrame::Lab ? 1.0 : 1.0 + p.sigma;
}

void check_carrier_on_grid(double kc, const SpectralGrid& g) {
  const double idx = kc * g.length / (2.0 * 3.14159265358979323846);
  if (std::abs(idx - std::lround(idx)) > 1e-9)
    throw std::invalid_argument(
        "cgl: carrier wave number not representable on the grid (length must make "
        "k_c * L / 2pi an integer)");
}

}  // namespace

SpectralField rhs_cgl(const CGLParams& p, const SpectralField& psi, CglFrame frame,
                      bool dealias) {
  const auto& g = psi.grid;
  const auto P = psi.physical();
  std::vector<cplx> n(g->n);
  const cplx fac = -cubic_factor(p, frame) * cplx(1.0, p.beta);
  for (int j = 0; j < g->n; ++j) n[j] = fac * P[j] * std::norm(P[j]);
  SpectralField out = SpectralField::from_physical(g, n);
  if (dealias) apply_mask(out, dealias_mask(*g));
  for (int j = 0; j < g->n; ++j)
    out.coef[j] += cgl_linear_symbol(p, g->k[j], frame) * psi.coef[j];
  return out;
}

SpectralField cgl_wave_train(const CGLParams& p, const GridPtr& g, CglFrame frame,
                             double time) {
  const double kc = cgl_carrier_wavenumber(p, frame);
  check_carrier_on_grid(kc, *g);
  const double om = cgl_carrier_frequency(p, frame);
  const double amp = std::exp(p.r0);
  const auto xs = g->points();
  std::vector<cplx> vals(g->n);
  for (int j = 0; j < g->n; ++j)
    vals[j] = amp * std::exp(cplx(0.0, kc * xs[j] + om * time));
  return SpectralField::from_physical(g, vals);
}

SpectralField build_modulated_cgl(const CGLParams& p, const ModulationState& v,
                                  CglFrame frame, double phase0) {
  const auto& g = v.psi.grid;
  const double kc_comoving = 1.0;
  check_carrier_on_grid(kc_comoving, *g);
  const SpectralField phi = spectral_antiderivative(v.psi);
  const auto S = v.s.physical_real();
  const auto PH = phi.physical_real();
  const auto xs = g->points();
  const double amp = std::exp(p.r0);
  std::vector<cplx> vals(g->n);
  for (int j = 0; j < g->n; ++j)
    vals[j] = amp * std::exp(cplx(S[j], xs[j] + PH[j] + phase0));
  if (frame == CglFrame::CoMoving) return SpectralField::from_physical(g, vals);
  // Lab frame at T = 0: identical samples viewed on the stretched grid
  // X = x / zeta, where the carrier is zeta.
  const auto gx = SpectralGrid::make(g->n, g->length / p.zeta);
  return SpectralField::from_physical(gx, vals);
}

ModulationState extract_modulation(const CGLParams& p, const SpectralField& psi,
                                   CglFrame frame, double time) {
  const auto& g = psi.grid;
  SpectralField f = psi;
  GridPtr gout = g;
  if (frame == CglFrame::Lab) {
    // Translate by Delta = c*zeta*T so samples sit at co-moving positions,
    // then relabel onto the co-moving grid of length zeta * L.
    const double delta = p.c * p.zeta * time;
    for (int j = 0; j < g->n; ++j)
      f.coef[j] *= std::exp(cplx(0.0, g->k[j] * delta));
    gout = SpectralGrid::make(g->n, p.zeta * g->length);
  }
  const auto G = f.physical();
  const auto Gx = apply_multiplier(f, deriv_symbol(1)).physical();
  const double kc = cgl_carrier_wavenumber(p, frame);
  const double scale = frame == CglFrame::Lab ? p.zeta : 1.0;
  std::vector<double> svals(g->n), pvals(g->n);
  for (int j = 0; j < g->n; ++j) {
    const double mag = std::abs(G[j]);
    if (!(mag > 0.0))
      throw std::runtime_error("extract_modulation: field vanishes, log-amplitude undefined");
    svals[j] = std::log(mag) - p.r0;
    pvals[j] = ((Gx[j] / G[j]).imag() - kc) / scale;
  }
  ModulationState out;
  out.s = SpectralField::from_physical_real(gout, svals);
  out.psi = SpectralField::from_physical_real(gout, pvals);
  return out;
}

SimStatus simulate_cgl(const CGLParams& p, SpectralField& psi, double t_end,
                       const StepperConfig& cfg, CglFrame frame, double record_dt,
                       const CglObserver& obs) {
  const auto& g = psi.grid;
  if (record_dt <= 0.0) record_dt = t_end;

  int n_rec = 0;
  int steps_per_rec = 0;
  double dt = cfg.dt;
  if (t_end > 0.0) {
    n_rec = static_cast<int>(std::lround(t_end / record_dt));
    if (std::abs(n_rec * record_dt - t_end) > 1e-9 * std::max(1.0, t_end))
      throw std::invalid_argument("simulate_cgl: t_end must be a multiple of record_dt");
    steps_per_rec = static_cast<int>(std::ceil(record_dt / cfg.dt - 1e-12));
    dt = record_dt / steps_per_rec;
  }

  std::vector<Etd4Scalar> tab(g->n);
  std::vector<cplx> lam(g->n);
  for (int j = 0; j < g->n; ++j) {
    lam[j] = cgl_linear_symbol(p, g->k[j], frame);
    tab[j] = etd4_scalar(lam[j], dt);
  }

  const auto mask = dealias_mask(*g);
  const cplx fac = -cubic_factor(p, frame) * cplx(1.0, p.beta);
  auto nonlin = [&](const std::vector<cplx>& u, std::vector<cplx>& o) {
    const auto P = SpectralField::from_coeffs(g, u).physical();
    std::vector<cplx> nvals(g->n);
    for (int j = 0; j < g->n; ++j) nvals[j] = fac * P[j] * std::norm(P[j]);
    SpectralField nf = SpectralField::from_physical(g, nvals);
    if (cfg.dealias) apply_mask(nf, mask);
    o = std::move(nf.coef);
  };

  SimStatus st;
  if (obs) obs(0.0, psi);

  ImexBdf2Scalar imex;
  std::vector<cplx> prev, prevN;
  bool have_prev = false;
  if (cfg.scheme == Scheme::ImexBdf2) imex = imex_tables_scalar(lam, dt);

  int step_count = 0;
  for (int r = 1; r <= n_rec; ++r) {
    for (int sctr = 0; sctr < steps_per_rec; ++sctr) {
      if (cfg.scheme == Scheme::EtdRk4) {
        etd4_step_scalar(tab, psi.coef, nonlin);
      } else {
        if (!have_prev) {
          prev = psi.coef;
          prevN.resize(g->n);
          nonlin(prev, prevN);
          etd4_step_scalar(tab, psi.coef, nonlin);
          have_prev = true;
        } else {
          std::vector<cplx> curN(g->n);
          nonlin(psi.coef, curN);
          std::vector<cplx> rhs(g->n);
          const double w = 2.0 * dt / 3.0;
          for (int j = 0; j < g->n; ++j)
            rhs[j] = (4.0 * psi.coef[j] - prev[j]) / 3.0 + w * (2.0 * curN[j] - prevN[j]);
          prev = psi.coef;
          prevN = std::move(curN);
          for (int j = 0; j < g->n; ++j) psi.coef[j] = imex.inv[j] * rhs[j];
        }
      }
      ++step_count;
      if (step_count % cfg.guard_stride == 0 || sctr == steps_per_rec - 1) {
        const double t_now = (r - 1.0) * record_dt + (sctr + 1.0) * dt;
        if (!psi.finite()) {
          st.outcome = SimStatus::Outcome::NonFinite;
          st.t_stop = t_now;
          return st;
        }
        const double sup = psi.sup_abs();
        if (sup > cfg.guard_sup) {
          st.outcome = SimStatus::Outcome::GuardTripped;
          st.t_stop = t_now;
          st.sup_at_stop = sup;
          return st;
        }
      }
    }
    if (obs) obs(r * record_dt, psi);
  }
  st.t_stop = t_end;
  st.sup_at_stop = n_rec > 0 ? psi.sup_abs() : 0.0;
  return st;
}

}  // namespace glkdv
