#include "glkdv/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <stdexcept>
#include <thread>

#include "glkdv/ansatz.hpp"
#include "glkdv/cgl_dynamics.hpp"
#include "glkdv/norms.hpp"
#include "glkdv/spectral_analysis.hpp"

namespace glkdv {

namespace {

GridPtr fast_grid(const SweepPlan& plan, double eps) {
  const int want = (int)std::ceil(plan.n_xi / eps);
  const int n = std::min(plan.n_x_cap, next_pow2(want));
  return SpectralGrid::make(n, plan.l_xi / eps);
}

double pair_sup_diff(const ModulationState& a, const ModulationState& b) {
  return std::max((a.psi - b.psi).sup_abs(), (a.s - b.s).sup_abs());
}

}  // namespace

double energy_constant(const std::vector<double>& times, const std::vector<double>& energy,
                       double eps) {
  if (times.size() != energy.size())
    throw std::invalid_argument("energy_constant: size mismatch");
  if (times.size() < 3) return 0.0;
  const double h = times[1] - times[0];
  if (h <= 0.0) throw std::invalid_argument("energy_constant: times must increase");
  double c = 0.0;
  for (std::size_t i = 1; i + 1 < times.size(); ++i) {
    const double de = (energy[i + 1] - energy[i - 1]) / (2.0 * h);
    c = std::max(c, de / (eps * eps * eps * (energy[i] + 1.0)));
  }
  return c;
}

EpsPoint run_eps_point(const SweepPlan& plan, double eps, int order) {
  const auto t0 = std::chrono::steady_clock::now();

  EpsPoint pt;
  pt.eps = eps;
  pt.tau1 = plan.tau1;

  const CGLParams p = CGLParams::from_epsilon(plan.alpha, plan.beta, eps);
  const AnsatzCoefficients co = make_coefficients(p);
  const auto gxi = SpectralGrid::make(plan.n_xi, plan.l_xi);
  const auto gx = fast_grid(plan, eps);
  pt.n_x = gx->n;

  SpectralField a0 = kdv_profile(gxi, plan.profile, plan.amplitude, plan.width);

  if (plan.tau1 <= 0.0) {  // zero horizon: ansatz equals the state by construction
    pt.times = {0.0};
    pt.sup_err_t = {0.0};
    pt.hm_err_t = {0.0};
    pt.energy_t = {0.0};
    pt.status.t_stop = 0.0;
    const ModulationState res0 = ansatz_residual(p, co, a0, gx, order);
    pt.res_sup = std::max(sup_norm(res0.psi), sup_norm(res0.s));
    pt.res_hm = analytic_norm(res0.psi, res0.s, {0.0, (double)plan.m_index});
    return pt;
  }

  pt.t_end = plan.tau1 / (eps * eps * eps);
  const double rec_dtau = plan.tau1 / plan.n_records;
  const double rec_dt = pt.t_end / plan.n_records;

  // Amplitude trajectory at the record times.
  std::vector<SpectralField> a_rec;
  a_rec.reserve(plan.n_records + 1);
  {
    KdVState st{a0, 0.0};
    StepperConfig kcfg;
    kcfg.dt = plan.kdv_dt;
    kcfg.guard_sup = 16.0 * std::max(1.0, plan.amplitude);
    const SimStatus ks = solve_kdv(co, st, plan.tau1, kcfg, rec_dtau,
                                   [&](double, const SpectralField& a) { a_rec.push_back(a); });
    if (!ks.ok()) throw std::runtime_error("run_eps_point: amplitude-equation run failed");
  }

  const AnalyticNormParams hm{0.0, (double)plan.m_index};
  // Energy normalization: R = (V - V_app)/eps^kappa is an O(1) envelope in
  // the scaled variable xi = eps x; its scaled-grid norm equals the fast-grid
  // norm divided by another eps^{1/2} (the dk measure shrinks with the domain
  // growing like 1/eps).  Without that factor E would not be eps-uniform even
  // when the error scales exactly as predicted.
  const double kap = std::pow(eps, plan.kappa + 0.5);

  ModulationState v = build_ansatz(co, a_rec[0], eps, gx, order);
  StepperConfig mcfg;
  mcfg.dt = plan.mod_dt;
  mcfg.scheme = plan.scheme;
  mcfg.guard_sup = plan.guard_sup;

  std::size_t rec_idx = 0;
  auto observer = [&](double t, const ModulationState& cur) {
    if (rec_idx >= a_rec.size()) return;
    const ModulationState va = build_ansatz(co, a_rec[rec_idx], eps, gx, order);
    const SpectralField dpsi = cur.psi - va.psi;
    const SpectralField ds = cur.s - va.s;
    const double se = std::max(sup_norm(dpsi), sup_norm(ds));
    const double he = analytic_norm(dpsi, ds, hm);
    const ModulationState res = ansatz_residual(p, co, a_rec[rec_idx], gx, order);
    pt.res_sup = std::max(pt.res_sup, std::max(sup_norm(res.psi), sup_norm(res.s)));
    pt.res_hm = std::max(pt.res_hm, analytic_norm(res.psi, res.s, hm));
    pt.times.push_back(t);
    pt.sup_err_t.push_back(se);
    pt.hm_err_t.push_back(he);
    const double r = he / kap;
    pt.energy_t.push_back(0.5 * r * r);
    ++rec_idx;
  };

  pt.status = simulate_modulation(p, v, pt.t_end, mcfg, rec_dt, observer);

  if (!pt.sup_err_t.empty()) {
    pt.sup_err = *std::max_element(pt.sup_err_t.begin(), pt.sup_err_t.end());
    pt.hm_err = *std::max_element(pt.hm_err_t.begin(), pt.hm_err_t.end());
  }
  if (pt.energy_t.size() >= 3 && pt.status.ok())
    pt.c_hat = energy_constant(pt.times, pt.energy_t, eps);

  pt.runtime_sec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return pt;
}

ValidationReport run_validation(const SweepPlan& plan, int order) {
  const Region region = classify_region(plan.alpha, plan.beta).region;
  if (region != Region::SidebandAs)
    throw std::invalid_argument("run_validation: (alpha, beta) is not sideband-stable");
  if (plan.alpha == plan.beta)
    throw std::invalid_argument("run_validation: alpha == beta degenerates the reduction");

  ValidationReport rep;
  rep.alpha = plan.alpha;
  rep.beta = plan.beta;
  rep.order = order;

  SweepPlan cur = plan;
  for (int attempt = 0;; ++attempt) {
    rep.points.clear();
    const int nthreads =
        plan.max_parallel > 0 ? plan.max_parallel : (int)std::thread::hardware_concurrency();
    if (nthreads > 1 && cur.epsilons.size() > 1) {
      std::vector<std::future<EpsPoint>> futs;
      for (double eps : cur.epsilons)
        futs.push_back(std::async(std::launch::async,
                                  [&cur, eps, order] { return run_eps_point(cur, eps, order); }));
      for (auto& f : futs) rep.points.push_back(f.get());
    } else {
      for (double eps : cur.epsilons) rep.points.push_back(run_eps_point(cur, eps, order));
    }
    const bool blew_up = std::any_of(rep.points.begin(), rep.points.end(),
                                     [](const EpsPoint& q) { return !q.status.ok(); });
    if (!blew_up || !plan.allow_halving || attempt >= plan.max_halvings) break;
    cur.tau1 *= 0.5;
    ++rep.halvings;
  }
  rep.tau1_achieved = cur.tau1;

  std::vector<double> es, sup, hm, rs, rh;
  for (const auto& q : rep.points) {
    if (!q.status.ok()) continue;
    es.push_back(q.eps);
    sup.push_back(q.sup_err);
    hm.push_back(q.hm_err);
    rs.push_back(q.res_sup);
    rh.push_back(q.res_hm);
  }
  rep.sup_fit = fit_loglog(es, sup);
  rep.hm_fit = fit_loglog(es, hm);
  rep.res_sup_fit = fit_loglog(es, rs);
  rep.res_hm_fit = fit_loglog(es, rh);

  double cmin = 0.0, cmax = 0.0;
  bool first = true;
  for (const auto& q : rep.points) {
    if (!q.status.ok()) continue;
    if (first) {
      cmin = cmax = q.c_hat;
      first = false;
    } else {
      cmin = std::min(cmin, q.c_hat);
      cmax = std::max(cmax, q.c_hat);
    }
  }
  rep.c_hat_ratio = cmin > 0.0 ? cmax / cmin : (cmax == 0.0 ? 1.0 : INFINITY);
  rep.c_hat_stable = rep.c_hat_ratio <= 2.0;
  return rep;
}

FailureDemo failure_demo(double alpha_ah, double beta_ah, const SweepPlan& plan) {
  FailureDemo demo;
  demo.region_is_ah = classify_region(alpha_ah, beta_ah).region == Region::HopfTuringAh;
  if (!demo.region_is_ah)
    throw std::invalid_argument("failure_demo: point is not in the Hopf-Turing region");
  if (plan.epsilons.empty()) throw std::invalid_argument("failure_demo: empty epsilon list");
  const double eps = plan.epsilons.front();

  // Spectral precheck: an O(1) unstable band at nonzero k.
  {
    const CGLParams p_ah = CGLParams::from_epsilon(alpha_ah, beta_ah, eps);
    for (int i = 0; i <= 4000; ++i) {
      const double k = -10.0 + 20.0 * i / 4000.0;
      demo.max_re_lambda_plus =
          std::max(demo.max_re_lambda_plus, eval_dispersion(p_ah, k).lambda_plus.real());
    }
  }

  SweepPlan ah = plan;
  ah.alpha = alpha_ah;
  ah.beta = beta_ah;
  ah.allow_halving = false;
  demo.ah_point = run_eps_point(ah, eps, 1);

  SweepPlan ctrl = plan;
  ctrl.allow_halving = false;
  demo.control_point = run_eps_point(ctrl, eps, 1);
  demo.control_ok = demo.control_point.status.ok();

  demo.guard_tripped = demo.ah_point.status.outcome == SimStatus::Outcome::GuardTripped ||
                       demo.ah_point.status.outcome == SimStatus::Outcome::NonFinite;
  if (demo.control_point.sup_err > 0.0)
    demo.escape_ratio = demo.ah_point.sup_err / demo.control_point.sup_err;
  demo.failure_demonstrated =
      demo.control_ok && (demo.guard_tripped || demo.escape_ratio >= 10.0);
  return demo;
}

EndToEndReport cgl_end_to_end(const SweepPlan& plan, int order, double eps, double t_end,
                              double x0) {
  if (t_end <= 0.0) throw std::invalid_argument("cgl_end_to_end: t_end must be positive");
  EndToEndReport rep;
  rep.eps = eps;
  rep.t_end = t_end;

  const CGLParams p = CGLParams::from_epsilon(plan.alpha, plan.beta, eps);
  const AnsatzCoefficients co = make_coefficients(p);
  const auto gxi = SpectralGrid::make(plan.n_xi, plan.l_xi);
  const auto gx = fast_grid(plan, eps);
  const SpectralField a0 = kdv_profile(gxi, plan.profile, plan.amplitude, plan.width);

  const int n_rec = plan.n_records;
  const double rec_dt = t_end / n_rec;
  const double rec_dtau = rec_dt * eps * eps * eps;

  std::vector<SpectralField> a_rec;
  {
    KdVState st{a0, 0.0};
    StepperConfig kcfg;
    kcfg.dt = std::min(plan.kdv_dt, rec_dtau);
    kcfg.guard_sup = 16.0 * std::max(1.0, plan.amplitude);
    if (!solve_kdv(co, st, t_end * eps * eps * eps, kcfg, rec_dtau,
                   [&](double, const SpectralField& a) { a_rec.push_back(a); })
             .ok())
      throw std::runtime_error("cgl_end_to_end: amplitude-equation run failed");
  }

  const ModulationState v0 = build_ansatz(co, a_rec[0], eps, gx, order);
  SpectralField psi = build_modulated_cgl(p, v0, CglFrame::CoMoving, 0.0);

  StepperConfig cfg;
  cfg.dt = plan.mod_dt;
  cfg.scheme = plan.scheme;
  cfg.guard_sup = 4.0;  // |Psi| stays near Psi0 <= 1

  std::vector<SpectralField> psi_rec;
  rep.cgl_status = simulate_cgl(p, psi, t_end, cfg, CglFrame::CoMoving, rec_dt,
                                [&](double, const SpectralField& f) { psi_rec.push_back(f); });

  ModulationState v = v0;
  std::vector<ModulationState> v_rec;
  StepperConfig mcfg = cfg;
  mcfg.guard_sup = plan.guard_sup;
  rep.mod_status = simulate_modulation(p, v, t_end, mcfg, rec_dt,
                                       [&](double, const ModulationState& m) {
                                         v_rec.push_back(m);
                                       });

  const std::size_t nr = std::min(psi_rec.size(), v_rec.size());
  const double omega = cgl_carrier_frequency(p, CglFrame::CoMoving);
  const auto xs = gx->points();
  int i0 = 0;
  for (int j = 1; j < gx->n; ++j)
    if (std::abs(xs[j] - x0) < std::abs(xs[i0] - x0)) i0 = j;

  double prev_raw = 0.0, prev_unwrapped = 0.0;
  for (std::size_t r = 0; r < nr; ++r) {
    const double t = r * rec_dt;
    const ModulationState w = extract_modulation(p, psi_rec[r], CglFrame::CoMoving, t);
    rep.chain_sup_err = std::max(rep.chain_sup_err, pair_sup_diff(w, v_rec[r]));

    // Global phase at x0 relative to the rotated modulated ansatz.
    const ModulationState va = build_ansatz(co, a_rec[std::min(r, a_rec.size() - 1)], eps, gx, order);
    SpectralField app = build_modulated_cgl(p, va, CglFrame::CoMoving, 0.0);
    const cplx rot = std::polar(1.0, omega * t);
    const cplx zt = psi_rec[r].physical()[i0];
    const cplx za = app.physical()[i0] * rot;
    const double raw = std::arg(zt * std::conj(za));
    if (r == 0) {
      prev_raw = raw;
      prev_unwrapped = raw;
    } else {
      double d = raw - prev_raw;
      while (d > M_PI) d -= 2.0 * M_PI;
      while (d < -M_PI) d += 2.0 * M_PI;
      prev_unwrapped += d;
      prev_raw = raw;
    }
    rep.phase_times.push_back(t);
    rep.phase_x0.push_back(prev_unwrapped);
    rep.max_abs_phase = std::max(rep.max_abs_phase, std::abs(prev_unwrapped));

    if (r + 1 == nr) {
      // Final-time pointwise profile of |e^{-i phi(x0)} Psi - Psi_app| vs
      // window radius around x0.
      const auto pv = psi_rec[r].physical();
      const auto av = app.physical();
      const cplx pin = std::polar(1.0, -prev_unwrapped);
      const double L = gx->length;
      std::vector<double> err(gx->n);
      for (int j = 0; j < gx->n; ++j) err[j] = std::abs(pv[j] * pin - av[j] * rot);
      for (double frac : {0.0, 1.0 / 32.0, 1.0 / 16.0, 1.0 / 8.0, 1.0 / 4.0, 1.0 / 2.0}) {
        const double w_rad = frac * L;
        double m = 0.0;
        for (int j = 0; j < gx->n; ++j) {
          double d = std::abs(xs[j] - xs[i0]);
          d = std::min(d, L - d);
          if (d <= w_rad + 1e-12) m = std::max(m, err[j]);
        }
        rep.window_w.push_back(w_rad);
        rep.window_err.push_back(m);
      }
      rep.window_fit = fit_linear(rep.window_w, rep.window_err);
    }
  }
  return rep;
}

}  // namespace glkdv
