#include "glkdv/hierarchy.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "glkdv/multiplier.hpp"
#include "glkdv/norms.hpp"

namespace glkdv {

CoefficientTable default_coefficient_table(const AnsatzCoefficients& co) {
  CoefficientTable t;
  LevelSpec l1;
  // f_{A,1} = 0; the refinement enters through the initial condition
  // A_1(0) = (beta/sigma_s) d_xi A0, a translation mode of the linearized flow.
  l1.has_a_init = true;
  l1.a_init.terms.push_back({co.beta / co.sigma_s, 0, {{'A', 0, 1}}});
  // f_{B,0} = (2 + sigma_s) A0^2  =>  B0 = (1/sigma_s + 1/2) A0^2.
  l1.f_b_prev.terms.push_back({2.0 + co.sigma_s, 0, {{'A', 0, 0}, {'A', 0, 0}}});
  t.levels[1] = l1;
  return t;
}

namespace {

ForcingFactor parse_factor(const nlohmann::json& j) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "field" && it.key() != "level" && it.key() != "deriv")
      throw std::invalid_argument("coefficient table: unknown factor key '" + it.key() + "'");
  ForcingFactor f;
  const std::string field = j.at("field").get<std::string>();
  if (field != "A" && field != "B")
    throw std::invalid_argument("coefficient table: factor field must be 'A' or 'B'");
  f.kind = field[0];
  f.level = j.at("level").get<int>();
  f.deriv = j.at("deriv").get<int>();
  if (f.level < 0 || f.deriv < 0)
    throw std::invalid_argument("coefficient table: negative level or deriv");
  return f;
}

ForcingExpr parse_expr(const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("coefficient table: expression must be an array");
  ForcingExpr e;
  for (const auto& jt : j) {
    for (auto it = jt.begin(); it != jt.end(); ++it)
      if (it.key() != "coef" && it.key() != "outer_deriv" && it.key() != "factors")
        throw std::invalid_argument("coefficient table: unknown term key '" + it.key() + "'");
    ForcingTerm t;
    t.coef = jt.at("coef").get<double>();
    t.outer_deriv = jt.value("outer_deriv", 0);
    if (t.outer_deriv < 0) throw std::invalid_argument("coefficient table: negative outer_deriv");
    for (const auto& jf : jt.at("factors")) t.factors.push_back(parse_factor(jf));
    if (t.factors.empty())
      throw std::invalid_argument("coefficient table: term needs at least one factor");
    e.terms.push_back(std::move(t));
  }
  return e;
}

}  // namespace

CoefficientTable parse_coefficient_table(const nlohmann::json& j) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "levels")
      throw std::invalid_argument("coefficient table: unknown key '" + it.key() + "'");
  CoefficientTable t;
  for (const auto& jl : j.at("levels")) {
    for (auto it = jl.begin(); it != jl.end(); ++it)
      if (it.key() != "m" && it.key() != "f_a" && it.key() != "f_b_prev" && it.key() != "a_init")
        throw std::invalid_argument("coefficient table: unknown level key '" + it.key() + "'");
    const int m = jl.at("m").get<int>();
    if (m < 1) throw std::invalid_argument("coefficient table: level index m must be >= 1");
    LevelSpec spec;
    spec.f_a = parse_expr(jl.at("f_a"));
    spec.f_b_prev = parse_expr(jl.at("f_b_prev"));
    if (jl.contains("a_init")) {
      spec.a_init = parse_expr(jl.at("a_init"));
      spec.has_a_init = true;
    }
    t.levels[m] = std::move(spec);
  }
  return t;
}

SpectralField eval_forcing(const ForcingExpr& e, const std::vector<SpectralField>& a_lv,
                           const std::vector<SpectralField>& b_lv, const GridPtr& g) {
  SpectralField out = SpectralField::zero(g);
  for (const auto& t : e.terms) {
    SpectralField prod;
    bool first = true;
    for (const auto& f : t.factors) {
      const auto& pool = f.kind == 'A' ? a_lv : b_lv;
      if (f.level >= (int)pool.size())
        throw std::invalid_argument(std::string("forcing references unavailable level ") +
                                    f.kind + std::to_string(f.level));
      SpectralField fac =
          f.deriv > 0 ? apply_multiplier(pool[f.level], deriv_symbol(f.deriv)) : pool[f.level];
      if (first) {
        prod = std::move(fac);
        first = false;
      } else {
        prod = padded_product(prod, fac);
      }
    }
    if (t.outer_deriv > 0) apply_multiplier_inplace(prod, deriv_symbol(t.outer_deriv));
    prod *= t.coef;
    out += prod;
  }
  return out;
}

namespace {

// B_j = f_{B,j}/(2 sigma_s), computed in increasing j so lower B's feed higher ones.
std::vector<SpectralField> slave_b(const CoefficientTable& table, const AnsatzCoefficients& co,
                                   const std::vector<SpectralField>& a_lv, int count,
                                   const GridPtr& g) {
  std::vector<SpectralField> b_lv;
  for (int j = 0; j < count; ++j) {
    const auto& spec = table.levels.at(j + 1);  // level m holds f_{B,m-1}
    SpectralField b = eval_forcing(spec.f_b_prev, a_lv, b_lv, g);
    b *= 1.0 / (2.0 * co.sigma_s);
    b_lv.push_back(std::move(b));
  }
  return b_lv;
}

}  // namespace

HierarchyResult hierarchy_extend(const SpectralField& a0, const AnsatzCoefficients& co,
                                 int order_n, const CoefficientTable& table,
                                 const HierarchyOptions& opt) {
  if (order_n < 1) throw std::invalid_argument("hierarchy_extend: order must be >= 1");
  for (int m = 1; m <= order_n; ++m)
    if (!table.levels.count(m))
      throw std::invalid_argument("hierarchy_extend: coefficient table lacks level " +
                                  std::to_string(m) + "; orders beyond the shipped refinement "
                                  "require a user-supplied table");
  if (!(opt.mu_bar > opt.mu_low && opt.mu_low > opt.mu_star && opt.mu_star > 0.0))
    throw std::invalid_argument("hierarchy_extend: need mu_bar > mu_low > mu_star > 0");

  const auto g = a0.grid;
  const int n = g->n;
  const int nl = order_n + 1;
  const StepperConfig& cfg = opt.stepper;

  // Strip exhaustion: mu_m stays above mu_star only while eta*tau < mu_low - mu_star.
  const double tau_ex = (opt.mu_low - opt.mu_star) / opt.eta;
  const int n_rec_total = (int)std::lround(opt.tau_end / opt.record_dtau);
  if (n_rec_total < 1 ||
      std::abs(n_rec_total * opt.record_dtau - opt.tau_end) > 1e-9 * std::max(1.0, opt.tau_end))
    throw std::invalid_argument("hierarchy_extend: tau_end must be a multiple of record_dtau");
  int n_rec = n_rec_total;
  bool exhausted = false;
  if (n_rec * opt.record_dtau > tau_ex * (1.0 + 1e-12)) {
    n_rec = (int)std::floor(tau_ex / opt.record_dtau + 1e-12);
    exhausted = true;
  }
  const int steps_per_rec = (int)std::ceil(opt.record_dtau / cfg.dt - 1e-12);
  const double dt = opt.record_dtau / steps_per_rec;

  // Initial levels.
  std::vector<SpectralField> a_lv(nl, SpectralField::zero(g));
  a_lv[0] = a0;
  for (int m = 1; m <= order_n; ++m) {
    const auto& spec = table.levels.at(m);
    if (spec.has_a_init) a_lv[m] = eval_forcing(spec.a_init, a_lv, {}, g);
  }

  const auto mask = dealias_mask(*g);
  if (cfg.dealias)
    for (auto& f : a_lv) apply_mask(f, mask);

  // Joint ETD-RK4 on the stacked coefficient vector; every level shares the
  // dispersive symbol gamma_lin (ik)^3.
  std::vector<Etd4Scalar> tab(nl * n);
  for (int j = 0; j < n; ++j) {
    const double k = g->k[j];
    const auto e = etd4_scalar(cplx(0.0, -co.gamma_lin * k * k * k), dt);
    for (int m = 0; m < nl; ++m) tab[m * n + j] = e;
  }

  int max_b_needed = -1;  // deepest B level referenced by any f_a
  for (int m = 1; m <= order_n; ++m)
    for (const auto& t : table.levels.at(m).f_a.terms)
      for (const auto& f : t.factors)
        if (f.kind == 'B') max_b_needed = std::max(max_b_needed, f.level);

  auto unpack = [&](const std::vector<cplx>& u) {
    std::vector<SpectralField> lv(nl, SpectralField::zero(g));
    for (int m = 0; m < nl; ++m)
      std::copy(u.begin() + m * n, u.begin() + (m + 1) * n, lv[m].coef.begin());
    return lv;
  };

  auto nonlin = [&](const std::vector<cplx>& u, std::vector<cplx>& out) {
    auto lv = unpack(u);
    if (cfg.dealias)
      for (auto& f : lv) apply_mask(f, mask);
    const auto b_lv = slave_b(table, co, lv, max_b_needed + 1, g);
    out.assign(nl * n, cplx(0.0));
    // level 0: gamma_non d_xi(A0^2)
    {
      SpectralField sq = padded_product(lv[0], lv[0]);
      apply_multiplier_inplace(sq, deriv_symbol(1));
      sq *= co.gamma_non;
      if (cfg.dealias) apply_mask(sq, mask);
      std::copy(sq.coef.begin(), sq.coef.end(), out.begin());
    }
    // level m: 2 gamma_non d_xi(A0 A_m) + f_{A,m}
    for (int m = 1; m <= order_n; ++m) {
      SpectralField cross = padded_product(lv[0], lv[m]);
      apply_multiplier_inplace(cross, deriv_symbol(1));
      cross *= 2.0 * co.gamma_non;
      const auto& fa = table.levels.at(m).f_a;
      if (!fa.terms.empty()) cross += eval_forcing(fa, lv, b_lv, g);
      if (cfg.dealias) apply_mask(cross, mask);
      std::copy(cross.coef.begin(), cross.coef.end(), out.begin() + m * n);
    }
  };

  std::vector<cplx> u(nl * n);
  for (int m = 0; m < nl; ++m)
    std::copy(a_lv[m].coef.begin(), a_lv[m].coef.end(), u.begin() + m * n);

  HierarchyResult res;
  res.strip_exhausted = exhausted;

  const double dmu = (opt.mu_bar - opt.mu_low) / order_n;
  auto record = [&](double tau, const std::vector<SpectralField>& lv,
                    const std::vector<SpectralField>& b_lv) {
    HierarchyRecord rec;
    rec.tau = tau;
    for (int m = 0; m < nl; ++m) {
      const double mu = opt.mu_bar - dmu * m - opt.eta * tau;
      rec.mu.push_back(mu);
      rec.norm_a.push_back(analytic_norm(lv[m], {mu, opt.s_index}));
    }
    for (int m = 0; m < (int)b_lv.size(); ++m) {
      const double nu = rec.mu[m] - 0.5 * dmu;
      rec.nu.push_back(nu);
      rec.norm_b.push_back(analytic_norm(b_lv[m], {nu, opt.s_index}));
    }
    res.records.push_back(std::move(rec));
  };

  record(0.0, a_lv, slave_b(table, co, a_lv, order_n, g));

  SimStatus status{};
  double tau = 0.0;
  long step_idx = 0;
  bool aborted = false;
  for (int r = 0; r < n_rec && !aborted; ++r) {
    for (int s = 0; s < steps_per_rec; ++s, ++step_idx) {
      etd4_step_scalar(tab, u, nonlin);
      tau += dt;
      if (step_idx % cfg.guard_stride == 0 || s + 1 == steps_per_rec) {
        auto lv = unpack(u);
        double sup = 0.0;
        bool fin = true;
        for (const auto& f : lv) {
          fin = fin && f.finite();
          if (fin) sup = std::max(sup, f.sup_abs());
        }
        if (!fin) {
          status.outcome = SimStatus::Outcome::NonFinite;
          status.t_stop = tau;
          status.sup_at_stop = std::numeric_limits<double>::quiet_NaN();
          aborted = true;
          break;
        }
        if (sup > cfg.guard_sup) {
          status.outcome = SimStatus::Outcome::GuardTripped;
          status.t_stop = tau;
          status.sup_at_stop = sup;
          aborted = true;
          break;
        }
      }
    }
    if (!aborted) {
      auto lv = unpack(u);
      for (auto& f : lv) f.enforce_real();
      for (int m = 0; m < nl; ++m)
        std::copy(lv[m].coef.begin(), lv[m].coef.end(), u.begin() + m * n);
      record(tau, lv, slave_b(table, co, lv, order_n, g));
    }
  }

  if (!aborted) {
    status.t_stop = tau;
    status.sup_at_stop = 0.0;
  }
  res.status = status;
  res.tau_stop = tau;

  auto lv = unpack(u);
  const auto b_lv = slave_b(table, co, lv, order_n, g);
  for (int m = 0; m < nl; ++m) {
    HierarchyLevel hl;
    hl.index = m;
    hl.a = lv[m];
    if (m < (int)b_lv.size()) {
      hl.has_b = true;
      hl.b = b_lv[m];
    }
    res.levels.push_back(std::move(hl));
  }
  return res;
}

}  // namespace glkdv
