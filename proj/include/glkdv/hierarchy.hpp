#pragma once
#include <map>
#include <vector>

#include "json.hpp"

#include "glkdv/kdv.hpp"

namespace glkdv {

// Extended amplitude system: level 0 is the KdV amplitude A0, level m >= 1
// solves the linearized inhomogeneous equation
//   d_tau A_m = gamma_lin d_xi^3 A_m + 2 gamma_non d_xi(A0 A_m) + f_{A,m},
// while the second components are slaved algebraically,
//   0 = -2 sigma_s B_{m-1} + f_{B,m-1}.
// The forcings are polynomial differential expressions in lower levels,
// encoded as coefficient tables (sums of coef * d^outer( prod d^q F )).

struct ForcingFactor {
  char kind = 'A';  // 'A' or 'B'
  int level = 0;
  int deriv = 0;
};

struct ForcingTerm {
  double coef = 0.0;
  int outer_deriv = 0;
  std::vector<ForcingFactor> factors;  // at least one
};

struct ForcingExpr {
  std::vector<ForcingTerm> terms;  // empty = identically zero
};

struct LevelSpec {
  ForcingExpr f_a;       // forcing of the A_m equation
  ForcingExpr f_b_prev;  // right-hand side f_{B,m-1} of the algebraic equation
  ForcingExpr a_init;    // optional initial condition for A_m
  bool has_a_init = false;
};

struct CoefficientTable {
  std::map<int, LevelSpec> levels;  // keyed by m >= 1
};

// Shipped table: the explicit first-order refinement.
//   f_{A,1} = 0 with A_1(0) = (beta/sigma_s) d_xi A0(0)   (the translation
//   mode, which solves the homogeneous linearized equation exactly), and
//   f_{B,0} = (2 + sigma_s) A0^2, i.e. B0 = (1/sigma_s + 1/2) A0^2.
// Higher orders need a user table; the generating coefficients are not pinned
// down by closed formulas.
CoefficientTable default_coefficient_table(const AnsatzCoefficients& co);

// JSON format (strict keys):
// {"levels": [{"m": 1,
//              "f_a":      [{"coef": x, "outer_deriv": p,
//                            "factors": [{"field": "A"|"B", "level": j, "deriv": q}, ...]}],
//              "f_b_prev": [ ...terms... ],
//              "a_init":   [ ...terms... ]   // optional
//            }, ...]}
CoefficientTable parse_coefficient_table(const nlohmann::json& j);

struct HierarchyLevel {
  int index = 0;
  SpectralField a;
  bool has_b = false;
  SpectralField b;  // B_index (levels 0..N-1 after extension)
};

struct HierarchyOptions {
  // Strip bookkeeping mu_m(tau) = mu_{m,0} - eta*tau with
  // mu_{m,0} = mu_bar - (mu_bar - mu_low) m/N, valid while eta*tau < mu_low - mu_star.
  double mu_bar = 0.4;
  double mu_low = 0.2;
  double mu_star = 0.05;
  double eta = 8.0;
  double s_index = 2.0;  // Sobolev index of the bookkeeping norm
  double tau_end = 0.015;
  double record_dtau = 0.003;
  StepperConfig stepper;
};

struct HierarchyRecord {
  double tau = 0.0;
  std::vector<double> mu;      // mu_m(tau), m = 0..N
  std::vector<double> norm_a;  // analytic norm of A_m in the strip mu_m(tau)
  std::vector<double> nu;      // nu_m(tau) = mu_m(tau) - (mu_bar-mu_low)/(2N)
  std::vector<double> norm_b;  // analytic norm of B_m in the strip nu_m(tau)
};

struct HierarchyResult {
  std::vector<HierarchyLevel> levels;  // final state, indices 0..N
  std::vector<HierarchyRecord> records;
  bool strip_exhausted = false;  // mu reached mu_star before tau_end
  double tau_stop = 0.0;
  SimStatus status;
};

// Evaluates a forcing expression against the current level fields.
SpectralField eval_forcing(const ForcingExpr& e, const std::vector<SpectralField>& a_lv,
                           const std::vector<SpectralField>& b_lv, const GridPtr& g);

// Integrates levels 0..order_n jointly from A0(0) = a0 (level 0 follows the
// full KdV flow). Throws if the table lacks a requested level.
HierarchyResult hierarchy_extend(const SpectralField& a0, const AnsatzCoefficients& co,
                                 int order_n, const CoefficientTable& table,
                                 const HierarchyOptions& opt);

}  // namespace glkdv
