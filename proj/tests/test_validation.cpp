// Sweep machinery: slope fits, the energy-inequality constant, sweep points,
// and serialization helpers used by the driver.
#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "glkdv/io.hpp"
#include "glkdv/slope_fit.hpp"
#include "glkdv/validation.hpp"

using namespace glkdv;

TEST_CASE("linear fit recovers an exact line with zero residual") {
  const std::vector<double> x = {0.0, 1.0, 2.0, 3.0};
  std::vector<double> y;
  for (double v : x) y.push_back(2.5 * v - 1.0);
  const LinearFit f = fit_linear(x, y);
  REQUIRE(f.valid);
  CHECK(f.slope == doctest::Approx(2.5).epsilon(1e-13));
  CHECK(f.intercept == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(f.r2 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f.stderr_slope < 1e-10);
}

TEST_CASE("loglog fit recovers an exact power law") {
  const std::vector<double> x = {0.2, 0.14, 0.1, 0.05};
  std::vector<double> y;
  for (double v : x) y.push_back(3.7 * std::pow(v, 4.25));
  const LinearFit f = fit_loglog(x, y);
  REQUIRE(f.valid);
  CHECK(f.slope == doctest::Approx(4.25).epsilon(1e-12));
}

TEST_CASE("fits reject degenerate inputs") {
  CHECK(!fit_linear({1.0}, {2.0}).valid);
  CHECK(!fit_linear({1.0, 1.0, 1.0}, {1.0, 2.0, 3.0}).valid);  // zero x-variance
  CHECK(!fit_loglog({0.1, 0.2}, {1.0, 2.0}).valid);            // too few points
  CHECK(!fit_loglog({0.1, 0.2, 0.3}, {1.0, -2.0, 3.0}).valid); // nonpositive value
}

TEST_CASE("energy constant: zero remainder gives zero") {
  const std::vector<double> t = {0.0, 1.0, 2.0, 3.0, 4.0};
  const std::vector<double> e(t.size(), 0.0);
  CHECK(energy_constant(t, e, 0.1) == 0.0);
}

TEST_CASE("energy constant: decaying energy gives zero") {
  std::vector<double> t, e;
  for (int i = 0; i < 8; ++i) {
    t.push_back(0.5 * i);
    e.push_back(std::exp(-0.3 * i));
  }
  CHECK(energy_constant(t, e, 0.1) == 0.0);
}

TEST_CASE("energy constant reproduces a manufactured growth rate") {
  // E(t) = exp(g t) - 1 solves E' = g (E + 1), so C = g / eps^3.
  const double g = 0.04, eps = 0.2;
  std::vector<double> t, e;
  const double dt = 1e-3;  // small enough that central differences are exact
  for (int i = 0; i <= 100; ++i) {
    t.push_back(dt * i);
    e.push_back(std::expm1(g * dt * i));
  }
  const double c = energy_constant(t, e, eps);
  CHECK(c == doctest::Approx(g / (eps * eps * eps)).epsilon(1e-4));
}

TEST_CASE("zero horizon produces a clean point with zero errors") {
  SweepPlan plan;
  plan.tau1 = 0.0;
  plan.n_xi = 64;
  const EpsPoint q = run_eps_point(plan, 0.2, 1);
  CHECK(q.status.ok());
  CHECK(q.sup_err == 0.0);
  CHECK(q.hm_err == 0.0);
  CHECK(q.res_sup > 0.0);  // residual of the initial ansatz is still reported
}

TEST_CASE("sweep point produces finite errors and the expected grid") {
  SweepPlan plan;
  plan.tau1 = 0.02;
  plan.n_xi = 64;
  plan.n_records = 4;
  plan.kdv_dt = 1e-3;
  const EpsPoint q = run_eps_point(plan, 0.2, 1);
  REQUIRE(q.status.ok());
  CHECK(q.n_x == 512);  // next power of two above 64/0.2
  CHECK(q.t_end == doctest::Approx(0.02 / 0.008).epsilon(1e-12));
  CHECK(q.sup_err > 0.0);
  CHECK(q.hm_err > 0.0);
  CHECK(std::isfinite(q.hm_err));
  CHECK(q.res_sup > 0.0);
  REQUIRE(q.times.size() == 5);
  CHECK(q.times.back() == doctest::Approx(q.t_end).epsilon(1e-12));
}

TEST_CASE("first-order ansatz tracks at least as well as the truncated one") {
  SweepPlan plan;
  plan.tau1 = 0.02;
  plan.n_xi = 64;
  plan.n_records = 4;
  plan.kdv_dt = 1e-3;
  const EpsPoint q1 = run_eps_point(plan, 0.2, 1);
  const EpsPoint q0 = run_eps_point(plan, 0.2, 0);
  REQUIRE(q1.status.ok());
  REQUIRE(q0.status.ok());
  CHECK(q1.sup_err <= q0.sup_err * 1.05);
  CHECK(q1.res_sup < q0.res_sup);
}

TEST_CASE("measured errors are discretization-converged") {
  SweepPlan coarse;
  coarse.tau1 = 0.02;
  coarse.n_xi = 64;
  coarse.n_records = 4;
  coarse.kdv_dt = 1e-3;
  SweepPlan fine = coarse;
  fine.kdv_dt = 5e-4;
  fine.mod_dt = coarse.mod_dt / 2.0;
  const EpsPoint qc = run_eps_point(coarse, 0.2, 1);
  const EpsPoint qf = run_eps_point(fine, 0.2, 1);
  REQUIRE(qc.status.ok());
  REQUIRE(qf.status.ok());
  CHECK(std::abs(qc.sup_err - qf.sup_err) < 0.05 * qf.sup_err);
  CHECK(std::abs(qc.hm_err - qf.hm_err) < 0.05 * qf.hm_err);
}

TEST_CASE("small sweep fits a credible convergence order") {
  SweepPlan plan;
  plan.epsilons = {0.25, 0.2, 0.15};
  plan.tau1 = 0.02;
  plan.n_xi = 64;
  plan.n_records = 4;
  plan.kdv_dt = 1e-3;
  const ValidationReport rep = run_validation(plan, 1);
  REQUIRE(rep.points.size() == 3);
  for (const auto& q : rep.points) CHECK(q.status.ok());
  REQUIRE(rep.hm_fit.valid);
  REQUIRE(rep.sup_fit.valid);
  CHECK(rep.hm_fit.slope > 1.5);
  CHECK(rep.sup_fit.slope > 1.5);
  CHECK(rep.c_hat_ratio >= 1.0);
}

TEST_CASE("sweep rejects parameters outside the stable region") {
  SweepPlan plan;
  plan.alpha = 4.0;
  plan.beta = 1.0;
  CHECK_THROWS_AS((void)run_validation(plan, 1), std::invalid_argument);
  plan.alpha = plan.beta = 0.5;
  CHECK_THROWS_AS((void)run_validation(plan, 1), std::invalid_argument);
}

TEST_CASE("field dump round trip is bit-exact and validates its header") {
  namespace fs = std::filesystem;
  const auto g = SpectralGrid::make(64, 3.5);
  SpectralField f = SpectralField::zero(g);
  for (int j = 0; j < g->n; ++j) f.coef[j] = cplx(std::sin(0.1 * j), std::cos(0.2 * j));
  const std::string path = (fs::temp_directory_path() / "glkdv_dump_test.bin").string();
  write_field_dump(path, f);
  const SpectralField back = read_field_dump(path);
  REQUIRE(back.grid->n == g->n);
  CHECK(back.grid->length == g->length);
  for (int j = 0; j < g->n; ++j) CHECK(back.coef[j] == f.coef[j]);

  // Corrupt the magic and expect rejection.
  {
    std::ofstream out(path, std::ios::binary | std::ios::in);
    out.seekp(0);
    out.write("XXXXXXXX", 8);
  }
  CHECK_THROWS((void)read_field_dump(path));
  fs::remove(path);
}

TEST_CASE("seventeen-digit formatting round-trips doubles exactly") {
  for (double v : {M_PI, 1.0 / 3.0, 6.02214076e23, -2.2250738585072014e-308}) {
    const std::string s = fmt17(v);
    CHECK(std::stod(s) == v);
  }
}

TEST_CASE("csv writer enforces rectangular data") {
  namespace fs = std::filesystem;
  const std::string path = (fs::temp_directory_path() / "glkdv_csv_test.csv").string();
  CHECK_THROWS(write_csv(path, {"a", "b"}, {{1.0}}));
  write_csv(path, {"a", "b"}, {{1.0, 2.0}, {3.0, 4.0}});
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "a,b");
  fs::remove(path);
}
