// Closed-form dispersion relation, expansion coefficients, threshold formulas
// and the parameter-region classifier, each checked against an independent
// oracle: a dense complex eigensolver, centered finite differences, and
// plugging claimed roots back into the defining polynomial.
#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "glkdv/cgl_params.hpp"
#include "glkdv/spectral_analysis.hpp"

using namespace glkdv;
using Mat2 = Eigen::Matrix2cd;

namespace {

// Dense-eigensolver oracle for the linearized modulation symbol.
std::pair<cplx, cplx> oracle_eigs(const CGLParams& p, double k) {
  const Mat2c sym = eval_symbol(p, k);
  Mat2 m;
  m << sym.a, sym.b, sym.c, sym.d;
  Eigen::ComplexEigenSolver<Mat2> es(m, false);
  return {es.eigenvalues()(0), es.eigenvalues()(1)};
}

double pair_distance(cplx a1, cplx a2, cplx b1, cplx b2) {
  const double d1 = std::abs(a1 - b1) + std::abs(a2 - b2);
  const double d2 = std::abs(a1 - b2) + std::abs(a2 - b1);
  return std::min(d1, d2);
}

CGLParams random_admissible(std::mt19937& rng) {
  std::uniform_real_distribution<double> ua(-3.0, 3.0);
  std::uniform_real_distribution<double> us(0.05, 10.0);
  for (;;) {
    const double a = ua(rng), b = ua(rng);
    const double s = us(rng);
    if (1.0 + a * b <= 1e-3) continue;
    return CGLParams::from_sigma(a, b, s);
  }
}

}  // namespace

TEST_CASE("dispersion matches dense eigensolver on random parameters") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> uk(-10.0, 10.0);
  for (int trial = 0; trial < 10000; ++trial) {
    const CGLParams p = random_admissible(rng);
    const double k = uk(rng);
    const DispersionSample d = eval_dispersion(p, k);
    const auto [e1, e2] = oracle_eigs(p, k);
    const double scale = std::max(1.0, std::abs(e1) + std::abs(e2));
    REQUIRE(pair_distance(d.lambda_plus, d.lambda_minus, e1, e2) / scale < 1e-10);
  }
}

TEST_CASE("branch ordering: upsilon has nonnegative real part") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> uk(-10.0, 10.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const CGLParams p = random_admissible(rng);
    const DispersionSample d = eval_dispersion(p, uk(rng));
    CHECK(d.upsilon.real() >= 0.0);
  }
}

TEST_CASE("upsilon never vanishes on the real axis") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> uk(-20.0, 20.0);
  for (int trial = 0; trial < 5000; ++trial) {
    const CGLParams p = random_admissible(rng);
    const double k = uk(rng);
    if (k == 0.0) continue;
    CHECK(std::abs(eval_dispersion(p, k).upsilon) > 1e-12);
  }
}

TEST_CASE("long-wave expansion coefficients match finite differences") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const CGLParams p = random_admissible(rng);
    const ExpansionCoefficients ec = expansion_coeffs(p);
    const ExpansionCoefficients fd = expansion_coeffs_fd(p);
    const double s1 = std::max(1.0, std::abs(ec.c1));
    const double s2 = std::max(1.0, std::abs(ec.c2));
    const double s3 = std::max(1.0, std::abs(ec.c3));
    const double s4 = std::max(1.0, std::abs(ec.c4));
    CHECK(std::abs(ec.c1 - fd.c1) / s1 < 1e-5);
    CHECK(std::abs(ec.c2 - fd.c2) / s2 < 1e-5);
    CHECK(std::abs(ec.c3 - fd.c3) / s3 < 1e-5);
    CHECK(std::abs(ec.c4 - fd.c4) / s4 < 1e-5);
  }
}

TEST_CASE("marginal coefficients are the sigma_s limits") {
  std::mt19937 rng(123);
  std::uniform_real_distribution<double> ua(-2.0, 2.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double a = ua(rng), b = ua(rng);
    if (1.0 + a * b <= 1e-3) continue;
    const SidebandThreshold th = sideband_threshold(a, b);
    const CGLParams p = CGLParams::from_sigma(a, b, th.sigma_s);
    const ExpansionCoefficients ec = expansion_coeffs(p);
    CHECK(std::abs(ec.c2) < 1e-10);                       // marginality
    CHECK(ec.c3 == doctest::Approx(ec.c3s).epsilon(1e-10));
    CHECK(ec.c4 == doctest::Approx(ec.c4s).epsilon(1e-9));
  }
}

TEST_CASE("threshold formulas: real-coefficient limit and consistency") {
  const SidebandThreshold th0 = sideband_threshold(0.0, 0.0);
  CHECK(th0.zeta_s * th0.zeta_s == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(th0.sigma_s == doctest::Approx(2.0).epsilon(1e-14));

  std::mt19937 rng(321);
  std::uniform_real_distribution<double> ua(-2.5, 2.5);
  int n_done = 0;
  while (n_done < 1000) {
    const double a = ua(rng), b = ua(rng);
    if (1.0 + a * b <= 1e-6) continue;
    const SidebandThreshold th = sideband_threshold(a, b);
    // sigma and zeta parameterizations agree: sigma_s = zeta_s^{-2} - 1.
    CHECK(th.sigma_s ==
          doctest::Approx(1.0 / (th.zeta_s * th.zeta_s) - 1.0).epsilon(1e-12));
    CHECK(th.sigma_s > 0.0);
    CHECK(th.zeta_s > 0.0);
    CHECK(th.zeta_s < 1.0);
    ++n_done;
  }
}

TEST_CASE("r_of_z satisfies its defining quartic") {
  // On the strip 1/3 < z < 3/4 the bound r(z) solves
  // r^4 z^2 (4z - 3) + r^2 (5z^2 - 4z + 1) + 1 = 0 (larger root).
  for (double z : {0.36, 0.45, 0.55, 0.65, 0.74}) {
    const double r = r_of_z(z);
    REQUIRE(std::isfinite(r));
    const double r2 = r * r;
    const double val = r2 * r2 * z * z * (4.0 * z - 3.0) + r2 * (5.0 * z * z - 4.0 * z + 1.0) +
                       1.0;
    CHECK(std::abs(val) < 1e-9 * std::max(1.0, r2 * r2));
  }
  // Left piece joins continuously with z^{-1/2}.
  CHECK(r_of_z(0.2) == doctest::Approx(1.0 / std::sqrt(0.2)).epsilon(1e-14));
  CHECK(r_of_z(1.0 / 3.0) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-9));
  // Right piece is unbounded.
  CHECK(std::isinf(r_of_z(0.8)));
  CHECK(std::isinf(r_of_z(0.9)));
}

TEST_CASE("region classification on known examples") {
  CHECK(classify_region(1.0, 0.0).region == Region::SidebandAs);   // beta = 0, alpha != 0
  CHECK(classify_region(-1.0, 0.0).region == Region::SidebandAs);
  CHECK(classify_region(1.0, -0.5).region == Region::SidebandAs);  // alpha*beta < beta^2
  CHECK(classify_region(-0.5, 1.0).region == Region::SidebandAs);  // -1 < alpha*beta < beta^2
  CHECK(classify_region(0.0, 1.0).region == Region::SidebandAs);   // 0 = alpha*beta < beta^2
  CHECK(classify_region(4.0, 1.0).region == Region::HopfTuringAh);
  CHECK(classify_region(-2.0, 1.0).region == Region::UnstableHalfPlane);  // 1+ab < 0
  CHECK(classify_region(-3.0, 1.0).region == Region::UnstableHalfPlane);
  CHECK(classify_region(0.0, 0.0).region == Region::BoundaryIndeterminate);
  // alpha = beta sits on the closure of the first clause; the open-region
  // classifier refuses to decide it.
  CHECK(classify_region(2.0, 2.0).region == Region::BoundaryIndeterminate);
}

TEST_CASE("region classification symmetry under sign flip") {
  // The stability regions are invariant under (alpha, beta) -> (-alpha, -beta).
  std::mt19937 rng(55);
  std::uniform_real_distribution<double> ua(-4.0, 4.0);
  for (int trial = 0; trial < 500; ++trial) {
    const double a = ua(rng), b = ua(rng);
    CHECK(classify_region(a, b).region == classify_region(-a, -b).region);
  }
}

TEST_CASE("ratio-bound clause matches a brute-force marginal scan") {
  // For 0 < beta <= alpha with z = beta/alpha in (1/3, 3/4), membership in the
  // stable set flips exactly at alpha = r(z).
  for (double z : {0.4, 0.5, 0.6, 0.7}) {
    const double r = r_of_z(z);
    const double a_in = 0.9 * r, a_out = 1.1 * r;
    CHECK(classify_region(a_in, z * a_in).region == Region::SidebandAs);
    CHECK(classify_region(a_out, z * a_out).region == Region::HopfTuringAh);
  }
}

TEST_CASE("spectral bounds hold at marginal parameters in the stable set") {
  std::vector<double> kgrid;
  for (int i = 0; i <= 10000; ++i) kgrid.push_back(-10.0 + 20.0 * i / 10000.0);

  const std::vector<std::pair<double, double>> pts = {{1.0, 0.0}, {0.0, 1.0}, {1.0, -0.5}};
  for (const auto& [a, b] : pts) {
    REQUIRE(classify_region(a, b).region == Region::SidebandAs);
    std::vector<double> cs;
    for (double eps : {0.05, 0.1, 0.2}) {
      const CGLParams p = CGLParams::from_epsilon(a, b, eps);
      const SpectralBoundReport rep = check_spectral_bounds(p, kgrid);
      CHECK(rep.minus_ok);
      CHECK(rep.C_plus >= 0.0);
      cs.push_back(rep.C_plus);
    }
    const double cmin = std::min({cs[0], cs[1], cs[2]});
    const double cmax = std::max({cs[0], cs[1], cs[2]});
    CHECK(cmax <= 3.0 * std::max(cmin, 1e-30));
  }
}

TEST_CASE("unstable region shows positive growth rate") {
  const CGLParams p = CGLParams::from_epsilon(4.0, 1.0, 0.1);
  std::vector<double> kgrid;
  for (int i = 0; i <= 4000; ++i) kgrid.push_back(-10.0 + 20.0 * i / 4000.0);
  const SpectralBoundReport rep = check_spectral_bounds(p, kgrid);
  CHECK(rep.max_re_plus > 0.1);
}
