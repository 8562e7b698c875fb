// Spectral infrastructure: transform round trips, Parseval, exact derivatives
// of band-limited data, weight operators, the 2x2 diagonalizer, and the
// analytic-norm algebra property relied on by the a-priori bounds.
#include <cmath>
#include <random>

#include "doctest.h"
#include "glkdv/cgl_params.hpp"
#include "glkdv/field.hpp"
#include "glkdv/grid.hpp"
#include "glkdv/modulation.hpp"
#include "glkdv/multiplier.hpp"
#include "glkdv/norms.hpp"
#include "glkdv/spectral_analysis.hpp"
#include "glkdv/transforms.hpp"

using namespace glkdv;

namespace {

SpectralField random_real_field(GridPtr g, std::mt19937& rng, int band = 0) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> vals(g->n);
  for (auto& v : vals) v = u(rng);
  SpectralField f = SpectralField::from_physical_real(g, vals);
  if (band > 0) {
    for (int j = 0; j < g->n; ++j)
      if (std::abs(g->k[j]) * g->length / (2.0 * M_PI) > band) f.coef[j] = 0.0;
  }
  return f;
}

double field_distance(const SpectralField& a, const SpectralField& b) {
  return (a - b).sup_abs();
}

}  // namespace

TEST_CASE("fft round trip reproduces physical samples") {
  std::mt19937 rng(1);
  const auto g = SpectralGrid::make(128, 2.0 * M_PI);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> vals(g->n);
  for (auto& v : vals) v = cplx(u(rng), u(rng));
  const SpectralField f = SpectralField::from_physical(g, vals);
  const auto back = f.physical();
  for (int j = 0; j < g->n; ++j) CHECK(std::abs(back[j] - vals[j]) < 1e-13);
}

TEST_CASE("parseval identity in the box normalization") {
  std::mt19937 rng(2);
  const auto g = SpectralGrid::make(256, 5.0);
  const SpectralField f = random_real_field(g, rng);
  const auto phys = f.physical_real();
  double integral = 0.0;
  for (double v : phys) integral += v * v * g->dx();
  double spectral = 0.0;
  for (const auto& c : f.coef) spectral += std::norm(c) * g->dk();
  CHECK(integral == doctest::Approx(spectral).epsilon(1e-12));
  CHECK(l2_norm(f) == doctest::Approx(std::sqrt(integral)).epsilon(1e-12));
}

TEST_CASE("spectral derivative is exact on trigonometric data") {
  const auto g = SpectralGrid::make(64, 2.0 * M_PI);
  const auto xs = g->points();
  std::vector<double> vals(g->n), dvals(g->n);
  for (int j = 0; j < g->n; ++j) {
    vals[j] = std::sin(3.0 * xs[j]) + 0.5 * std::cos(7.0 * xs[j]);
    dvals[j] = 3.0 * std::cos(3.0 * xs[j]) - 3.5 * std::sin(7.0 * xs[j]);
  }
  const SpectralField f = SpectralField::from_physical_real(g, vals);
  const SpectralField df = apply_multiplier(f, deriv_symbol(1));
  const auto got = df.physical_real();
  for (int j = 0; j < g->n; ++j) CHECK(std::abs(got[j] - dvals[j]) < 1e-11);
}

TEST_CASE("antiderivative inverts derivative on mean-free fields") {
  std::mt19937 rng(3);
  const auto g = SpectralGrid::make(128, 7.0);
  SpectralField f = random_real_field(g, rng);
  f.coef[0] = 0.0;  // remove mean
  const SpectralField df = apply_multiplier(f, deriv_symbol(1));
  CHECK(field_distance(spectral_antiderivative(df), f) < 1e-11);

  SpectralField with_mean = f;
  with_mean.coef[0] = 1.0;
  CHECK_THROWS(spectral_antiderivative(with_mean));
}

TEST_CASE("padded product is alias-free for band-limited factors") {
  const auto g = SpectralGrid::make(64, 2.0 * M_PI);
  const auto xs = g->points();
  std::vector<double> a(g->n), b(g->n), ab(g->n);
  for (int j = 0; j < g->n; ++j) {
    a[j] = std::cos(11.0 * xs[j]);
    b[j] = std::sin(13.0 * xs[j]);
    ab[j] = a[j] * b[j];  // modes 2 and 24: beyond the 2/3 cut of n = 64
  }
  const SpectralField fa = SpectralField::from_physical_real(g, a);
  const SpectralField fb = SpectralField::from_physical_real(g, b);
  const SpectralField prod = padded_product(fa, fb);
  // Exact coefficients of cos(11x) sin(13x) = (sin 24x + sin 2x)/2.
  const SpectralField exact = SpectralField::from_physical_real(g, ab);
  // Direct physical product aliases mode 24 in a 64-point grid? No: 24 < 32,
  // representable. Use a coarser check: padded product equals exact product.
  CHECK(field_distance(prod, exact) < 1e-12);

  // Now force aliasing: modes 20 and 25 multiply to 45 > 32.
  const auto g2 = SpectralGrid::make(64, 2.0 * M_PI);
  std::vector<double> c(g2->n), d(g2->n);
  for (int j = 0; j < g2->n; ++j) {
    c[j] = std::cos(20.0 * xs[j]);
    d[j] = std::cos(25.0 * xs[j]);
  }
  const SpectralField fc = SpectralField::from_physical_real(g2, c);
  const SpectralField fd = SpectralField::from_physical_real(g2, d);
  const SpectralField p2 = padded_product(fc, fd);
  // cos20 cos25 = (cos45 + cos5)/2; mode 45 is unrepresentable and must be
  // absent (not folded onto mode 64-45 = 19).
  const auto c2 = p2.coef;
  const int n = g2->n;
  auto mode = [&](int m) { return m >= 0 ? c2[m] : c2[n + m]; };
  CHECK(std::abs(mode(5) + mode(-5)) > 0.1);    // physical mode survives
  CHECK(std::abs(mode(19)) < 1e-12);            // alias image suppressed
  CHECK(std::abs(mode(-19)) < 1e-12);
}

TEST_CASE("theta weight round trip") {
  std::mt19937 rng(4);
  const auto g = SpectralGrid::make(128, 11.0);
  const SpectralField f = random_real_field(g, rng);
  SpectralField w = f;
  s_theta(w, Direction::Forward);
  s_theta(w, Direction::Inverse);
  CHECK(field_distance(w, f) < 1e-10 * std::max(1.0, f.sup_abs()));
}

TEST_CASE("exponential weight round trip and monotonicity") {
  std::mt19937 rng(5);
  const auto g = SpectralGrid::make(128, 2.0 * M_PI);
  SpectralField f = random_real_field(g, rng, 20);  // band-limit to keep e^{mu|k|} sane
  SpectralField w = f;
  s_omega(w, 0.3, Direction::Forward);
  CHECK(l2_norm(w) <= l2_norm(f) * (1.0 + 1e-12));
  s_omega(w, 0.3, Direction::Inverse);
  CHECK(field_distance(w, f) < 1e-10 * std::max(1.0, f.sup_abs()));
}

TEST_CASE("diagonalizer inverse and similarity at random wavenumbers") {
  std::mt19937 rng(6);
  std::uniform_real_distribution<double> ua(-2.0, 2.0);
  std::uniform_real_distribution<double> us(0.1, 8.0);
  std::uniform_real_distribution<double> uk(-10.0, 10.0);
  int done = 0;
  while (done < 2000) {
    const double a = ua(rng), b = ua(rng);
    if (1.0 + a * b <= 1e-3) continue;
    const CGLParams p = CGLParams::from_sigma(a, b, us(rng));
    const double k = uk(rng);
    const Mat2c S = s_diag_symbol(p, k);
    const Mat2c Si = s_diag_inv_symbol(p, k);
    const Mat2c I = Si * S;
    CHECK((I - Mat2c::identity()).max_abs() < 1e-10);

    // Similarity: the rows of S are left eigenvectors of the
    // theta-transformed generator, so S Ly S^{-1} is diagonal with the
    // plus branch first (matching the lz_symbol layout).
    const Mat2c Ly = ly_symbol(p, k);
    const Mat2c D = S * Ly * Si;
    const DispersionSample disp = eval_dispersion(p, k);
    const double scale = std::max(1.0, std::abs(disp.lambda_plus) + std::abs(disp.lambda_minus));
    CHECK(std::abs(D.b) / scale < 1e-10);
    CHECK(std::abs(D.c) / scale < 1e-10);
    CHECK(std::abs(D.a - disp.lambda_plus) / scale < 1e-10);
    CHECK(std::abs(D.d - disp.lambda_minus) / scale < 1e-10);
    ++done;
  }
}

TEST_CASE("pair diagonalization round trip on fields") {
  std::mt19937 rng(7);
  const auto g = SpectralGrid::make(128, 9.0);
  const CGLParams p = CGLParams::from_epsilon(1.0, 0.0, 0.1);
  const SpectralField f1 = random_real_field(g, rng);
  const SpectralField f2 = random_real_field(g, rng);
  SpectralField a = f1, b = f2;
  s_diag(a, b, p, Direction::Forward);
  s_diag(a, b, p, Direction::Inverse);
  CHECK(field_distance(a, f1) < 1e-10);
  CHECK(field_distance(b, f2) < 1e-10);
}

TEST_CASE("analytic norm is an algebra norm") {
  // || f g ||_{mu,s} <= C || f ||_{mu,s} || g ||_{mu,s} with C independent of
  // the data; verified with C from the coarse scale test below.
  std::mt19937 rng(8);
  const auto g = SpectralGrid::make(256, 2.0 * M_PI);
  const AnalyticNormParams np{0.2, 2.0};
  for (int trial = 0; trial < 25; ++trial) {
    SpectralField f = random_real_field(g, rng, 24);
    SpectralField h = random_real_field(g, rng, 24);
    const SpectralField fh = padded_product(f, h);
    const double nf = analytic_norm(f, np);
    const double nh = analytic_norm(h, np);
    const double nfh = analytic_norm(fh, np);
    CHECK(nfh <= 4.0 * nf * nh);  // uniform constant; 4 covers c_s for s = 2, L = 2 pi
  }
}

TEST_CASE("analytic norm scales as expected on a single mode") {
  const auto g = SpectralGrid::make(64, 2.0 * M_PI);
  for (int m : {1, 3, 9}) {
    SpectralField f = SpectralField::zero(g);
    f.coef[m] = 1.0;
    const double mu = 0.25, s = 2.0;
    const double expect = std::sqrt(g->dk()) * std::exp(mu * m) *
                          std::pow(1.0 + double(m) * m, s / 2.0);
    CHECK(analytic_norm(f, {mu, s}) == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("weighted l1 norm equals its defining sum") {
  std::mt19937 rng(9);
  const auto g = SpectralGrid::make(128, 4.0);
  const SpectralField f = random_real_field(g, rng, 20);
  double acc = 0.0;
  for (int j = 0; j < g->n; ++j) {
    const double ak = std::abs(g->k[j]);
    acc += (1.0 + ak * ak) * std::exp(0.3 * ak) * std::abs(f.coef[j]) * g->dk();
  }
  CHECK(w_norm(f, 0.3, 2) == doctest::Approx(acc).epsilon(1e-12));

  // Single mode on a 2 pi box: k_j = j, so the norm has a closed value.
  const auto g2 = SpectralGrid::make(64, 2.0 * M_PI);
  SpectralField onemode = SpectralField::zero(g2);
  onemode.coef[5] = cplx(0.0, 2.0);
  CHECK(w_norm(onemode, 0.1, 3) ==
        doctest::Approx(g2->dk() * (1.0 + 125.0) * std::exp(0.5) * 2.0).epsilon(1e-12));
}

TEST_CASE("dealias mask zeroes exactly the upper third") {
  const auto g = SpectralGrid::make(128, 2.0 * M_PI);
  const auto mask = dealias_mask(*g);
  const int cut = g->dealias_cut();
  for (int j = 0; j < g->n; ++j) {
    const int m = j <= g->n / 2 ? j : j - g->n;
    if (std::abs(m) <= cut)
      CHECK(mask[j] == 1.0);
    else
      CHECK(mask[j] == 0.0);
  }
}

TEST_CASE("enforce_real yields conjugate-symmetric coefficients") {
  std::mt19937 rng(10);
  const auto g = SpectralGrid::make(64, 2.0 * M_PI);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SpectralField f = SpectralField::zero(g);
  for (auto& c : f.coef) c = cplx(u(rng), u(rng));
  f.enforce_real();
  const auto phys = f.physical();
  for (const auto& v : phys) CHECK(std::abs(v.imag()) < 1e-12);
}
