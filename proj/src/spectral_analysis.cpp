#include "glkdv/spectral_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace glkdv {

namespace {

// gamma(k) = (alpha k^2 - 2ik)/sigma
cplx gamma_of_k(const CGLParams& p, cplx k) {
  return (p.alpha * k * k - 2.0 * cplx(0.0, 1.0) * k) / p.sigma;
}

// upsilon - 1 evaluated without cancellation:
// upsilon^2 = 1 - gamma^2 - 2 beta gamma  =>  upsilon - 1 = -g(g+2beta)/(1+upsilon).
cplx upsilon_minus_one(const CGLParams& p, cplx g) {
  const cplx u = std::sqrt(1.0 - g * g - 2.0 * p.beta * g);
  return -g * (g + 2.0 * p.beta) / (1.0 + u);
}

}  // namespace

Mat2c eval_symbol(const CGLParams& p, double k) {
  const cplx ik(0.0, k);
  const double k2 = k * k;
  const cplx diag = -k2 + (p.c - 2.0 * p.alpha) * ik;
  return {diag, -p.alpha * k2 - 2.0 * p.beta * p.sigma + 2.0 * ik,
          p.alpha * k2 - 2.0 * ik, diag - 2.0 * p.sigma};
}

DispersionSample eval_dispersion(const CGLParams& p, double k) {
  const cplx g = gamma_of_k(p, k);
  const cplx u = std::sqrt(1.0 - g * g - 2.0 * p.beta * g);
  if (!(u.real() > 0.0))
    throw std::logic_error("eval_dispersion: principal branch lost Re(upsilon) > 0");
  const cplx base = cplx(0.0, (p.c - 2.0 * p.alpha) * k) - k * k - p.sigma;
  return {base + p.sigma * u, base - p.sigma * u, u};
}

ExpansionCoefficients expansion_coeffs(const CGLParams& p) {
  const double a = p.alpha, b = p.beta, s = p.sigma;
  ExpansionCoefficients c{};
  c.c1 = p.c - 2.0 * (a - b);
  c.c2 = 1.0 + a * b - 2.0 * (1.0 + b * b) / s;
  c.c3 = 2.0 * (1.0 + b * b) * (a * s - 2.0 * b) / (s * s);
  c.c4 = (1.0 + b * b) * (0.5 * a * a * s * s - 6.0 * a * b * s + 2.0 * (1.0 + 5.0 * b * b)) /
         (s * s * s);
  if (1.0 + a * b > 0.0) {
    const double ss = sideband_threshold(a, b).sigma_s;
    const double J =
        1.0 + 5.0 * b * b + a * a * (1.0 - 3.0 * b * b) + 4.0 * a * b * (b * b - 1.0);
    c.c3s = 2.0 * (a - b) / ss;
    c.c4s = (1.0 + a * b) * J / (4.0 * (1.0 + b * b) * (1.0 + b * b));
  } else {
    c.c3s = std::numeric_limits<double>::quiet_NaN();
    c.c4s = std::numeric_limits<double>::quiet_NaN();
  }
  return c;
}

ExpansionCoefficients expansion_coeffs_fd(const CGLParams& p, double h_frac) {
  // lambda_plus(k) = i(c-2a)k - k^2 + q(k) with q = sigma*(upsilon-1); the
  // polynomial part is differentiated exactly and q by a degree-8 fit through
  // nine samples, which avoids the -sigma + sigma*upsilon cancellation.
  //
  // q is analytic in k until 1 - gamma^2 - 2 beta gamma crosses the branch
  // cut, roughly |gamma| (|gamma| + 2|beta|) = 1.  Solving that for |gamma|
  // and then (|alpha| k^2 + 2k)/sigma = |gamma| gives a radius estimate rho;
  // stepping at a fixed fraction of rho keeps the truncation error of the
  // fit ~ h_frac^6 and the roundoff amplification ~ eps/h_frac^4 uniformly
  // small over the whole admissible (alpha, beta, sigma) range.  At the
  // default h_frac the truncation error is ~1e-7 relative and roundoff is
  // still well below it.
  const double gstar = 1.0 / (std::sqrt(1.0 + p.beta * p.beta) + std::abs(p.beta));
  const double asg = std::abs(p.alpha) * p.sigma * gstar;
  const double rho = p.sigma * gstar / (1.0 + std::sqrt(1.0 + asg));
  const double h = h_frac * rho;

  constexpr int m = 4;
  cplx q[2 * m + 1];
  for (int j = -m; j <= m; ++j)
    q[j + m] = p.sigma * upsilon_minus_one(p, gamma_of_k(p, cplx(j * h, 0.0)));

  // Solve the 9x9 Vandermonde system sum_n b_n j^n = q_j, nodes j = -4..4.
  constexpr int n = 2 * m + 1;
  cplx A[n][n + 1];
  for (int r = 0; r < n; ++r) {
    const double x = r - m;
    double pw = 1.0;
    for (int cidx = 0; cidx < n; ++cidx, pw *= x) A[r][cidx] = pw;
    A[r][n] = q[r];
  }
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
    for (int cidx = col; cidx <= n; ++cidx) std::swap(A[col][cidx], A[piv][cidx]);
    for (int r = col + 1; r < n; ++r) {
      const cplx f = A[r][col] / A[col][col];
      for (int cidx = col; cidx <= n; ++cidx) A[r][cidx] -= f * A[col][cidx];
    }
  }
  cplx bcoef[n];
  for (int r = n - 1; r >= 0; --r) {
    cplx acc = A[r][n];
    for (int cidx = r + 1; cidx < n; ++cidx) acc -= A[r][cidx] * bcoef[cidx];
    bcoef[r] = acc / A[r][r];
  }
  // q^{(n)}(0) = n! b_n / h^n
  const cplx q1 = bcoef[1] / h;
  const cplx q2 = 2.0 * bcoef[2] / (h * h);
  const cplx q3 = 6.0 * bcoef[3] / (h * h * h);
  const cplx q4 = 24.0 * bcoef[4] / (h * h * h * h);

  ExpansionCoefficients c = expansion_coeffs(p);  // keep threshold constants
  c.c1 = (p.c - 2.0 * p.alpha) + q1.imag();
  c.c2 = -(-2.0 + q2.real()) / 2.0;
  c.c3 = q3.imag() / 6.0;
  c.c4 = -q4.real() / 24.0;
  return c;
}

SidebandThreshold sideband_threshold(double alpha, double beta) {
  const double g = 1.0 + alpha * beta;
  if (!(g > 0.0))
    throw std::domain_error("sideband_threshold: requires 1 + alpha*beta > 0");
  const double bb = 2.0 * (1.0 + beta * beta);
  return {bb / g, std::sqrt(g / (bb + g))};
}

double r_of_z(double z) {
  if (!(z > 0.0 && z < 1.0)) throw std::domain_error("r_of_z: z outside (0,1)");
  if (z <= 1.0 / 3.0) return 1.0 / std::sqrt(z);
  if (z >= 0.75) return std::numeric_limits<double>::infinity();
  // Quadratic a y^2 + b y + 1 = 0 in y = r^2 with a = z^2(4z-3) < 0 on this
  // branch; the unique positive root is (b + sqrt(b^2 - 4a)) / (-2a).
  const double a = z * z * (4.0 * z - 3.0);
  const double b = 5.0 * z * z - 4.0 * z + 1.0;
  const double y = (b + std::sqrt(b * b - 4.0 * a)) / (-2.0 * a);
  return std::sqrt(y);
}

namespace {
enum class Tri { False, Border, True };

Tri tri_positive(double v, double tol) {
  if (v > tol) return Tri::True;
  if (v < -tol) return Tri::False;
  return Tri::Border;
}
}  // namespace

RegionVerdict classify_region(double alpha, double beta, double tol) {
  RegionVerdict out;
  const double g = 1.0 + alpha * beta;
  if (std::abs(g) <= tol) {
    out.region = Region::BoundaryIndeterminate;
    return out;
  }
  if (g < 0.0) {
    out.region = Region::UnstableHalfPlane;
    return out;
  }

  Tri best = Tri::False;
  auto fold = [&best](Tri t) {
    if (t == Tri::True) best = Tri::True;
    else if (t == Tri::Border && best == Tri::False) best = Tri::Border;
  };

  // clause 1: alpha*beta < beta^2 (with 1+alpha*beta > 0 already established)
  fold(tri_positive(beta * beta - alpha * beta, tol));

  if (std::abs(beta) <= tol) {
    // clause 2: beta = 0 and alpha != 0
    fold(std::abs(alpha) > tol ? Tri::True : Tri::Border);
  } else if (alpha * beta > 0.0) {
    // clause 3: 0 < |beta| <= |alpha| < r(beta/alpha); sensible only for
    // z = beta/alpha in (0,1]; r extends continuously to +inf on [3/4,1].
    const Tri mag = tri_positive(std::abs(alpha) - std::abs(beta), tol);
    if (mag != Tri::False) {
      const double z = beta / alpha;
      Tri bound;
      if (z >= 0.75 - tol) {
        bound = Tri::True;  // r(z) = +inf
      } else {
        const double r = r_of_z(z);
        out.has_r_bound = true;
        out.r_bound = r;
        bound = tri_positive(r - std::abs(alpha), tol);
      }
      if (mag == Tri::True) fold(bound);
      else fold(bound == Tri::False ? Tri::False : Tri::Border);
    }
  }

  switch (best) {
    case Tri::True: out.region = Region::SidebandAs; break;
    case Tri::Border: out.region = Region::BoundaryIndeterminate; break;
    case Tri::False: out.region = Region::HopfTuringAh; break;
  }
  return out;
}

SpectralBoundReport check_spectral_bounds(const CGLParams& p,
                                          const std::vector<double>& kgrid) {
  const double ss = sideband_threshold(p.alpha, p.beta).sigma_s;
  const double eps2 = ss - p.sigma;
  const double eps3 = eps2 > 0.0 ? std::pow(eps2, 1.5) : 0.0;

  SpectralBoundReport rep;
  rep.minus_margin = std::numeric_limits<double>::infinity();
  rep.max_re_plus = -std::numeric_limits<double>::infinity();
  for (double k : kgrid) {
    const DispersionSample d = eval_dispersion(p, k);
    rep.minus_margin =
        std::min(rep.minus_margin, -0.5 * ss - k * k - d.lambda_minus.real());
    rep.max_re_plus = std::max(rep.max_re_plus, d.lambda_plus.real());
    if (k != 0.0 && eps3 > 0.0) {
      const double ratio = d.lambda_plus.real() / (eps3 * std::abs(k));
      if (ratio > rep.C_plus) {
        rep.C_plus = ratio;
        rep.k_worst = k;
      }
    }
  }
  rep.minus_ok = rep.minus_margin >= 0.0;
  return rep;
}

}  // namespace glkdv
