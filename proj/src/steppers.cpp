#include "glkdv/steppers.hpp"

#include <cmath>
#include <stdexcept>

namespace glkdv {

namespace {
double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}
}  // namespace

cplx phi_fn(int j, cplx z) {
  if (j == 0) return std::exp(z);
  if (std::abs(z) < 1.0) {
    // phi_j(z) = sum_{n>=0} z^n / (n+j)!
    cplx acc(0.0), term(1.0 / factorial(j));
    for (int n = 0;; ++n) {
      acc += term;
      if (std::abs(term) < 1e-20) break;
      term *= z / double(n + j + 1);
      if (n > 40) break;
    }
    return acc;
  }
  // phi_j = (phi_{j-1} - 1/(j-1)!) / z
  cplx p = std::exp(z);
  for (int i = 1; i <= j; ++i) p = (p - 1.0 / factorial(i - 1)) / z;
  return p;
}

cplx phi_fn_deriv(int j, cplx z) {
  if (j == 0) return std::exp(z);
  if (std::abs(z) < 1.0) {
    // phi_j'(z) = sum_{n>=1} n z^{n-1} / (n+j)!
    cplx acc(0.0), zp(1.0);
    for (int n = 1; n <= 42; ++n) {
      const cplx term = double(n) * zp / factorial(n + j);
      acc += term;
      if (std::abs(term) < 1e-20 && n > 3) break;
      zp *= z;
    }
    return acc;
  }
  // phi_j' = (phi_{j-1} - j phi_j) / z  (from z phi_j = phi_{j-1} - 1/(j-1)!)
  return (phi_fn(j - 1, z) - double(j) * phi_fn(j, z)) / z;
}

namespace {

// The six ETD-RK4 coefficient functions of z = h*lam and their z-derivatives.
struct CoefFns {
  double h;
  cplx val(int which, cplx lam) const {
    const cplx z = h * lam;
    switch (which) {
      case 0: return std::exp(z);
      case 1: return std::exp(0.5 * z);
      case 2: return 0.5 * h * phi_fn(1, 0.5 * z);
      case 3: return h * (phi_fn(1, z) - 3.0 * phi_fn(2, z) + 4.0 * phi_fn(3, z));
      case 4: return h * (phi_fn(2, z) - 2.0 * phi_fn(3, z));
      default: return h * (4.0 * phi_fn(3, z) - phi_fn(2, z));
    }
  }
  cplx deriv(int which, cplx lam) const {  // d/d lam
    const cplx z = h * lam;
    switch (which) {
      case 0: return h * std::exp(z);
      case 1: return 0.5 * h * std::exp(0.5 * z);
      case 2: return 0.25 * h * h * phi_fn_deriv(1, 0.5 * z);
      case 3:
        return h * h *
               (phi_fn_deriv(1, z) - 3.0 * phi_fn_deriv(2, z) + 4.0 * phi_fn_deriv(3, z));
      case 4: return h * h * (phi_fn_deriv(2, z) - 2.0 * phi_fn_deriv(3, z));
      default: return h * h * (4.0 * phi_fn_deriv(3, z) - phi_fn_deriv(2, z));
    }
  }
};

Mat2c mat_fun(const Mat2c& M, const CoefFns& fns, int which) {
  const cplx half_tr = 0.5 * M.trace();
  const cplx disc = std::sqrt(half_tr * half_tr - M.det());
  const cplx l1 = half_tr + disc, l2 = half_tr - disc;
  const double scale = 1.0 + std::max(std::abs(l1), std::abs(l2));
  cplx dd;
  if (std::abs(l1 - l2) <= 1e-7 * scale)
    dd = fns.deriv(which, half_tr);
  else
    dd = (fns.val(which, l1) - fns.val(which, l2)) / (l1 - l2);
  const Mat2c shifted = M - Mat2c::diag(l2, l2);
  return Mat2c::diag(fns.val(which, l2), fns.val(which, l2)) + dd * shifted;
}

}  // namespace

Etd4Scalar etd4_scalar(cplx lam, double h) {
  const CoefFns f{h};
  return {f.val(0, lam), f.val(1, lam), f.val(2, lam), f.val(3, lam), f.val(4, lam),
          f.val(5, lam)};
}

Etd4Mat etd4_mat(const Mat2c& M, double h) {
  const CoefFns f{h};
  return {mat_fun(M, f, 0), mat_fun(M, f, 1), mat_fun(M, f, 2),
          mat_fun(M, f, 3), mat_fun(M, f, 4), mat_fun(M, f, 5)};
}

Mat2c mat_exp(const Mat2c& M) {
  const CoefFns f{1.0};
  return mat_fun(M, f, 0);
}

void etd4_step_scalar(const std::vector<Etd4Scalar>& tab, std::vector<cplx>& u,
                      const ScalarNonlin& nonlin) {
  const size_t n = u.size();
  std::vector<cplx> Nu(n), a(n), Na(n), b(n), Nb(n), c(n), Nc(n);
  nonlin(u, Nu);
  for (size_t j = 0; j < n; ++j) a[j] = tab[j].E2 * u[j] + tab[j].Q * Nu[j];
  nonlin(a, Na);
  for (size_t j = 0; j < n; ++j) b[j] = tab[j].E2 * u[j] + tab[j].Q * Na[j];
  nonlin(b, Nb);
  for (size_t j = 0; j < n; ++j)
    c[j] = tab[j].E2 * a[j] + tab[j].Q * (2.0 * Nb[j] - Nu[j]);
  nonlin(c, Nc);
  for (size_t j = 0; j < n; ++j)
    u[j] = tab[j].E * u[j] + tab[j].f1 * Nu[j] + 2.0 * tab[j].f2 * (Na[j] + Nb[j]) +
           tab[j].f3 * Nc[j];
}

void etd4_step_pair(const std::vector<Etd4Mat>& tab, std::vector<cplx>& u1,
                    std::vector<cplx>& u2, const PairNonlin& nonlin) {
  const size_t n = u1.size();
  std::vector<cplx> N1(n), N2(n), a1(n), a2(n), Na1(n), Na2(n), b1(n), b2(n), Nb1(n),
      Nb2(n), c1(n), c2(n), Nc1(n), Nc2(n);
  auto lincomb = [&](const Mat2c& A, const Mat2c& B, const cplx& x1, const cplx& x2,
                     const cplx& y1, const cplx& y2, cplx& o1, cplx& o2) {
    const auto ax = A.apply(x1, x2);
    const auto by = B.apply(y1, y2);
    o1 = ax[0] + by[0];
    o2 = ax[1] + by[1];
  };
  nonlin(u1, u2, N1, N2);
  for (size_t j = 0; j < n; ++j)
    lincomb(tab[j].E2, tab[j].Q, u1[j], u2[j], N1[j], N2[j], a1[j], a2[j]);
  nonlin(a1, a2, Na1, Na2);
  for (size_t j = 0; j < n; ++j)
    lincomb(tab[j].E2, tab[j].Q, u1[j], u2[j], Na1[j], Na2[j], b1[j], b2[j]);
  nonlin(b1, b2, Nb1, Nb2);
  for (size_t j = 0; j < n; ++j)
    lincomb(tab[j].E2, tab[j].Q, a1[j], a2[j], 2.0 * Nb1[j] - N1[j], 2.0 * Nb2[j] - N2[j],
            c1[j], c2[j]);
  nonlin(c1, c2, Nc1, Nc2);
  for (size_t j = 0; j < n; ++j) {
    const auto e = tab[j].E.apply(u1[j], u2[j]);
    const auto t1 = tab[j].f1.apply(N1[j], N2[j]);
    const auto t2 = tab[j].f2.apply(Na1[j] + Nb1[j], Na2[j] + Nb2[j]);
    const auto t3 = tab[j].f3.apply(Nc1[j], Nc2[j]);
    u1[j] = e[0] + t1[0] + 2.0 * t2[0] + t3[0];
    u2[j] = e[1] + t1[1] + 2.0 * t2[1] + t3[1];
  }
}

ImexBdf2Scalar imex_tables_scalar(const std::vector<cplx>& lam, double h) {
  ImexBdf2Scalar t;
  t.inv.resize(lam.size());
  for (size_t j = 0; j < lam.size(); ++j) t.inv[j] = 1.0 / (1.0 - (2.0 * h / 3.0) * lam[j]);
  return t;
}

ImexBdf2Mat imex_tables_mat(const std::vector<Mat2c>& L, double h) {
  ImexBdf2Mat t;
  t.inv.resize(L.size());
  for (size_t j = 0; j < L.size(); ++j) {
    const Mat2c m = Mat2c::identity() - (2.0 * h / 3.0) * cplx(1.0) * L[j];
    t.inv[j] = m.inverse();
  }
  return t;
}

}  // namespace glkdv
