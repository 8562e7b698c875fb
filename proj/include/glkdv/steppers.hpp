#pragma once
#include <functional>
#include <vector>

#include "glkdv/field.hpp"
#include "glkdv/mat2.hpp"

namespace glkdv {

enum class Scheme { EtdRk4, ImexBdf2 };

struct StepperConfig {
  double dt = 1e-2;
  Scheme scheme = Scheme::EtdRk4;
  bool dealias = true;
  double guard_sup = 2.0;  // blow-up guard on the physical sup of each component
  int guard_stride = 16;   // steps between guard checks
};

struct SimStatus {
  enum class Outcome { Completed, GuardTripped, NonFinite };
  Outcome outcome = Outcome::Completed;
  double t_stop = 0.0;    // time reached
  double sup_at_stop = 0.0;
  bool ok() const { return outcome == Outcome::Completed; }
};

// phi_j(z) = (e^z - sum_{i<j} z^i/i!) / z^j, evaluated by series for |z| < 1
// (the closed form cancels catastrophically there) and directly otherwise.
cplx phi_fn(int j, cplx z);
cplx phi_fn_deriv(int j, cplx z);

// Per-mode ETD-RK4 coefficients for a scalar linear symbol lam and step h:
//   E = e^{h lam}, E2 = e^{h lam/2}, Q = (h/2) phi1(h lam/2),
//   f1 = h (phi1 - 3 phi2 + 4 phi3), f2 = h (phi2 - 2 phi3),
//   f3 = h (4 phi3 - phi2), all at h lam.
struct Etd4Scalar {
  cplx E, E2, Q, f1, f2, f3;
};
Etd4Scalar etd4_scalar(cplx lam, double h);

// Matrix version built from the analytic eigendecomposition of the 2x2 symbol,
// g(M) = g(l2) I + dd * (M - l2 I) with the divided difference dd replaced by
// g' at the midpoint when the eigenvalues nearly coincide.
struct Etd4Mat {
  Mat2c E, E2, Q, f1, f2, f3;
};
Etd4Mat etd4_mat(const Mat2c& M, double h);

Mat2c mat_exp(const Mat2c& M);  // spectral-formula matrix exponential

// One ETD-RK4 step of a scalar-symbol system. State is the coefficient vector;
// nonlin fills the (already dealiased) nonlinear tendency in coefficient space.
using ScalarNonlin = std::function<void(const std::vector<cplx>&, std::vector<cplx>&)>;
void etd4_step_scalar(const std::vector<Etd4Scalar>& tab, std::vector<cplx>& u,
                      const ScalarNonlin& nonlin);

// Pair version: two coefficient vectors coupled through 2x2 tables.
using PairNonlin = std::function<void(const std::vector<cplx>&, const std::vector<cplx>&,
                                      std::vector<cplx>&, std::vector<cplx>&)>;
void etd4_step_pair(const std::vector<Etd4Mat>& tab, std::vector<cplx>& u1,
                    std::vector<cplx>& u2, const PairNonlin& nonlin);

// IMEX-BDF2 companions (first step bootstrapped by the caller with ETD-RK4):
//   (I - 2h/3 L) u^{n+1} = (4 u^n - u^{n-1})/3 + 2h/3 (2 N^n - N^{n-1}).
struct ImexBdf2Scalar {
  std::vector<cplx> inv;  // 1 / (1 - 2h/3 lam)
};
struct ImexBdf2Mat {
  std::vector<Mat2c> inv;
};
ImexBdf2Scalar imex_tables_scalar(const std::vector<cplx>& lam, double h);
ImexBdf2Mat imex_tables_mat(const std::vector<Mat2c>& L, double h);

}  // namespace glkdv
