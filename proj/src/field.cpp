#include "glkdv/field.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace glkdv {

namespace {

constexpr double kSqrt2Pi = 2.50662827463100050242;

// Plan creation is not thread-safe in FFTW; execution on distinct arrays is.
// Plans are cached per size, created out-of-place with FFTW_UNALIGNED so they
// can be executed on any buffers via the new-array interface.
class FftCache {
 public:
  static FftCache& instance() {
    static FftCache c;
    return c;
  }

  fftw_plan get(int n, int sign) {
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_pair(n, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    std::vector<cplx> a(n), b(n);
    fftw_plan p = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(a.data()),
                                   reinterpret_cast<fftw_complex*>(b.data()), sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_[key] = p;
    return p;
  }

 private:
  std::mutex mu_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

void run_plan(int n, int sign, const cplx* in, cplx* out) {
  fftw_plan p = FftCache::instance().get(n, sign);
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

}  // namespace

void fft_forward_raw(int n, const cplx* in, cplx* out) { run_plan(n, FFTW_FORWARD, in, out); }
void fft_inverse_raw(int n, const cplx* in, cplx* out) { run_plan(n, FFTW_BACKWARD, in, out); }

SpectralField SpectralField::zero(const GridPtr& g) {
  SpectralField f;
  f.grid = g;
  f.coef.assign(g->n, cplx(0.0));
  return f;
}

SpectralField SpectralField::from_coeffs(const GridPtr& g, std::vector<cplx> c) {
  if (static_cast<int>(c.size()) != g->n)
    throw std::invalid_argument("SpectralField: coefficient count != grid size");
  SpectralField f;
  f.grid = g;
  f.coef = std::move(c);
  return f;
}

SpectralField SpectralField::from_physical(const GridPtr& g, const std::vector<cplx>& samples) {
  if (static_cast<int>(samples.size()) != g->n)
    throw std::invalid_argument("SpectralField: sample count != grid size");
  SpectralField f;
  f.grid = g;
  f.coef.resize(g->n);
  fft_forward_raw(g->n, samples.data(), f.coef.data());
  const double scale = g->dx() / kSqrt2Pi;
  for (auto& c : f.coef) c *= scale;
  return f;
}

SpectralField SpectralField::from_physical_real(const GridPtr& g,
                                                const std::vector<double>& samples) {
  std::vector<cplx> tmp(samples.begin(), samples.end());
  return from_physical(g, tmp);
}

std::vector<cplx> SpectralField::physical() const {
  std::vector<cplx> out(grid->n);
  fft_inverse_raw(grid->n, coef.data(), out.data());
  const double scale = grid->dk() / kSqrt2Pi;
  for (auto& v : out) v *= scale;
  return out;
}

std::vector<double> SpectralField::physical_real() const {
  const auto p = physical();
  std::vector<double> out(p.size());
  for (size_t i = 0; i < p.size(); ++i) out[i] = p[i].real();
  return out;
}

double SpectralField::sup_abs() const {
  double m = 0.0;
  for (const auto& v : physical()) m = std::max(m, std::abs(v));
  return m;
}

cplx SpectralField::mean() const { return coef[0] * kSqrt2Pi / grid->length; }

bool SpectralField::finite() const {
  for (const auto& v : coef)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  for (size_t i = 0; i < coef.size(); ++i) coef[i] += o.coef[i];
  return *this;
}
SpectralField& SpectralField::operator-=(const SpectralField& o) {
  for (size_t i = 0; i < coef.size(); ++i) coef[i] -= o.coef[i];
  return *this;
}
SpectralField& SpectralField::operator*=(double a) {
  for (auto& c : coef) c *= a;
  return *this;
}
SpectralField SpectralField::operator+(const SpectralField& o) const {
  SpectralField f = *this;
  return f += o;
}
SpectralField SpectralField::operator-(const SpectralField& o) const {
  SpectralField f = *this;
  return f -= o;
}
SpectralField SpectralField::operator*(double a) const {
  SpectralField f = *this;
  return f *= a;
}

void SpectralField::enforce_real() {
  const int n = grid->n;
  coef[0] = cplx(coef[0].real(), 0.0);
  coef[n / 2] = cplx(coef[n / 2].real(), 0.0);
  for (int j = 1; j < n / 2; ++j) {
    const cplx avg = 0.5 * (coef[j] + std::conj(coef[n - j]));
    coef[j] = avg;
    coef[n - j] = std::conj(avg);
  }
}

SpectralField padded_product(const SpectralField& a, const SpectralField& b) {
  if (a.grid != b.grid) throw std::invalid_argument("padded_product: grid mismatch");
  const int n = a.grid->n;
  const auto big = SpectralGrid::make(2 * n, a.grid->length);
  auto lift = [&](const SpectralField& f) {
    SpectralField g = SpectralField::zero(big);
    for (int j = 0; j < n; ++j) {
      const int js = j < n / 2 ? j : j - n;
      g.coef[js >= 0 ? js : 2 * n + js] = f.coef[j];
    }
    return g;
  };
  const auto pa = lift(a).physical();
  const auto pb = lift(b).physical();
  std::vector<cplx> prod(2 * n);
  for (int j = 0; j < 2 * n; ++j) prod[j] = pa[j] * pb[j];
  const SpectralField pf = SpectralField::from_physical(big, prod);
  SpectralField out = SpectralField::zero(a.grid);
  for (int j = 0; j < n; ++j) {
    const int js = j < n / 2 ? j : j - n;
    out.coef[j] = pf.coef[js >= 0 ? js : 2 * n + js];
  }
  return out;
}

}  // namespace glkdv
