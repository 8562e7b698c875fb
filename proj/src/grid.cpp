#include "glkdv/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace glkdv {

std::vector<double> SpectralGrid::points() const {
  std::vector<double> x(n);
  const double h = dx();
  for (int j = 0; j < n; ++j) x[j] = j * h;
  return x;
}

std::shared_ptr<const SpectralGrid> SpectralGrid::make(int n, double length) {
  if (n < 8 || (n & (n - 1)) != 0)
    throw std::invalid_argument("SpectralGrid: n must be a power of two >= 8");
  if (!(length > 0.0)) throw std::invalid_argument("SpectralGrid: length must be positive");
  auto g = std::make_shared<SpectralGrid>();
  g->n = n;
  g->length = length;
  g->k.resize(n);
  const double dk = g->dk();
  for (int j = 0; j < n; ++j) {
    const int js = j < n / 2 ? j : j - n;
    g->k[j] = dk * js;
  }
  return g;
}

int next_pow2(int n) {
  int p = 8;
  while (p < n) p *= 2;
  return p;
}

}  // namespace glkdv
