#pragma once
#include <memory>
#include <vector>

namespace glkdv {

// Uniform periodic grid on [0, length) with n points, n a power of two.
// Wavenumbers follow the FFT layout: k[j] = (2*pi/length) * j for j < n/2 and
// (2*pi/length) * (j - n) for j >= n/2.
struct SpectralGrid {
  int n = 0;
  double length = 0.0;
  std::vector<double> k;

  double dx() const { return length / n; }
  double dk() const { return 2.0 * 3.14159265358979323846 / length; }
  std::vector<double> points() const;

  // Largest signed mode index kept by the 2/3 dealiasing rule.
  int dealias_cut() const { return n / 3; }

  static std::shared_ptr<const SpectralGrid> make(int n, double length);
};

using GridPtr = std::shared_ptr<const SpectralGrid>;

int next_pow2(int n);

}  // namespace glkdv
