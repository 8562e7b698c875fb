#pragma once
#include <array>
#include <complex>

namespace glkdv {

using cplx = std::complex<double>;

// Dense complex 2x2 matrix, row-major: [[a,b],[c,d]].
struct Mat2c {
  cplx a{0.0}, b{0.0}, c{0.0}, d{0.0};

  static Mat2c identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static Mat2c diag(cplx x, cplx y) { return {x, 0.0, 0.0, y}; }

  Mat2c operator+(const Mat2c& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
  Mat2c operator-(const Mat2c& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
  Mat2c operator*(const Mat2c& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d,
            c * o.a + d * o.c, c * o.b + d * o.d};
  }
  Mat2c operator*(cplx s) const { return {a * s, b * s, c * s, d * s}; }

  std::array<cplx, 2> apply(cplx x, cplx y) const {
    return {a * x + b * y, c * x + d * y};
  }

  cplx det() const { return a * d - b * c; }
  cplx trace() const { return a + d; }

  Mat2c inverse() const {
    const cplx dt = det();
    return {d / dt, -b / dt, -c / dt, a / dt};
  }

  double max_abs() const;
};

inline Mat2c operator*(cplx s, const Mat2c& m) { return m * s; }

inline double Mat2c::max_abs() const {
  double m = std::abs(a);
  m = std::max(m, std::abs(b));
  m = std::max(m, std::abs(c));
  return std::max(m, std::abs(d));
}

}  // namespace glkdv
