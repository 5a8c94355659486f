#pragma once

#include <complex>
#include <cstddef>
#include <numbers>

namespace tslab {

using cplx = std::complex<double>;
inline constexpr double kPi = std::numbers::pi;

/// Uniform periodic box discretisation of the real line.
///
/// Conventions, shared by every module:
///  * positions   x_j = -L + j*dx,        j = 0..n-1,  dx = 2L/n
///  * frequencies xi_k = k*dxi,           k = -n/2..n/2-1, dxi = pi/L
///    The Nyquist bucket k = -n/2 belongs to the negative side.
///  * "centered" frequency index m = k + n/2 runs 0..n-1 in increasing xi;
///    "fft" index is k mod n (FFTW storage order).
///  * forward transform  F(xi) = sum_j f(x_j) e^{-i x_j xi} dx
///    inverse transform  f(x) = (2 pi)^{-1} sum_k F(xi_k) e^{i x xi_k} dxi
///
/// Only d = 1 is implemented; `dim` is carried so that dimension-dependent
/// exponents (e.g. k_p = 2d|1/2-1/p|) read naturally at call sites.
struct GridSpec {
  int dim = 1;
  double half_width = 20.0;
  std::size_t n = 1024;

  /// Validates n (power of two, >= 8) and half_width (> 0).
  static GridSpec make(double half_width, std::size_t n);

  double dx() const noexcept { return 2.0 * half_width / static_cast<double>(n); }
  double dxi() const noexcept { return kPi / half_width; }
  double nyquist() const noexcept { return kPi / dx(); }

  double x(std::size_t j) const noexcept { return -half_width + static_cast<double>(j) * dx(); }
  /// Frequency at centered index m.
  double xi_centered(std::size_t m) const noexcept {
    return (static_cast<double>(m) - static_cast<double>(n / 2)) * dxi();
  }
  /// Frequency at FFTW storage index k.
  double xi_fft(std::size_t k) const noexcept {
    const auto kk = static_cast<long long>(k);
    const auto nn = static_cast<long long>(n);
    return static_cast<double>(kk < nn / 2 ? kk : kk - nn) * dxi();
  }
  /// Nearest grid index to x (clamped to the box).
  std::size_t nearest_index(double x) const noexcept;

  /// Same box, smallest power-of-two point count whose Nyquist frequency
  /// times `fraction` reaches `frequency`.
  std::size_t required_points(double frequency, double fraction) const noexcept;

  bool operator==(const GridSpec&) const = default;
};

/// Uniformly spaced axis restriction (used for tables on subsets of a grid).
struct Axis {
  double start = 0.0;
  double step = 1.0;
  std::size_t count = 0;

  double at(std::size_t i) const noexcept { return start + static_cast<double>(i) * step; }
  static Axis from_grid(const GridSpec& g) { return Axis{g.x(0), g.dx(), g.n}; }
};

}  // namespace tslab
