#include "tslab/slice_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tslab/errors.hpp"
#include "tslab/strings.hpp"
#include "tslab/fourier.hpp"

namespace tslab {

std::vector<cplx> free_propagator_row(const GridSpec& grid, double hbar, double tau) {
  std::vector<cplx> c(grid.n);
  const double scale = 1.0 / static_cast<double>(grid.n);
  for (std::size_t k = 0; k < grid.n; ++k) {
    const double xi = grid.xi_fft(k);
    c[k] = std::polar(scale, -0.5 * hbar * tau * xi * xi);
  }
  fft_inplace(c, Direction::inverse);
  return c;
}

cplx parametrix_kernel_value(const GeneratingTable& table, const AmplitudeTable* amplitude, int order,
                             double hbar, std::size_t i, std::size_t j) {
  const double tau = table.tau();
  const double e = order == 1 ? (*amplitude)(i, j) : 1.0;
  return std::polar(e / std::sqrt(2.0 * kPi * tau * hbar), table.S(i, j) / hbar - kPi / 4.0);
}

SliceKernel build_slice_kernel(const GeneratingTable& table, const AmplitudeTable* amplitude, int order,
                               double hbar, const GridSpec& grid, KernelBands bands) {
  if (order != 0 && order != 1) throw InvalidArgument("build_slice_kernel: order must be 0 or 1");
  if (order == 1 && amplitude == nullptr) throw InvalidArgument("build_slice_kernel: order 1 needs a1");
  if (!(hbar > 0.0 && hbar <= 1.0)) throw InvalidArgument("build_slice_kernel: hbar must lie in (0, 1]");
  const Axis axis = Axis::from_grid(grid);
  auto same = [](const Axis& a, const Axis& b) { return a.count == b.count && a.start == b.start && a.step == b.step; };
  if (!same(table.x_axis(), axis) || !same(table.y_axis(), axis))
    throw InvalidArgument("build_slice_kernel: table axes differ from the grid");
  if (amplitude && (!same(amplitude->x_axis, axis) || !same(amplitude->y_axis, axis)))
    throw InvalidArgument("build_slice_kernel: amplitude axes differ from the grid");

  SliceKernel k;
  k.order = order;
  k.s = table.s();
  k.t = table.t();
  k.hbar = hbar;
  const double tau = table.tau();
  const std::size_t n = grid.n;
  const std::vector<cplx> c = free_propagator_row(grid, hbar, tau);
  std::vector<double> rates(n, 0.0);

  k.kernel = BandedKernel::build(grid, bands.input * grid.nyquist(), [&](std::size_t i, std::vector<cplx>& row) {
    if (table.row_begin(i) != 0 || table.row_end(i) != n)
      throw GuardError("kernel-coverage", "generating table row at x = " + num(grid.x(i)) +
                                              " does not cover the grid (build it with an unbounded eta window)");
    const double x = grid.x(i);
    row.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double d = x - grid.x(j);
      double e = 1.0;
      if (order == 1) {
        e = (*amplitude)(i, j);
        if (std::isnan(e))
          throw GuardError("amplitude", "no a1 at (x, y) = (" + num(x) + ", " +
                                            num(grid.x(j)) + ")");
      }
      rates[i] = std::max(rates[i], std::abs(d / tau - table.eta(i, j)) / hbar);
      const std::size_t m = (i + n - j) % n;
      row[j] = c[m] * std::polar(e, (table.S(i, j) - 0.5 * d * d / tau) / hbar);
    }
    return std::size_t{0};
  });
  k.residual_rate = *std::max_element(rates.begin(), rates.end());
  const double limit = bands.residual * grid.nyquist();
  if (k.residual_rate > limit)
    throw ResolutionError("slice kernel residual phase rate " + num(k.residual_rate) +
                              " exceeds " + num(limit) + " at t - s = " + num(tau) +
                              ", hbar = " + num(hbar),
                          grid.required_points(k.residual_rate, bands.residual));
  return k;
}

WaveFunction apply_kernel(const SliceKernel& k, const WaveFunction& f) {
  if (std::abs(f.hbar() - k.hbar) > 1e-15 * k.hbar)
    throw InvalidArgument("apply_kernel: wavefunction hbar differs from the kernel's");
  return k.kernel.apply(f, "apply_kernel");
}

}  // namespace tslab
