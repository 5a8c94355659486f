#include "tslab/window.hpp"

#include <algorithm>
#include <cmath>

#include "tslab/errors.hpp"
#include "tslab/strings.hpp"

namespace tslab {

Window Window::from_function(const GridSpec& grid, const std::function<cplx(double)>& g, std::string label) {
  Window w;
  w.grid_ = grid;
  w.label_ = std::move(label);
  const double dx = grid.dx();
  const auto half = static_cast<long long>(grid.n / 2);
  std::vector<cplx> all(grid.n);
  double peak = 0.0;
  for (long long m = -half; m < half; ++m) {
    all[static_cast<std::size_t>(m + half)] = g(static_cast<double>(m) * dx);
    peak = std::max(peak, std::abs(all[static_cast<std::size_t>(m + half)]));
  }
  if (!(peak > 0.0) || !std::isfinite(peak)) throw InvalidArgument("Window: samples must be finite and not all zero");
  long long reach = 0;
  for (long long m = -half; m < half; ++m)
    if (std::abs(all[static_cast<std::size_t>(m + half)]) > 1e-17 * peak) reach = std::max(reach, std::abs(m));
  reach = std::min(reach, half - 1);
  w.half_ = reach;
  w.values_.assign(all.begin() + (half - reach), all.begin() + (half + reach + 1));
  double ss = 0.0;
  for (const cplx& v : all) ss += std::norm(v);
  w.l2_ = std::sqrt(ss * dx);
  return w;
}

Window Window::gaussian(const GridSpec& grid) {
  const double c = std::pow(kPi, -0.25);
  return from_function(grid, [c](double x) { return cplx(c * std::exp(-0.5 * x * x), 0.0); }, "gaussian");
}

Window Window::hermite1(const GridSpec& grid) {
  const double c = std::sqrt(2.0) * std::pow(kPi, -0.25);
  return from_function(grid, [c](double x) { return cplx(c * x * std::exp(-0.5 * x * x), 0.0); }, "hermite1");
}

cplx Window::shifted(std::size_t j, std::size_t center) const noexcept {
  const long long off = static_cast<long long>(j) - static_cast<long long>(center);
  if (off < -half_ || off > half_) return {0.0, 0.0};
  return values_[static_cast<std::size_t>(off + half_)];
}

std::size_t Window::first(std::size_t center) const noexcept {
  const long long c = static_cast<long long>(center);
  return static_cast<std::size_t>(std::max(0LL, c - half_));
}

std::size_t Window::last(std::size_t center) const noexcept {
  const long long c = static_cast<long long>(center);
  return static_cast<std::size_t>(std::min(static_cast<long long>(grid_.n), c + half_ + 1));
}

PhaseLattice PhaseLattice::make(const GridSpec& grid, double alpha, double beta, double radius) {
  if (!(alpha > 0.0 && beta > 0.0 && radius >= 0.0))
    throw InvalidArgument("PhaseLattice: need alpha, beta > 0 and R >= 0");
  const double dx = grid.dx();
  const long long step = std::max(1LL, std::llround(alpha / dx));
  PhaseLattice p;
  p.grid_ = grid;
  p.alpha_ = static_cast<double>(step) * dx;
  p.beta_ = beta;
  p.radius_ = radius;
  const auto mx = static_cast<long long>(std::floor(radius / p.alpha_ + 1e-12));
  const auto center = static_cast<long long>(grid.n / 2);
  for (long long m = -mx; m <= mx; ++m) {
    const long long j = center + m * step;
    if (j < 0 || j >= static_cast<long long>(grid.n))
      throw InvalidArgument("PhaseLattice: x node " + num(static_cast<double>(m) * p.alpha_) +
                            " lies outside the box");
    p.x_index_.push_back(static_cast<std::size_t>(j));
    p.xs_.push_back(grid.x(static_cast<std::size_t>(j)));
  }
  const auto mk = static_cast<long long>(std::floor(radius / beta + 1e-12));
  for (long long k = -mk; k <= mk; ++k) p.xis_.push_back(static_cast<double>(k) * beta);
  return p;
}

}  // namespace tslab
