#include "tslab/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "tslab/errors.hpp"

namespace tslab {

GridSpec GridSpec::make(double half_width, std::size_t n) {
  if (!(half_width > 0.0) || !std::isfinite(half_width))
    throw InvalidArgument("GridSpec: half_width must be positive and finite");
  if (n < 8 || !std::has_single_bit(n))
    throw InvalidArgument("GridSpec: n must be a power of two >= 8, got " + std::to_string(n));
  return GridSpec{1, half_width, n};
}

std::size_t GridSpec::nearest_index(double xv) const noexcept {
  const double r = std::round((xv + half_width) / dx());
  if (r <= 0.0) return 0;
  return std::min(static_cast<std::size_t>(r), n - 1);
}

std::size_t GridSpec::required_points(double frequency, double fraction) const noexcept {
  std::size_t m = n;
  // fraction * pi / (2L/m) >= frequency
  while (fraction * kPi * static_cast<double>(m) / (2.0 * half_width) < frequency && m < (std::size_t{1} << 40))
    m *= 2;
  return m;
}

}  // namespace tslab
