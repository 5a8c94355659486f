#pragma once

#include <span>

namespace tslab {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;  ///< 0 when only two points
  std::size_t points = 0;
};

/// Unweighted least squares y = intercept + slope * x. Throws FitError for
/// fewer than two points, mismatched sizes, non-finite data or constant x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// fit_line on (log x, log y); every value must be positive.
LineFit fit_loglog(std::span<const double> x, std::span<const double> y);

}  // namespace tslab
