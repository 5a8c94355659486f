#include "tslab/phase_window.hpp"

#include <cmath>

namespace tslab {

double smooth_step(double t) noexcept {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

double PhaseWindow::operator()(double u) const noexcept {
  if (u <= pass) return 1.0;
  if (u >= stop) return 0.0;
  return 1.0 - smooth_step((u - pass) / (stop - pass));
}

}  // namespace tslab
