#pragma once

namespace tslab {

/// Smooth cut-off for directly sampled oscillatory kernels (Mehler).
///
/// For a kernel e^{i phi(x,y)} sampled with spacing dy, the local phase
/// frequency |d phi/dy| must stay below the Nyquist rate pi/dy. Entries are
/// weighted by w(dy |d phi/dy| / pi): w = 1 up to `pass`, decays with a
/// C-infinity profile, and vanishes from `stop` on. Stationary points of
/// inputs whose spectrum lies below pass*pi/dy stay in the flat part, so
/// the cut-off only removes non-stationary (negligible) contributions.
struct PhaseWindow {
  double pass = 0.4;
  double stop = 0.8;

  /// Weight for normalised phase rate u = dy |phi_y| / pi.
  double operator()(double u) const noexcept;
};

/// C-infinity step: 0 for t <= 0, 1 for t >= 1.
double smooth_step(double t) noexcept;

}  // namespace tslab
