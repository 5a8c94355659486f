#pragma once

#include <string>

#include "tslab/banded_kernel.hpp"
#include "tslab/potential.hpp"
#include "tslab/wavefunction.hpp"

namespace tslab {

/// e^{i hbar tau Delta/2} f as the multiplier e^{-i hbar tau xi^2/2}
/// (hbar taken from f).
WaveFunction free_propagator(const WaveFunction& f, double tau);

/// Harmonic-oscillator kernel for V = x^2/2 on f's grid:
///   (2 pi i hbar sin tau)^{-1/2} exp(i [(x^2+y^2) cos tau - 2xy] / (2 hbar sin tau)) dy
/// with the branch continued through focal times, i.e. the constant
/// e^{-i pi/4 - i (pi/2) floor(tau/pi)} |2 pi hbar sin tau|^{-1/2}. Tapered by
/// PhaseWindow in the local phase rate. Throws GuardError("focal-time") when
/// |sin tau| <= 0.05.
BandedKernel mehler_kernel(const GridSpec& grid, double hbar, double tau);

/// Recently built kernels are cached.
WaveFunction mehler_propagator(const WaveFunction& f, double tau);

/// Strang splitting with V evaluated at each step's midpoint time. Throws
/// GuardError("split-step") unless max|V| dt / hbar < pi/4 over the box.
WaveFunction split_step_reference(const PotentialModel& pot, const WaveFunction& f, double s, double t,
                                  std::size_t nsteps);

/// Smallest step count satisfying the split-step phase guard.
std::size_t split_step_min_steps(const PotentialModel& pot, const GridSpec& grid, double hbar, double s,
                                 double t);

struct ReferenceResult {
  WaveFunction u;
  double accuracy = 0.0;  ///< estimated relative L2 error
  std::string method;     ///< free | mehler | split-step
  std::size_t nsteps = 0;
};

/// U(t, s) f by dispatch: free -> multiplier; harmonic -> Mehler (split-step
/// when Mehler refuses); otherwise split-step with step doubling until two
/// successive results agree to `tol` (relative L2). The Mehler accuracy is
/// the mismatch between U(tau/2)^2 f and U(tau) f.
ReferenceResult exact_propagator(const PotentialModel& pot, const WaveFunction& f, double s, double t,
                                 double tol = 1e-8);

}  // namespace tslab
