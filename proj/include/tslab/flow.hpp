#pragma once

#include <array>
#include <vector>

#include "tslab/potential.hpp"

namespace tslab {

/// Point (x, xi) of phase space.
struct FlowPoint {
  double x = 0.0;
  double xi = 0.0;
};

/// d(x, xi)/d(y, eta), row-major: [[dx/dy, dx/deta], [dxi/dy, dxi/deta]].
using Jacobian2 = std::array<std::array<double, 2>, 2>;

inline constexpr int kDefaultFlowSteps = 200;

/// H = xi^2/2 + V(t, x).
double energy(const PotentialModel& pot, double t, FlowPoint p);

/// chi(t, s)(y, eta) by classical RK4 with `nsteps` fixed steps (t < s allowed).
/// Throws FlowError on a non-finite state.
FlowPoint hamiltonian_flow(const PotentialModel& pot, double s, double t, FlowPoint start,
                           int nsteps = kDefaultFlowSteps);

/// Flow together with its first variational equations.
Jacobian2 flow_jacobian(const PotentialModel& pot, double s, double t, FlowPoint start,
                        int nsteps = kDefaultFlowSteps);

/// Classical path from (s, y) to (t, x) sampled at the RK4 nodes.
struct Trajectory {
  double s = 0.0, t = 0.0, y = 0.0, x = 0.0;
  double eta = 0.0;      ///< shooting momentum at time s
  double dx_deta = 0.0;  ///< at time t
  int iterations = 0;
  std::vector<double> times, positions, momenta;
};

/// Outcome of one shot from (s, y, eta): end state, eta-variations and the
/// Simpson action along the RK4 nodes.
struct Shot {
  double x = 0.0, xi = 0.0;
  double dx_deta = 0.0, dxi_deta = 0.0;
  double action = 0.0;
};

Shot shoot(const PotentialModel& pot, double s, double t, double y, double eta,
           int nsteps = kDefaultFlowSteps);

struct ShootingSolution {
  double eta = 0.0;
  Shot shot;
  int iterations = 0;
};

/// Newton iteration on eta until |x(t) - x| <= tol, starting from eta_guess.
/// Throws CausticError after 50 iterations or when |dx/deta| <= 1e-7 |t - s|.
ShootingSolution solve_shooting(const PotentialModel& pot, double s, double t, double y, double x,
                                double eta_guess, double tol, int nsteps = kDefaultFlowSteps);

/// Two-point boundary value problem gamma(s) = y, gamma(t) = x; initial
/// guess eta_0 = (x - y)/(t - s).
Trajectory classical_bvp(const PotentialModel& pot, double s, double t, double y, double x,
                         double tol = 1e-11, int nsteps = kDefaultFlowSteps);

/// Composite Simpson rule of L = xi^2/2 - V along the stored nodes.
double action_integral(const PotentialModel& pot, const Trajectory& traj);

}  // namespace tslab
