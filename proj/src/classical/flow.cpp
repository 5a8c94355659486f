#include "tslab/flow.hpp"

#include <cmath>
#include <string>

#include "tslab/errors.hpp"
#include "tslab/strings.hpp"

namespace tslab {
namespace {

// (x, xi) plus one column of the variational matrix (a, b) = d(x, xi)/dp.
struct State {
  double x, xi, a, b;
};

// Evaluators with the potential kind resolved at compile time, so the RK4
// loops inline them (and fuse sin/cos for harmonic-cos).
struct FreeEval {
  void operator()(double, double, double& v, double& g, double& h) const { v = g = h = 0.0; }
};
struct HarmonicEval {
  void operator()(double, double x, double& v, double& g, double& h) const {
    v = 0.5 * x * x;
    g = x;
    h = 1.0;
  }
};
struct HarmonicCosEval {
  double amp;
  void operator()(double, double x, double& v, double& g, double& h) const {
    double s, c;
    ::sincos(x, &s, &c);
    v = 0.5 * x * x + amp * c;
    g = x - amp * s;
    h = 1.0 - amp * c;
  }
};
struct PulsedEval {
  double eps;
  void operator()(double t, double x, double& v, double& g, double& h) const {
    const double f = 1.0 + eps * std::sin(t);
    v = 0.5 * x * x * f;
    g = x * f;
    h = f;
  }
};
struct GenericEval {
  const PotentialModel* pot;
  void operator()(double t, double x, double& v, double& g, double& h) const {
    pot->value_grad_hess(t, x, v, g, h);
  }
};

template <class F>
decltype(auto) dispatch(const PotentialModel& pot, F&& f) {
  switch (pot.kind()) {
    case PotentialKind::free: return f(FreeEval{});
    case PotentialKind::harmonic: return f(HarmonicEval{});
    case PotentialKind::harmonic_cos: return f(HarmonicCosEval{pot.parameter()});
    case PotentialKind::pulsed_harmonic: return f(PulsedEval{pot.parameter()});
    case PotentialKind::custom: break;
  }
  return f(GenericEval{&pot});
}

template <class E>
inline State derivative(const E& eval, double t, const State& s, double& v) {
  double g, h;
  eval(t, s.x, v, g, h);
  return State{s.xi, -g, s.b, -h * s.a};
}

inline State axpy(const State& s, double h, const State& k) {
  return State{s.x + h * k.x, s.xi + h * k.xi, s.a + h * k.a, s.b + h * k.b};
}

// One RK4 step; `v0` receives V(t, x) at the step start.
template <class E>
inline State rk4_step(const E& eval, double t, double h, const State& s, double& v0) {
  double unused = 0.0;
  const State k1 = derivative(eval, t, s, v0);
  const State k2 = derivative(eval, t + 0.5 * h, axpy(s, 0.5 * h, k1), unused);
  const State k3 = derivative(eval, t + 0.5 * h, axpy(s, 0.5 * h, k2), unused);
  const State k4 = derivative(eval, t + h, axpy(s, h, k3), unused);
  const double w = h / 6.0;
  return State{s.x + w * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
               s.xi + w * (k1.xi + 2.0 * k2.xi + 2.0 * k3.xi + k4.xi),
               s.a + w * (k1.a + 2.0 * k2.a + 2.0 * k3.a + k4.a),
               s.b + w * (k1.b + 2.0 * k2.b + 2.0 * k3.b + k4.b)};
}

void check_finite(const State& s, double tau) {
  if (!std::isfinite(s.x) || !std::isfinite(s.xi) || !std::isfinite(s.a) || !std::isfinite(s.b))
    throw FlowError("Hamiltonian flow: non-finite state at tau = " + num(tau), tau);
}

void check_steps(int nsteps) {
  if (nsteps < 1) throw InvalidArgument("flow: nsteps must be >= 1");
}

State integrate(const PotentialModel& pot, double s, double t, State start, int nsteps) {
  check_steps(nsteps);
  return dispatch(pot, [&](const auto& eval) {
    const double h = (t - s) / nsteps;
    State st = start;
    double v;
    for (int i = 0; i < nsteps; ++i) {
      const double tau = s + i * h;
      st = rk4_step(eval, tau, h, st, v);
      check_finite(st, tau + h);
    }
    return st;
  });
}

inline int even_steps(int nsteps) { return nsteps % 2 == 0 ? nsteps : nsteps + 1; }

}  // namespace

double energy(const PotentialModel& pot, double t, FlowPoint p) {
  return 0.5 * p.xi * p.xi + pot.value(t, p.x);
}

FlowPoint hamiltonian_flow(const PotentialModel& pot, double s, double t, FlowPoint start,
                           int nsteps) {
  const State end = integrate(pot, s, t, State{start.x, start.xi, 0.0, 0.0}, nsteps);
  return FlowPoint{end.x, end.xi};
}

Jacobian2 flow_jacobian(const PotentialModel& pot, double s, double t, FlowPoint start,
                        int nsteps) {
  const State col_y = integrate(pot, s, t, State{start.x, start.xi, 1.0, 0.0}, nsteps);
  const State col_eta = integrate(pot, s, t, State{start.x, start.xi, 0.0, 1.0}, nsteps);
  return Jacobian2{{{col_y.a, col_eta.a}, {col_y.b, col_eta.b}}};
}

Shot shoot(const PotentialModel& pot, double s, double t, double y, double eta, int nsteps) {
  check_steps(nsteps);
  nsteps = even_steps(nsteps);
  return dispatch(pot, [&](const auto& eval) {
    const double h = (t - s) / nsteps;
    State st{y, eta, 0.0, 1.0};
    double odd = 0.0, even = 0.0, first = 0.0;
    double v;
    for (int i = 0; i < nsteps; ++i) {
      const double tau = s + i * h;
      const double xi = st.xi;
      st = rk4_step(eval, tau, h, st, v);
      const double lag = 0.5 * xi * xi - v;
      if (i == 0)
        first = lag;
      else if (i % 2 == 1)
        odd += lag;
      else
        even += lag;
    }
    check_finite(st, t);
    double g, hh;
    eval(t, st.x, v, g, hh);
    const double last = 0.5 * st.xi * st.xi - v;
    Shot out;
    out.x = st.x;
    out.xi = st.xi;
    out.dx_deta = st.a;
    out.dxi_deta = st.b;
    out.action = h / 3.0 * (first + 4.0 * odd + 2.0 * even + last);
    return out;
  });
}

ShootingSolution solve_shooting(const PotentialModel& pot, double s, double t, double y, double x,
                                double eta_guess, double tol, int nsteps) {
  if (!(tol > 0.0)) throw InvalidArgument("solve_shooting: tol must be positive");
  const double tau = t - s;
  if (tau == 0.0) throw InvalidArgument("solve_shooting: t == s");
  constexpr int kMaxIterations = 50;
  double eta = eta_guess;
  for (int it = 1; it <= kMaxIterations; ++it) {
    const Shot shot = shoot(pot, s, t, y, eta, nsteps);
    const double miss = shot.x - x;
    if (std::abs(miss) <= tol) return ShootingSolution{eta, shot, it};
    if (std::abs(shot.dx_deta) <= 1e-7 * std::abs(tau))
      throw CausticError("singular dx/deta = " + num(shot.dx_deta) + " for (x, y) = (" +
                         num(x) + ", " + num(y) + "), t - s = " + num(tau));
    eta -= miss / shot.dx_deta;
  }
  throw CausticError("Newton did not converge in 50 iterations for (x, y) = (" + num(x) +
                     ", " + num(y) + "), t - s = " + num(tau));
}

Trajectory classical_bvp(const PotentialModel& pot, double s, double t, double y, double x,
                         double tol, int nsteps) {
  if (!(t > s)) throw InvalidArgument("classical_bvp: requires t > s");
  const ShootingSolution sol = solve_shooting(pot, s, t, y, x, (x - y) / (t - s), tol, nsteps);
  Trajectory traj;
  traj.s = s;
  traj.t = t;
  traj.y = y;
  traj.x = x;
  traj.eta = sol.eta;
  traj.dx_deta = sol.shot.dx_deta;
  traj.iterations = sol.iterations;

  nsteps = even_steps(nsteps);
  const double h = (t - s) / nsteps;
  State st{y, sol.eta, 0.0, 1.0};
  traj.times.reserve(nsteps + 1);
  traj.positions.reserve(nsteps + 1);
  traj.momenta.reserve(nsteps + 1);
  double v;
  for (int i = 0; i <= nsteps; ++i) {
    const double tau = s + i * h;
    traj.times.push_back(tau);
    traj.positions.push_back(st.x);
    traj.momenta.push_back(st.xi);
    if (i < nsteps) st = dispatch(pot, [&](const auto& eval) { return rk4_step(eval, tau, h, st, v); });
  }
  return traj;
}

double action_integral(const PotentialModel& pot, const Trajectory& traj) {
  const std::size_t m = traj.times.size();
  if (m < 3 || (m - 1) % 2 != 0)
    throw InvalidArgument("action_integral: need an even number of intervals");
  const double h = (traj.times.back() - traj.times.front()) / static_cast<double>(m - 1);
  double acc = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double lag = 0.5 * traj.momenta[i] * traj.momenta[i] - pot.value(traj.times[i], traj.positions[i]);
    const double w = (i == 0 || i == m - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    acc += w * lag;
  }
  return h / 3.0 * acc;
}

}  // namespace tslab
