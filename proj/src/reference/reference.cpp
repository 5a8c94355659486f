#include "tslab/reference.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <memory>
#include <mutex>

#include "tslab/errors.hpp"
#include "tslab/strings.hpp"
#include "tslab/fourier.hpp"
#include "tslab/norms.hpp"
#include "tslab/phase_window.hpp"

namespace tslab {

WaveFunction free_propagator(const WaveFunction& f, double tau) {
  const double c = 0.5 * f.hbar() * tau;
  return apply_multiplier(f, [c](double xi) { return std::polar(1.0, -c * xi * xi); });
}

BandedKernel mehler_kernel(const GridSpec& grid, double hbar, double tau) {
  const double sn = std::sin(tau), cs = std::cos(tau);
  if (std::abs(sn) <= 0.05)
    throw GuardError("focal-time", "Mehler kernel refused at tau = " + num(tau) + " (|sin tau| <= 0.05)");
  const double dy = grid.dx();
  const double maslov = std::floor(tau / kPi);
  const cplx prefactor = std::polar(dy / std::sqrt(2.0 * kPi * hbar * std::abs(sn)), -kPi / 4.0 - kPi / 2.0 * maslov);
  const PhaseWindow window;
  const double rate = dy / (kPi * hbar);
  return BandedKernel::build(grid, window.pass * grid.nyquist(), [&](std::size_t i, std::vector<cplx>& row) {
    const double x = grid.x(i);
    auto weight = [&](std::size_t j) {
      const double y = grid.x(j);
      return window(rate * std::abs((y * cs - x) / sn));
    };
    std::size_t first = grid.n, last = 0;
    for (std::size_t j = 0; j < grid.n; ++j)
      if (weight(j) > 0.0) {
        first = std::min(first, j);
        last = j + 1;
      }
    if (first >= last) return std::size_t{0};
    row.resize(last - first);
    for (std::size_t j = first; j < last; ++j) {
      const double y = grid.x(j);
      const double phase = ((x * x + y * y) * cs - 2.0 * x * y) / (2.0 * hbar * sn);
      row[j - first] = weight(j) * prefactor * std::polar(1.0, phase);
    }
    return first;
  });
}

WaveFunction mehler_propagator(const WaveFunction& f, double tau) {
  // the last few kernels are kept: Gabor matrices and sweeps apply the same
  // propagator to many inputs
  struct Entry {
    GridSpec grid;
    double hbar, tau;
    std::shared_ptr<const BandedKernel> kernel;
  };
  static std::mutex mutex;
  static std::deque<Entry> cache;
  std::shared_ptr<const BandedKernel> k;
  {
    std::lock_guard lock(mutex);
    for (const Entry& e : cache)
      if (e.grid == f.grid() && e.hbar == f.hbar() && e.tau == tau) k = e.kernel;
    if (!k) {
      k = std::make_shared<const BandedKernel>(mehler_kernel(f.grid(), f.hbar(), tau));
      if (cache.size() >= 3) cache.pop_front();
      cache.push_back(Entry{f.grid(), f.hbar(), tau, k});
    }
  }
  return k->apply(f, "mehler_propagator");
}

std::size_t split_step_min_steps(const PotentialModel& pot, const GridSpec& grid, double hbar, double s,
                                 double t) {
  double vmax = 0.0;
  for (double tt : {s, 0.5 * (s + t), t})
    for (std::size_t j = 0; j < grid.n; ++j) vmax = std::max(vmax, std::abs(pot.value(tt, grid.x(j))));
  const double dt_max = 0.999 * (kPi / 4.0) * hbar / std::max(vmax, 1e-300);
  return static_cast<std::size_t>(std::max(1.0, std::ceil(std::abs(t - s) / dt_max)));
}

WaveFunction split_step_reference(const PotentialModel& pot, const WaveFunction& f, double s, double t,
                                  std::size_t nsteps) {
  if (nsteps == 0) throw InvalidArgument("split_step_reference: nsteps must be >= 1");
  const GridSpec& g = f.grid();
  const double hbar = f.hbar();
  const double dt = (t - s) / static_cast<double>(nsteps);
  if (nsteps < split_step_min_steps(pot, g, hbar, s, t))
    throw GuardError("split-step", "max|V| dt / hbar >= pi/4 with " + std::to_string(nsteps) +
                                       " steps (need >= " + std::to_string(split_step_min_steps(pot, g, hbar, s, t)) + ")");
  f.require_boundary_mass(kBoundaryMassTol, "split_step_reference");

  const std::size_t n = g.n;
  std::vector<cplx> u(f.values().begin(), f.values().end());
  // kinetic factor in FFTW order; the grid phase factors cancel between the
  // forward and backward transforms
  std::vector<cplx> kinetic(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double xi = g.xi_fft(k);
    kinetic[k] = std::polar(1.0 / static_cast<double>(n), -0.5 * hbar * dt * xi * xi);
  }
  std::vector<cplx> half(n);
  auto fill_half = [&](double tm) {
    for (std::size_t j = 0; j < n; ++j) half[j] = std::polar(1.0, -0.5 * dt * pot.value(tm, g.x(j)) / hbar);
  };
  const bool frozen = pot.time_independent();
  if (frozen) fill_half(s);
  for (std::size_t step = 0; step < nsteps; ++step) {
    if (!frozen) fill_half(s + (static_cast<double>(step) + 0.5) * dt);
    for (std::size_t j = 0; j < n; ++j) u[j] *= half[j];
    fft_inplace(u, Direction::forward);
    for (std::size_t k = 0; k < n; ++k) u[k] *= kinetic[k];
    fft_inplace(u, Direction::inverse);
    for (std::size_t j = 0; j < n; ++j) u[j] *= half[j];
  }
  WaveFunction out = f.with_values(std::move(u));
  out.require_boundary_mass(kBoundaryMassTol, "split_step_reference");
  return out;
}

namespace {

ReferenceResult split_step_doubling(const PotentialModel& pot, const WaveFunction& f, double s, double t,
                                    double tol) {
  constexpr std::size_t kMaxSteps = std::size_t{1} << 22;
  std::size_t steps = std::max<std::size_t>(split_step_min_steps(pot, f.grid(), f.hbar(), s, t), 16);
  WaveFunction coarse = split_step_reference(pot, f, s, t, steps);
  while (true) {
    steps *= 2;
    WaveFunction fine = split_step_reference(pot, f, s, t, steps);
    // Strang splitting is second order: fine - exact ~ (coarse - fine)/3
    const double change = relative_l2_error(coarse, fine);
    if (change < tol || steps >= kMaxSteps) {
      if (change >= tol)
        throw GuardError("reference-accuracy", "split-step self-consistency " + num(change) +
                                                   " not reached below " + num(tol));
      return ReferenceResult{std::move(fine), change / 3.0, "split-step", steps};
    }
    coarse = std::move(fine);
  }
}

}  // namespace

ReferenceResult exact_propagator(const PotentialModel& pot, const WaveFunction& f, double s, double t, double tol) {
  const double tau = t - s;
  if (tau == 0.0) return ReferenceResult{f, 0.0, "identity", 0};
  switch (pot.kind()) {
    case PotentialKind::free:
      return ReferenceResult{free_propagator(f, tau), 0.0, "free", 0};
    case PotentialKind::harmonic:
      try {
        WaveFunction full = mehler_propagator(f, tau);
        const WaveFunction half = mehler_propagator(mehler_propagator(f, 0.5 * tau), 0.5 * tau);
        const double acc = relative_l2_error(half, full);
        if (acc < tol) return ReferenceResult{std::move(full), acc, "mehler", 0};
      } catch (const GuardError&) {
      }
      return split_step_doubling(pot, f, s, t, tol);
    default:
      return split_step_doubling(pot, f, s, t, tol);
  }
}

}  // namespace tslab
