#include "tslab/slicing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "tslab/errors.hpp"
#include "tslab/strings.hpp"
#include "tslab/fourier.hpp"
#include "tslab/norms.hpp"

namespace tslab {
namespace {

long long quantize(double v) { return std::llround(std::ldexp(v, 40)); }

[[noreturn]] void rethrow_for_gap(double a, double b) {
  const std::string where = "gap [" + num(a) + ", " + num(b) + "]: ";
  try {
    throw;
  } catch (const ResolutionError& e) {
    throw ResolutionError(where + e.reason(), e.required_n());
  } catch (const CausticError& e) {
    throw CausticError(where + e.reason());
  } catch (const GuardError& e) {
    throw GuardError(e.guard(), where + e.reason());
  }
}

}  // namespace

SliceEngine::SliceEngine(PotentialModel pot, GridSpec grid, EngineOptions options)
    : pot_(std::move(pot)), grid_(grid), options_(options) {
  options_.table.eta_window = std::numeric_limits<double>::infinity();
}

SliceEngine::Key SliceEngine::key(double s, double t, double hbar, int order) const {
  return {pot_.time_independent() ? 0 : quantize(s), quantize(t - s), quantize(hbar), order};
}

SliceEngine::Gap& SliceEngine::gap(double s, double t) {
  const long long sk = pot_.time_independent() ? 0 : quantize(s);
  const long long tk = quantize(t - s);
  for (auto& g : gaps_)
    if (g.s_key == sk && g.tau_key == tk) return g;
  const Axis axis = Axis::from_grid(grid_);
  auto tab = std::make_unique<GeneratingTable>(generating_table(pot_, s, t, axis, axis, options_.table));
  while (!gaps_.empty() && gaps_.size() >= std::max<std::size_t>(options_.cached_tables, 1)) gaps_.pop_front();
  gaps_.push_back(Gap{sk, tk, std::move(tab), nullptr});
  return gaps_.back();
}

const GeneratingTable& SliceEngine::table(double s, double t) {
  std::lock_guard lock(mutex_);
  return *gap(s, t).table;
}

const SliceKernel& SliceEngine::kernel(double s, double t, double hbar, int order) {
  std::lock_guard lock(mutex_);
  const Key k = key(s, t, hbar, order);
  if (auto it = kernels_.find(k); it != kernels_.end()) return *it->second;
  Gap& g = gap(s, t);
  if (order == 1 && !g.amplitude) g.amplitude = std::make_unique<AmplitudeTable>(amplitude_a1(pot_, *g.table));
  auto built = std::make_unique<SliceKernel>(
      build_slice_kernel(*g.table, order == 1 ? g.amplitude.get() : nullptr, order, hbar, grid_, options_.bands));
  const SliceKernel& ref = *built;
  kernels_.emplace(k, std::move(built));
  return ref;
}

WaveFunction SliceEngine::slice(double s, double t, int order, const WaveFunction& f) {
  try {
    return apply_kernel(kernel(s, t, f.hbar(), order), f);
  } catch (const GuardError&) {
    rethrow_for_gap(s, t);
  }
}

WaveFunction SliceEngine::propagate(const Subdivision& omega, int order, const WaveFunction& f) {
  if (!(f.grid() == grid_)) throw InvalidArgument("SliceEngine::propagate: grid mismatch");
  WaveFunction u = f;
  const auto& times = omega.times();
  for (std::size_t j = 1; j < times.size(); ++j) u = slice(times[j - 1], times[j], order, u);
  return u;
}

std::size_t SliceEngine::cached_kernels() const {
  std::lock_guard lock(mutex_);
  return kernels_.size();
}

void SliceEngine::clear() {
  std::lock_guard lock(mutex_);
  kernels_.clear();
  gaps_.clear();
}

WaveFunction compose_slices(const PotentialModel& pot, const Subdivision& omega, double hbar, int order,
                            const WaveFunction& f) {
  SliceEngine engine(pot, f.grid());
  return engine.propagate(omega, order, f.with_hbar(hbar));
}

ResidualResult parametrix_residual(SliceEngine& engine, double s, double t, int order, const WaveFunction& f,
                                   TimeStencil stencil) {
  const double dt = stencil.dt;
  if (stencil.points != 2 && stencil.points != 4)
    throw InvalidArgument("parametrix_residual: stencil must have 2 or 4 points");
  const double reach = stencil.points == 4 ? 2.0 * dt : dt;
  if (!(dt > 0.0 && reach < 0.5 * (t - s)))
    throw InvalidArgument("parametrix_residual: time stencil reaches too close to s");
  const double hbar = f.hbar();
  const GridSpec& g = f.grid();
  std::vector<cplx> dudt(g.n);
  {
    const WaveFunction p1 = engine.slice(s, t + dt, order, f);
    const WaveFunction m1 = engine.slice(s, t - dt, order, f);
    if (stencil.points == 2) {
      for (std::size_t j = 0; j < g.n; ++j) dudt[j] = (p1[j] - m1[j]) / (2.0 * dt);
    } else {
      const WaveFunction p2 = engine.slice(s, t + 2.0 * dt, order, f);
      const WaveFunction m2 = engine.slice(s, t - 2.0 * dt, order, f);
      for (std::size_t j = 0; j < g.n; ++j)
        dudt[j] = (8.0 * (p1[j] - m1[j]) - (p2[j] - m2[j])) / (12.0 * dt);
    }
  }
  const WaveFunction mid = engine.slice(s, t, order, f);
  const WaveFunction lap = apply_multiplier(mid, [](double xi) { return cplx(-xi * xi, 0.0); });
  std::vector<cplx> field(g.n);
  const cplx ih(0.0, hbar);
  for (std::size_t j = 0; j < g.n; ++j)
    field[j] = ih * dudt[j] + 0.5 * hbar * hbar * lap[j] - engine.potential().value(t, g.x(j)) * mid[j];
  ResidualResult r{s, t, hbar, order, f.with_values(std::move(field)), 0.0};
  r.l2 = lp_norm(r.field, 2.0);
  return r;
}

ResidualResult parametrix_residual(const PotentialModel& pot, double hbar, double s, double t, int order,
                                   const WaveFunction& f, TimeStencil stencil) {
  SliceEngine engine(pot, f.grid());
  return parametrix_residual(engine, s, t, order, f.with_hbar(hbar), stencil);
}

void write_residual_csv(std::ostream& out, const std::vector<ResidualRow>& rows) {
  out << "tau,hbar,N,residual_l2\n";
  out.precision(17);
  for (const auto& r : rows) out << r.tau << ',' << r.hbar << ',' << r.order << ',' << r.residual_l2 << '\n';
}

}  // namespace tslab
