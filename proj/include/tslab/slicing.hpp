#pragma once

#include <iosfwd>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

#include "tslab/slice_kernel.hpp"
#include "tslab/subdivision.hpp"

namespace tslab {

struct EngineOptions {
  TableOptions table;  ///< the eta window is forced to infinity
  KernelBands bands;
  std::size_t cached_tables = 5;  ///< generating tables kept, oldest dropped first
};

/// Builds and caches slice kernels for one potential on one grid.
///
/// Kernels are keyed by (t - s, hbar, order) and, for time-dependent
/// potentials, also by s. The generating tables of recently requested gaps
/// are kept too (up to options.cached_tables), so sweeping hbar or the
/// order at fixed gaps solves each classical problem once.
class SliceEngine {
 public:
  SliceEngine(PotentialModel pot, GridSpec grid, EngineOptions options = {});

  const PotentialModel& potential() const noexcept { return pot_; }
  const GridSpec& grid() const noexcept { return grid_; }
  const EngineOptions& options() const noexcept { return options_; }

  const SliceKernel& kernel(double s, double t, double hbar, int order);
  const GeneratingTable& table(double s, double t);

  /// E^(N)(Omega, t, s) f: slices applied right to left. Guard failures are
  /// rethrown naming the offending gap.
  WaveFunction propagate(const Subdivision& omega, int order, const WaveFunction& f);

  /// One slice E^(N)(t, s) f.
  WaveFunction slice(double s, double t, int order, const WaveFunction& f);

  std::size_t cached_kernels() const;
  void clear();

 private:
  using Key = std::tuple<long long, long long, long long, int>;
  Key key(double s, double t, double hbar, int order) const;

  PotentialModel pot_;
  GridSpec grid_;
  EngineOptions options_;
  mutable std::mutex mutex_;
  std::map<Key, std::unique_ptr<SliceKernel>> kernels_;
  struct Gap {
    long long s_key, tau_key;
    std::unique_ptr<GeneratingTable> table;
    std::unique_ptr<AmplitudeTable> amplitude;
  };
  Gap& gap(double s, double t);
  std::deque<Gap> gaps_;
};

/// Convenience wrapper: fresh engine on f's grid.
WaveFunction compose_slices(const PotentialModel& pot, const Subdivision& omega, double hbar, int order,
                            const WaveFunction& f);

struct ResidualResult {
  double s = 0.0, t = 0.0, hbar = 1.0;
  int order = 0;
  WaveFunction field;  ///< G^(N)(t, s) f
  double l2 = 0.0;
};

/// Centered time difference: stencil 2 uses t +- dt, stencil 4 also
/// t +- 2 dt. The second-order error grows like dt^2 / hbar^2, which
/// swamps small residuals once hbar drops below ~1/4 at dt = 1e-4.
struct TimeStencil {
  double dt = 1e-4;
  int points = 2;
};

/// (i hbar d/dt + hbar^2 Delta/2 - V(t)) E^(N)(t, s) f with d/dt by a
/// centered difference and Delta as a Fourier multiplier.
ResidualResult parametrix_residual(SliceEngine& engine, double s, double t, int order, const WaveFunction& f,
                                   TimeStencil stencil = {});
ResidualResult parametrix_residual(const PotentialModel& pot, double hbar, double s, double t, int order,
                                   const WaveFunction& f, TimeStencil stencil = {});

struct ResidualRow {
  double tau, hbar;
  int order;
  double residual_l2;
};
/// Columns tau,hbar,N,residual_l2.
void write_residual_csv(std::ostream& out, const std::vector<ResidualRow>& rows);

}  // namespace tslab
