#pragma once

#include <functional>
#include <span>
#include <vector>

#include "tslab/phase_window.hpp"
#include "tslab/wavefunction.hpp"

namespace tslab {

/// Inputs whose spectral energy fraction beyond the kernel's input band
/// exceeds this are refused (the windowed quadrature would clip them).
inline constexpr double kSpectralGuardTol = 1e-16;

/// Integral operator g(x_i) = sum_j K_ij f(y_j) on one grid, stored as one
/// contiguous band of columns per row. Entries already include the
/// quadrature weight dy.
///
/// `input_band` is the largest input frequency the quadrature resolves
/// (for windowed oscillatory kernels, PhaseWindow::pass * nyquist).
class BandedKernel {
 public:
  BandedKernel() = default;

  /// Row filler: writes the band of row i into `row` and returns its first
  /// column. Called once per row (possibly concurrently for distinct rows).
  using RowFill = std::function<std::size_t(std::size_t i, std::vector<cplx>& row)>;
  static BandedKernel build(const GridSpec& grid, double input_band, const RowFill& fill);

  const GridSpec& grid() const noexcept { return grid_; }
  double input_band() const noexcept { return input_band_; }
  std::size_t row_begin(std::size_t i) const noexcept { return begin_[i]; }
  std::size_t row_end(std::size_t i) const noexcept { return begin_[i] + (offset_[i + 1] - offset_[i]); }
  std::span<const cplx> row(std::size_t i) const noexcept {
    return {values_.data() + offset_[i], offset_[i + 1] - offset_[i]};
  }
  /// K_ij (zero outside the band).
  cplx at(std::size_t i, std::size_t j) const noexcept;
  std::size_t entry_count() const noexcept { return values_.size(); }

  /// Matrix-free application without guards (fixed summation order).
  std::vector<cplx> apply_raw(std::span<const cplx> f) const;

  /// Guarded application: same grid, spectral energy beyond input_band
  /// below kSpectralGuardTol (else ResolutionError with the n that would
  /// resolve the input), boundary mass of input and output below
  /// kBoundaryMassTol.
  WaveFunction apply(const WaveFunction& f, const char* context) const;

 private:
  GridSpec grid_;
  double input_band_ = 0.0;
  std::vector<std::size_t> begin_;
  std::vector<std::size_t> offset_;
  std::vector<cplx> values_;
};

/// Throws ResolutionError when f carries more than kSpectralGuardTol of its
/// spectral energy beyond `band`.
void require_band_limited(const WaveFunction& f, double band, const char* context);

}  // namespace tslab
