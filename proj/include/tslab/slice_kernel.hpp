#pragma once

#include "tslab/amplitude.hpp"
#include "tslab/banded_kernel.hpp"
#include "tslab/generating_table.hpp"

namespace tslab {

/// Fractions of the grid's Nyquist frequency reserved for the input
/// spectrum and for the slowly varying part of the kernel phase.
struct KernelBands {
  double input = 0.4;
  double residual = 0.4;
};

/// Discretised short-time parametrix
///   K(x, y) = (2 pi i (t-s) hbar)^{-1/2} e^{i S(t,s,x,y)/hbar} e_N(x, y)
/// with e_0 = 1, e_1 = a1 and the principal branch e^{-i pi/4}.
///
/// The kernel is split as K = K_free(x - y) B(x, y), where K_free is the
/// free kernel of the same (t - s, hbar) and
///   B = e_N exp(i [S - (x-y)^2 / (2 (t-s))] / hbar)
/// is smooth. For fixed x the quadrature in y is done exactly for the
/// band-limited product B(x, .) f: the matrix is c(x_i - y_j) B(x_i, y_j),
/// with c the circulant row of the grid's free propagator. The result is
/// exact for the free particle and spectrally accurate whenever B(x, .) f
/// stays inside the band, which the guards enforce.
struct SliceKernel {
  int order = 0;
  double s = 0.0, t = 0.0, hbar = 1.0;
  /// max over the table of |d/dy arg B| (frequency units).
  double residual_rate = 0.0;
  BandedKernel kernel;
};

/// Table axes must coincide with the grid and every (x, y) pair must be
/// present (eta window = infinity). Throws GuardError("kernel-coverage")
/// for missing entries, GuardError("amplitude") if order 1 meets an entry
/// without a1, and ResolutionError when the residual phase rate exceeds
/// bands.residual * nyquist.
SliceKernel build_slice_kernel(const GeneratingTable& table, const AmplitudeTable* amplitude, int order,
                               double hbar, const GridSpec& grid, KernelBands bands = {});

/// Continuous kernel value (without the dy weight) at table entry (i, j).
cplx parametrix_kernel_value(const GeneratingTable& table, const AmplitudeTable* amplitude, int order,
                             double hbar, std::size_t i, std::size_t j);

/// g(x_i) = sum_j K(x_i, y_j) f(y_j) dy, matrix-free over the stored rows,
/// guarded as BandedKernel::apply. f must carry the kernel's hbar.
WaveFunction apply_kernel(const SliceKernel& k, const WaveFunction& f);

/// Row c(m), m = 0..n-1, of the circulant matrix of the free propagator
/// e^{i hbar tau Delta/2} on the grid: (P u)_i = sum_j c((i - j) mod n) u_j.
std::vector<cplx> free_propagator_row(const GridSpec& grid, double hbar, double tau);

}  // namespace tslab
