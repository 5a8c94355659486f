#pragma once

#include <functional>
#include <span>
#include <vector>

#include "tslab/wavefunction.hpp"

namespace tslab {

enum class Direction { forward, inverse };

/// Scaled DFT realising f^(xi) = int e^{-i x xi} f(x) dx on the grid (see
/// GridSpec for the conventions). forward maps position -> frequency,
/// inverse maps frequency -> position.
WaveFunction fourier_transform(const WaveFunction& f, Direction direction);

/// Unnormalised in-place FFT (FFTW sign conventions: forward e^{-2 pi i jk/n}).
void fft_inplace(std::span<cplx> data, Direction direction);

/// Applies the Fourier multiplier m(xi) to a position-domain function.
WaveFunction apply_multiplier(const WaveFunction& f, const std::function<cplx(double)>& m);

/// Direct (non-FFT) evaluation of f^(xi) at arbitrary frequencies.
std::vector<cplx> fourier_transform_at(const WaveFunction& f, std::span<const double> xi);

/// Band-limited (trigonometric) interpolant of a position-domain function
/// evaluated at arbitrary points. The Nyquist term is split symmetrically.
std::vector<cplx> interpolate(const WaveFunction& f, std::span<const double> points);

}  // namespace tslab
