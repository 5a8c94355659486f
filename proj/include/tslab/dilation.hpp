#pragma once

#include "tslab/wavefunction.hpp"

namespace tslab {

enum class DilationDirection {
  compress,  ///< D_{hbar^{-1/2}} f(x) = hbar^{d/4} f(hbar^{1/2} x)
  expand     ///< D_{hbar^{1/2}}  f(x) = hbar^{-d/4} f(hbar^{-1/2} x)
};

/// Semiclassical dilation by band-limited resampling. Throws
/// GuardError("boundary-mass") if the result leaks into the box edge, and
/// ResolutionError if the result carries energy at the top 5% of the band.
WaveFunction dilate(const WaveFunction& f, double hbar, DilationDirection direction);

}  // namespace tslab
