#pragma once

#include <optional>
#include <vector>

#include "tslab/wavefunction.hpp"
#include "tslab/window.hpp"

namespace tslab {

/// pi(z) g (y) = e^{i xi y} g(y - x) with x snapped to the nearest grid node.
/// Throws InvalidArgument if x lies outside the box.
WaveFunction time_frequency_shift(const Window& g, FlowPoint z, double hbar = 1.0);

/// Precomputed phasors for repeated transforms against one lattice.
class StftPlan {
 public:
  StftPlan(const Window& g, const PhaseLattice& lattice);
  std::vector<cplx> operator()(const WaveFunction& f) const;
  const PhaseLattice& lattice() const noexcept { return lattice_; }

 private:
  Window window_;
  PhaseLattice lattice_;
  std::vector<cplx> phasors_;  ///< [k * n + j] = e^{-i x_j xi_k}
};

/// V_g f(z) = sum_y f(y) conj(g(y - x)) e^{-i y xi} dy at every lattice node
/// (order as PhaseLattice::node).
std::vector<cplx> stft(const WaveFunction& f, const Window& g, const PhaseLattice& lattice);

/// Riemann-sum inversion f_rec = (2 pi ||g||^2)^{-1} sum_z V_g f(z) pi(z) g
/// alpha beta; returns ||f_rec - f||_2 / ||f||_2.
double stft_inversion_error(const WaveFunction& f, const Window& g, const PhaseLattice& lattice);

struct ModulationNorm {
  double value = 0.0;
  /// share of sum |V_g f|^p on the outermost lattice ring (max ratio for p = inf)
  double tail = 0.0;
};

/// (sum_z |V_g f(z)|^p alpha beta)^{1/p} over the lattice; p = +inf gives the
/// max. With hbar the norm is taken of D_{hbar^{-1/2}} f (the M^p_hbar norm).
/// Throws GuardError("coverage") when the tail share exceeds tail_tol.
ModulationNorm modulation_norm(const WaveFunction& f, const Window& g, double p, const PhaseLattice& lattice,
                               std::optional<double> hbar = std::nullopt, double tail_tol = 1e-8);

}  // namespace tslab
