#pragma once

#include <string>
#include <vector>

#include "tslab/wavefunction.hpp"

namespace tslab {

struct TestFunction {
  std::string label;
  WaveFunction f;
};

/// Hermite function h_k (L2-normalised on the line).
double hermite_function(int k, double x);

/// Fixed family: h0..h7, Gaussians centred at -2 and 2, Gaussians modulated
/// by e^{-2ix} and e^{2ix}. Every member is L2-normalised on the grid;
/// experiments divide by the source norm they need.
std::vector<TestFunction> standard_family(const GridSpec& grid, double hbar = 1.0);

/// Single unit Gaussian centred at x0 with frequency xi0.
TestFunction gaussian_packet(const GridSpec& grid, double x0, double xi0, double hbar = 1.0);

/// "standard" | "gaussian" (the packet at x0 = 2).
std::vector<TestFunction> family_by_name(const std::string& name, const GridSpec& grid, double hbar = 1.0);

}  // namespace tslab
