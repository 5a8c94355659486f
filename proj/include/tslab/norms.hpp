#pragma once

#include <span>

#include "tslab/wavefunction.hpp"

namespace tslab {

/// Fixed-order pairwise summation; the result does not depend on how work
/// was split among threads upstream.
double pairwise_sum(std::span<const double> v);

/// (sum |f(x_j)|^p dx)^{1/p}; p = +inf gives max |f|.
double lp_norm(const WaveFunction& f, double p);

/// (1 - hbar Delta)^{k/2} realised as the multiplier (1 + hbar xi^2)^{k/2}.
WaveFunction sobolev_multiplier(const WaveFunction& f, double k, double hbar);

/// ||(1 - hbar Delta)^{k/2} f||_{L^p}.
double sobolev_norm(const WaveFunction& f, double p, double k, double hbar);

/// Sharp Sobolev loss 2d|1/2 - 1/p| for 1 < p < inf.
double k_exponent(double p, int d);

/// <f, g> = sum f conj(g) dx.
cplx inner_product(const WaveFunction& f, const WaveFunction& g);

/// ||a - b||_2 / ||b||_2.
double relative_l2_error(const WaveFunction& a, const WaveFunction& b);

}  // namespace tslab
