#include "tslab/norms.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "tslab/errors.hpp"
#include "tslab/fourier.hpp"

namespace tslab {

double pairwise_sum(std::span<const double> v) {
  constexpr std::size_t kLeaf = 32;
  if (v.size() <= kLeaf) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t mid = v.size() / 2;
  return pairwise_sum(v.first(mid)) + pairwise_sum(v.subspan(mid));
}

double lp_norm(const WaveFunction& f, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& v : f.values()) m = std::max(m, std::abs(v));
    return m;
  }
  if (!(p > 0.0)) throw InvalidArgument("lp_norm: p must be positive");
  std::vector<double> terms(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) terms[j] = std::pow(std::abs(f[j]), p);
  const double cell = f.domain() == Domain::position ? f.grid().dx() : f.grid().dxi();
  return std::pow(pairwise_sum(terms) * cell, 1.0 / p);
}

WaveFunction sobolev_multiplier(const WaveFunction& f, double k, double hbar) {
  if (k == 0.0) {
    // still one FFT round trip, so k = 0 and k != 0 share rounding behaviour
    return apply_multiplier(f, [](double) { return cplx(1.0); });
  }
  return apply_multiplier(f, [k, hbar](double xi) { return cplx(std::pow(1.0 + hbar * xi * xi, 0.5 * k)); });
}

double sobolev_norm(const WaveFunction& f, double p, double k, double hbar) {
  return lp_norm(sobolev_multiplier(f, k, hbar), p);
}

double k_exponent(double p, int d) {
  if (!(p > 1.0) || std::isinf(p)) throw InvalidArgument("k_exponent: p must lie in (1, inf)");
  if (d < 1) throw InvalidArgument("k_exponent: dimension must be positive");
  return 2.0 * d * std::abs(0.5 - 1.0 / p);
}

cplx inner_product(const WaveFunction& f, const WaveFunction& g) {
  require_same_grid(f, g, "inner_product");
  std::vector<double> re(f.size()), im(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    const cplx v = f[j] * std::conj(g[j]);
    re[j] = v.real();
    im[j] = v.imag();
  }
  const double cell = f.domain() == Domain::position ? f.grid().dx() : f.grid().dxi();
  return cplx(pairwise_sum(re), pairwise_sum(im)) * cell;
}

double relative_l2_error(const WaveFunction& a, const WaveFunction& b) {
  return lp_norm(a - b, 2.0) / lp_norm(b, 2.0);
}

}  // namespace tslab
