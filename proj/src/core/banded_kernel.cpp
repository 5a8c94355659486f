#include "tslab/banded_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tslab/errors.hpp"
#include "tslab/fourier.hpp"
#include "tslab/norms.hpp"
#include "tslab/parallel.hpp"
#include "tslab/strings.hpp"

namespace tslab {

BandedKernel BandedKernel::build(const GridSpec& grid, double input_band, const RowFill& fill) {
  BandedKernel k;
  k.grid_ = grid;
  k.input_band_ = input_band;
  const std::size_t n = grid.n;
  std::vector<std::vector<cplx>> rows(n);
  k.begin_.assign(n, 0);
  parallel_for(n, [&](std::size_t i) {
    k.begin_[i] = fill(i, rows[i]);
    if (k.begin_[i] + rows[i].size() > n) throw InvalidArgument("BandedKernel: row band exceeds grid");
  });
  k.offset_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) k.offset_[i + 1] = k.offset_[i] + rows[i].size();
  k.values_.resize(k.offset_[n]);
  for (std::size_t i = 0; i < n; ++i) std::copy(rows[i].begin(), rows[i].end(), k.values_.begin() + static_cast<long>(k.offset_[i]));
  return k;
}

cplx BandedKernel::at(std::size_t i, std::size_t j) const noexcept {
  if (j < row_begin(i) || j >= row_end(i)) return {0.0, 0.0};
  return values_[offset_[i] + (j - begin_[i])];
}

std::vector<cplx> BandedKernel::apply_raw(std::span<const cplx> f) const {
  const std::size_t n = grid_.n;
  std::vector<cplx> out(n);
  parallel_for(n, [&](std::size_t i) {
    const cplx* k = values_.data() + offset_[i];
    const cplx* v = f.data() + begin_[i];
    const std::size_t len = offset_[i + 1] - offset_[i];
    double re = 0.0, im = 0.0;
    for (std::size_t j = 0; j < len; ++j) {
      re += k[j].real() * v[j].real() - k[j].imag() * v[j].imag();
      im += k[j].real() * v[j].imag() + k[j].imag() * v[j].real();
    }
    out[i] = {re, im};
  });
  return out;
}

WaveFunction BandedKernel::apply(const WaveFunction& f, const char* context) const {
  if (!(f.grid() == grid_) || f.domain() != Domain::position)
    throw InvalidArgument(std::string(context) + ": grid mismatch");
  f.require_boundary_mass(kBoundaryMassTol, context);
  require_band_limited(f, input_band_, context);
  WaveFunction out = f.with_values(apply_raw(f.values()));
  out.require_boundary_mass(kBoundaryMassTol, context);
  return out;
}

void require_band_limited(const WaveFunction& f, double band, const char* context) {
  const double beyond = f.spectral_mass_beyond(band);
  if (beyond <= kSpectralGuardTol) return;
  // smallest frequency carrying all but kSpectralGuardTol of the energy
  const WaveFunction spec = fourier_transform(f, Direction::forward);
  const GridSpec& g = f.grid();
  std::vector<double> energy(g.n);
  for (std::size_t m = 0; m < g.n; ++m) energy[m] = std::norm(spec[m]);
  const double total = pairwise_sum(energy);
  double tail = 0.0, needed = g.nyquist();
  for (std::size_t lo = 0, hi = g.n - 1; lo < hi; ++lo, --hi) {
    tail += energy[lo] + energy[hi];
    if (tail > kSpectralGuardTol * total) {
      needed = std::abs(g.xi_centered(lo));
      break;
    }
  }
  throw ResolutionError(std::string(context) + ": input spectrum exceeds the resolved band " +
                            num(band) + " (energy fraction " + num(beyond) + ")",
                        g.required_points(needed, band / g.nyquist()));
}

}  // namespace tslab
