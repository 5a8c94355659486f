#include "tslab/dilation.hpp"

#include <cmath>

#include "tslab/errors.hpp"
#include "tslab/fourier.hpp"
#include "tslab/strings.hpp"

namespace tslab {

WaveFunction dilate(const WaveFunction& f, double hbar, DilationDirection direction) {
  if (!(hbar > 0.0 && hbar <= 1.0)) throw InvalidArgument("dilate: hbar must lie in (0, 1]");
  if (f.domain() != Domain::position) throw InvalidArgument("dilate: expects a position-domain function");
  if (hbar == 1.0) return f;

  const GridSpec& g = f.grid();
  const double d = static_cast<double>(g.dim);
  const bool compress = direction == DilationDirection::compress;
  // result(x) = amp * f(scale * x)
  const double scale = compress ? std::sqrt(hbar) : 1.0 / std::sqrt(hbar);
  const double amp = compress ? std::pow(hbar, d / 4.0) : std::pow(hbar, -d / 4.0);

  // the result's spectrum is the source spectrum stretched by `scale`
  const double band_edge = 0.95 * g.nyquist() / scale;
  if (scale > 1.0) {
    const double leak = f.spectral_mass_beyond(band_edge);
    if (leak > kBoundaryMassTol)
      throw ResolutionError("dilate: spectral energy " + num(leak) + " lands beyond the band",
                            g.required_points(g.nyquist() * scale, 1.0));
  }

  std::vector<double> points(g.n);
  for (std::size_t j = 0; j < g.n; ++j) points[j] = scale * g.x(j);
  std::vector<cplx> values = interpolate(f, points);
  for (std::size_t j = 0; j < g.n; ++j) {
    // the source is negligible outside its box; do not wrap periodically
    if (std::abs(points[j]) >= g.half_width) values[j] = 0.0;
    values[j] *= amp;
  }
  WaveFunction out = f.with_values(std::move(values));
  out.require_boundary_mass(kBoundaryMassTol, "dilate");
  return out;
}

}  // namespace tslab
