#include "tslab/stft.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tslab/dilation.hpp"
#include "tslab/errors.hpp"
#include "tslab/norms.hpp"
#include "tslab/parallel.hpp"
#include "tslab/strings.hpp"

namespace tslab {
namespace {

std::size_t snap(const GridSpec& grid, double x, const char* context) {
  if (!(std::abs(x) < grid.half_width))
    throw InvalidArgument(std::string(context) + ": x = " + num(x) + " lies outside the box");
  return grid.nearest_index(x);
}

// phasors[k * n + j] = e^{-i x_j xi_k}
std::vector<cplx> phasor_table(const GridSpec& grid, const std::vector<double>& xis) {
  std::vector<cplx> t(xis.size() * grid.n);
  parallel_for(xis.size(), [&](std::size_t k) {
    for (std::size_t j = 0; j < grid.n; ++j) t[k * grid.n + j] = std::polar(1.0, -grid.x(j) * xis[k]);
  });
  return t;
}

void require_window_grid(const WaveFunction& f, const Window& g, const char* context) {
  if (!(f.grid() == g.grid()) || f.domain() != Domain::position)
    throw InvalidArgument(std::string(context) + ": window and function live on different grids");
}

}  // namespace

WaveFunction time_frequency_shift(const Window& g, FlowPoint z, double hbar) {
  const GridSpec& grid = g.grid();
  const std::size_t c = snap(grid, z.x, "time_frequency_shift");
  std::vector<cplx> v(grid.n, cplx(0.0, 0.0));
  for (std::size_t j = g.first(c); j < g.last(c); ++j) v[j] = std::polar(1.0, z.xi * grid.x(j)) * g.shifted(j, c);
  return WaveFunction(grid, std::move(v), hbar);
}

StftPlan::StftPlan(const Window& g, const PhaseLattice& lattice)
    : window_(g), lattice_(lattice), phasors_(phasor_table(g.grid(), lattice.xis())) {
  if (!(lattice.grid() == g.grid())) throw InvalidArgument("StftPlan: lattice and window use different grids");
}

std::vector<cplx> StftPlan::operator()(const WaveFunction& f) const {
  require_window_grid(f, window_, "stft");
  const GridSpec& grid = f.grid();
  const std::size_t nk = lattice_.xis().size();
  std::vector<cplx> out(lattice_.size());
  const double dx = grid.dx();
  parallel_for(lattice_.xs().size(), [&](std::size_t ix) {
    const std::size_t c = lattice_.x_indices()[ix];
    const std::size_t a = window_.first(c), b = window_.last(c);
    std::vector<cplx> h(b - a);
    for (std::size_t j = a; j < b; ++j) h[j - a] = f[j] * std::conj(window_.shifted(j, c));
    for (std::size_t k = 0; k < nk; ++k) {
      const cplx* e = phasors_.data() + k * grid.n + a;
      double re = 0.0, im = 0.0;
      for (std::size_t j = 0; j < h.size(); ++j) {
        re += h[j].real() * e[j].real() - h[j].imag() * e[j].imag();
        im += h[j].real() * e[j].imag() + h[j].imag() * e[j].real();
      }
      out[ix * nk + k] = cplx(re, im) * dx;
    }
  });
  return out;
}

std::vector<cplx> stft(const WaveFunction& f, const Window& g, const PhaseLattice& lattice) {
  return StftPlan(g, lattice)(f);
}

double stft_inversion_error(const WaveFunction& f, const Window& g, const PhaseLattice& lattice) {
  const std::vector<cplx> v = stft(f, g, lattice);
  const GridSpec& grid = f.grid();
  const std::size_t nk = lattice.xis().size();
  const std::vector<cplx> ph = phasor_table(grid, lattice.xis());
  const double scale = lattice.cell_volume() / (2.0 * kPi * g.l2_norm() * g.l2_norm());
  // accumulate per grid point in x-node order so the sum is deterministic
  std::vector<cplx> rec(grid.n, cplx(0.0, 0.0));
  parallel_for(grid.n, [&](std::size_t j) {
    cplx acc(0.0, 0.0);
    for (std::size_t ix = 0; ix < lattice.xs().size(); ++ix) {
      const std::size_t c = lattice.x_indices()[ix];
      const cplx w = g.shifted(j, c);
      if (w == cplx(0.0, 0.0)) continue;
      cplx s(0.0, 0.0);
      for (std::size_t k = 0; k < nk; ++k) s += v[ix * nk + k] * std::conj(ph[k * grid.n + j]);
      acc += s * w;
    }
    rec[j] = acc * scale;
  });
  return relative_l2_error(f.with_values(std::move(rec)), f);
}

ModulationNorm modulation_norm(const WaveFunction& f, const Window& g, double p, const PhaseLattice& lattice,
                               std::optional<double> hbar, double tail_tol) {
  if (!(p >= 1.0)) throw InvalidArgument("modulation_norm: need p >= 1");
  const WaveFunction src = hbar ? dilate(f, *hbar, DilationDirection::compress) : f;
  const std::vector<cplx> v = stft(src, g, lattice);
  const std::size_t nx = lattice.xs().size(), nk = lattice.xis().size();
  auto on_ring = [&](std::size_t i) {
    const std::size_t ix = i / nk, ik = i % nk;
    return ix == 0 || ix + 1 == nx || ik == 0 || ik + 1 == nk;
  };
  ModulationNorm r;
  if (std::isinf(p)) {
    double all = 0.0, ring = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      all = std::max(all, std::abs(v[i]));
      if (on_ring(i)) ring = std::max(ring, std::abs(v[i]));
    }
    r.value = all;
    r.tail = all > 0.0 ? ring / all : 0.0;
  } else {
    std::vector<double> terms(v.size()), ring_terms;
    for (std::size_t i = 0; i < v.size(); ++i) {
      terms[i] = std::pow(std::abs(v[i]), p);
      if (on_ring(i)) ring_terms.push_back(terms[i]);
    }
    const double total = pairwise_sum(terms);
    r.value = std::pow(total * lattice.cell_volume(), 1.0 / p);
    r.tail = total > 0.0 ? pairwise_sum(ring_terms) / total : 0.0;
  }
  if (r.tail > tail_tol)
    throw GuardError("coverage", "modulation_norm: lattice of radius " + num(lattice.radius()) +
                                     " leaves a tail share " + num(r.tail) + " on its outer ring");
  return r;
}

}  // namespace tslab
