#include "tslab/gabor_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "tslab/dilation.hpp"
#include "tslab/errors.hpp"
#include "tslab/fit.hpp"
#include "tslab/parallel.hpp"

namespace tslab {
namespace {

std::vector<FlowPoint> images(const GaborMatrix& gm, const CanonicalMap& chi) {
  std::vector<FlowPoint> out(gm.rows());
  parallel_for(gm.rows(), [&](std::size_t iz) { out[iz] = chi(gm.z_lattice().node(iz)); });
  return out;
}

double distance(FlowPoint a, FlowPoint b) { return std::hypot(a.x - b.x, a.xi - b.xi); }

}  // namespace

Operator semiclassical_conjugate(Operator op, double hbar) {
  if (!(hbar > 0.0 && hbar <= 1.0)) throw InvalidArgument("semiclassical_conjugate: hbar must lie in (0, 1]");
  if (hbar == 1.0) return op;
  return [op = std::move(op), hbar](const WaveFunction& f) {
    const WaveFunction inner = dilate(f, hbar, DilationDirection::expand).with_hbar(hbar);
    return dilate(op(inner), hbar, DilationDirection::compress).with_hbar(f.hbar());
  };
}

Operator compose_operators(Operator a, Operator b) {
  return [a = std::move(a), b = std::move(b)](const WaveFunction& f) { return a(b(f)); };
}

GaborMatrix::GaborMatrix(PhaseLattice z_lattice, PhaseLattice w_lattice, std::vector<double> magnitudes)
    : z_(std::move(z_lattice)), w_(std::move(w_lattice)), mag_(std::move(magnitudes)) {
  if (mag_.size() != z_.size() * w_.size()) throw InvalidArgument("GaborMatrix: size mismatch");
}

GaborMatrix gabor_matrix(const Operator& op, const Window& g, const PhaseLattice& z_lattice,
                         const PhaseLattice& w_lattice, double hbar) {
  const StftPlan plan(g, w_lattice);
  const std::size_t cols = w_lattice.size();
  std::vector<double> mag(z_lattice.size() * cols);
  parallel_for(z_lattice.size(), [&](std::size_t iz) {
    const WaveFunction u = op(time_frequency_shift(g, z_lattice.node(iz), hbar));
    const std::vector<cplx> v = plan(u);
    for (std::size_t iw = 0; iw < cols; ++iw) mag[iz * cols + iw] = std::abs(v[iw]);
  });
  return GaborMatrix(z_lattice, w_lattice, std::move(mag));
}

double fio_seminorm(const GaborMatrix& gm, const CanonicalMap& chi, double m, double z_radius) {
  const std::vector<FlowPoint> img = images(gm, chi);
  double best = 0.0;
  for (std::size_t iz = 0; iz < gm.rows(); ++iz) {
    const FlowPoint z = gm.z_lattice().node(iz);
    if (std::max(std::abs(z.x), std::abs(z.xi)) > z_radius + 1e-12) continue;
    for (std::size_t iw = 0; iw < gm.cols(); ++iw) {
      const FlowPoint w = gm.w_lattice().node(iw);
      const double r2 = (w.x - img[iz].x) * (w.x - img[iz].x) + (w.xi - img[iz].xi) * (w.xi - img[iz].xi);
      best = std::max(best, std::pow(1.0 + r2, 0.5 * m) * gm.magnitude(iz, iw));
    }
  }
  return best;
}

SeminormStability fio_seminorm_stability(const GaborMatrix& gm, const CanonicalMap& chi, double m, double radius,
                                         double step) {
  SeminormStability s;
  s.inner = fio_seminorm(gm, chi, m, radius);
  s.outer = fio_seminorm(gm, chi, m, radius + step);
  s.ratio = s.inner > 0.0 ? s.outer / s.inner : std::numeric_limits<double>::infinity();
  return s;
}

DecayFit decay_fit(const GaborMatrix& gm, const CanonicalMap& chi, double r_max, double r_min, double bin_width) {
  if (!(bin_width > 0.0 && r_max > r_min)) throw InvalidArgument("decay_fit: need r_max > r_min and bin_width > 0");
  const std::vector<FlowPoint> img = images(gm, chi);
  const auto nbins = static_cast<std::size_t>(std::ceil((r_max - r_min) / bin_width - 1e-12));
  std::vector<double> peak(nbins, 0.0);
  for (std::size_t iz = 0; iz < gm.rows(); ++iz)
    for (std::size_t iw = 0; iw < gm.cols(); ++iw) {
      const double r = distance(gm.w_lattice().node(iw), img[iz]);
      if (r < r_min || r >= r_max) continue;
      const auto b = std::min(nbins - 1, static_cast<std::size_t>((r - r_min) / bin_width));
      peak[b] = std::max(peak[b], gm.magnitude(iz, iw));
    }
  DecayFit fit;
  std::vector<double> x, y;
  for (std::size_t b = 0; b < nbins; ++b) {
    if (!(peak[b] > 0.0)) continue;
    const double centre = r_min + (static_cast<double>(b) + 0.5) * bin_width;
    fit.bin_centers.push_back(centre);
    fit.bin_max.push_back(peak[b]);
    x.push_back(1.0 + centre);
    y.push_back(peak[b]);
  }
  fit.bins = x.size();
  if (fit.bins < 6) throw FitError("decay_fit: only " + std::to_string(fit.bins) + " nonempty distance bins");
  const LineFit lf = fit_loglog(x, y);
  fit.exponent = -lf.slope;
  fit.slope_stderr = lf.slope_stderr;
  return fit;
}

ArgmaxTracking argmax_tracking(const GaborMatrix& gm, const CanonicalMap& chi) {
  const std::vector<FlowPoint> img = images(gm, chi);
  const PhaseLattice& w = gm.w_lattice();
  const double xlim = w.xs().back() - w.alpha(), klim = w.xis().back() - w.beta();
  ArgmaxTracking t;
  for (std::size_t iz = 0; iz < gm.rows(); ++iz) {
    if (std::abs(img[iz].x) > xlim || std::abs(img[iz].xi) > klim) continue;
    std::size_t best = 0;
    for (std::size_t iw = 1; iw < gm.cols(); ++iw)
      if (gm.magnitude(iz, iw) > gm.magnitude(iz, best)) best = iw;
    const FlowPoint p = w.node(best);
    const double dx = std::abs(p.x - img[iz].x), dk = std::abs(p.xi - img[iz].xi);
    ++t.rows;
    if (dx <= w.alpha() * (1 + 1e-9) && dk <= w.beta() * (1 + 1e-9)) ++t.tracked;
    t.worst_dx = std::max(t.worst_dx, dx);
    t.worst_dxi = std::max(t.worst_dxi, dk);
  }
  t.fraction = t.rows ? static_cast<double>(t.tracked) / static_cast<double>(t.rows) : 0.0;
  return t;
}

CompositionReport composition_decay_check(const Operator& t1, const Operator& t2, const CanonicalMap& chi1,
                                          const CanonicalMap& chi2, double m, const Window& g,
                                          const PhaseLattice& z_lattice, const PhaseLattice& w_lattice,
                                          double bound, double hbar) {
  CompositionReport r;
  r.bound = bound;
  r.first = fio_seminorm(gabor_matrix(t1, g, z_lattice, w_lattice, hbar), chi1, m);
  r.second = fio_seminorm(gabor_matrix(t2, g, z_lattice, w_lattice, hbar), chi2, m);
  r.composed = fio_seminorm(gabor_matrix(compose_operators(t1, t2), g, z_lattice, w_lattice, hbar),
                            compose(chi1, chi2), m);
  r.ratio = r.composed / (r.first * r.second);
  r.pass = std::isfinite(r.ratio) && r.ratio <= bound;
  return r;
}

void write_gabor_csv(std::ostream& out, const GaborMatrix& gm, const CanonicalMap& chi) {
  const std::vector<FlowPoint> img = images(gm, chi);
  out << "z_x,z_xi,w_x,w_xi,magnitude,r\n";
  out.precision(17);
  for (std::size_t iz = 0; iz < gm.rows(); ++iz)
    for (std::size_t iw = 0; iw < gm.cols(); ++iw) {
      const GaborMatrixSample s = gm.sample(iz, iw);
      out << s.z.x << ',' << s.z.xi << ',' << s.w.x << ',' << s.w.xi << ',' << s.magnitude << ','
          << distance(s.w, img[iz]) << '\n';
    }
}

}  // namespace tslab
