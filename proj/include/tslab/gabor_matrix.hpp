#pragma once

#include <functional>
#include <iosfwd>
#include <limits>
#include <vector>

#include "tslab/canonical_map.hpp"
#include "tslab/stft.hpp"

namespace tslab {

/// Any linear operator on grid functions (slice, reference propagator,
/// composition).
using Operator = std::function<WaveFunction(const WaveFunction&)>;

/// D_{hbar^{-1/2}} T D_{hbar^{1/2}}; the inner function is tagged with hbar.
Operator semiclassical_conjugate(Operator op, double hbar);

/// a o b: b first.
Operator compose_operators(Operator a, Operator b);

struct GaborMatrixSample {
  FlowPoint z, w;
  double magnitude = 0.0;  ///< |<T pi(z) g, pi(w) g>|
};

/// |<T pi(z) g, pi(w) g>| for every z in the row lattice and w in the
/// column lattice, stored row-major.
class GaborMatrix {
 public:
  GaborMatrix(PhaseLattice z_lattice, PhaseLattice w_lattice, std::vector<double> magnitudes);

  const PhaseLattice& z_lattice() const noexcept { return z_; }
  const PhaseLattice& w_lattice() const noexcept { return w_; }
  std::size_t rows() const noexcept { return z_.size(); }
  std::size_t cols() const noexcept { return w_.size(); }
  double magnitude(std::size_t iz, std::size_t iw) const noexcept { return mag_[iz * w_.size() + iw]; }
  GaborMatrixSample sample(std::size_t iz, std::size_t iw) const noexcept {
    return {z_.node(iz), w_.node(iw), magnitude(iz, iw)};
  }

 private:
  PhaseLattice z_, w_;
  std::vector<double> mag_;
};

/// One operator application per z node, then an STFT against every w node.
/// pi(z) g is tagged with `hbar` (the operator's semiclassical parameter).
GaborMatrix gabor_matrix(const Operator& op, const Window& g, const PhaseLattice& z_lattice,
                         const PhaseLattice& w_lattice, double hbar = 1.0);

/// max over rows with |z|_inf <= z_radius of (1 + |w - chi(z)|^2)^{m/2} |G(z, w)|.
double fio_seminorm(const GaborMatrix& gm, const CanonicalMap& chi, double m,
                    double z_radius = std::numeric_limits<double>::infinity());

struct SeminormStability {
  double inner = 0.0;  ///< seminorm restricted to radius R
  double outer = 0.0;  ///< restricted to R + dR
  double ratio = 0.0;  ///< outer / inner
};
SeminormStability fio_seminorm_stability(const GaborMatrix& gm, const CanonicalMap& chi, double m, double radius,
                                         double step = 2.0);

struct DecayFit {
  double exponent = 0.0;  ///< minus the log-log slope
  double slope_stderr = 0.0;
  std::size_t bins = 0;
  std::vector<double> bin_centers, bin_max;
};

/// Bins samples by r = |w - chi(z)| (width bin_width) over [r_min, r_max],
/// takes per-bin maxima and fits log(max) against log(1 + r). Empty and
/// all-zero bins are skipped; throws FitError with fewer than 6 bins left.
DecayFit decay_fit(const GaborMatrix& gm, const CanonicalMap& chi, double r_max, double r_min = 2.0,
                   double bin_width = 0.5);

struct ArgmaxTracking {
  std::size_t rows = 0;     ///< rows whose chi(z) lies inside the w lattice
  std::size_t tracked = 0;  ///< of those, arg-max within one cell of chi(z)
  double fraction = 0.0;
  double worst_dx = 0.0, worst_dxi = 0.0;
};
ArgmaxTracking argmax_tracking(const GaborMatrix& gm, const CanonicalMap& chi);

struct CompositionReport {
  double composed = 0.0;  ///< seminorm of T1 T2 against chi1 o chi2
  double first = 0.0, second = 0.0;
  double ratio = 0.0;  ///< composed / (first * second)
  double bound = 50.0;
  bool pass = false;
};

CompositionReport composition_decay_check(const Operator& t1, const Operator& t2, const CanonicalMap& chi1,
                                          const CanonicalMap& chi2, double m, const Window& g,
                                          const PhaseLattice& z_lattice, const PhaseLattice& w_lattice,
                                          double bound = 50.0, double hbar = 1.0);

/// Columns z_x,z_xi,w_x,w_xi,magnitude,r.
void write_gabor_csv(std::ostream& out, const GaborMatrix& gm, const CanonicalMap& chi);

}  // namespace tslab
