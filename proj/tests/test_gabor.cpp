#include <cmath>
#include <sstream>

#include "doctest.h"
#include "tslab/errors.hpp"
#include "tslab/gabor_matrix.hpp"
#include "tslab/norms.hpp"
#include "tslab/reference.hpp"
#include "tslab/stft.hpp"

using namespace tslab;

namespace {

const GridSpec kGrid = GridSpec::make(16.0, 512);

WaveFunction gaussian(double x0, double xi0) {
  return WaveFunction::sample(kGrid, [=](double x) {
    const double y = x - x0;
    return std::pow(kPi, -0.25) * std::exp(-0.5 * y * y) * std::polar(1.0, xi0 * x);
  });
}

WaveFunction hermite1() {
  return WaveFunction::sample(kGrid, [](double x) {
    return cplx(std::sqrt(2.0) * std::pow(kPi, -0.25) * x * std::exp(-0.5 * x * x), 0.0);
  });
}

const Operator kIdentity = [](const WaveFunction& f) { return f; };

}  // namespace

TEST_CASE("window and lattice") {
  const Window g = Window::gaussian(kGrid);
  CHECK(std::abs(g.l2_norm() - 1.0) < 1e-10);
  CHECK(std::abs(Window::hermite1(kGrid).l2_norm() - 1.0) < 1e-10);
  const PhaseLattice lat = PhaseLattice::make(kGrid, 0.5, 0.5, 4.0);
  CHECK(lat.alpha() == 0.5);
  CHECK(lat.xs().size() == 17);
  for (std::size_t i = 0; i < lat.size(); ++i) {
    CHECK(std::abs(lat.node(i).x) <= 4.0);
    CHECK(std::abs(lat.node(i).xi) <= 4.0);
  }
  CHECK(PhaseLattice::make(kGrid, 0.3, 0.5, 4.0).alpha() == doctest::Approx(5 * kGrid.dx()));
  CHECK_THROWS_AS(PhaseLattice::make(kGrid, 0.5, 0.5, 20.0), InvalidArgument);
  CHECK_THROWS_AS(PhaseLattice::make(kGrid, 0.5, -1.0, 4.0), InvalidArgument);
}

TEST_CASE("short-time Fourier transform") {
  const Window g = Window::gaussian(kGrid);
  const PhaseLattice lat = PhaseLattice::make(kGrid, 0.5, 0.5, 5.0);
  const std::vector<cplx> v = stft(time_frequency_shift(g, {0, 0}), g, lat);
  double worst = 0.0;
  for (std::size_t i = 0; i < lat.size(); ++i) {
    const FlowPoint z = lat.node(i);
    const double exact = std::exp(-0.25 * (z.x * z.x + z.xi * z.xi));
    if (z.x == 0.0 && z.xi == 0.0) CHECK(std::abs(v[i] - 1.0) < 1e-12);
    worst = std::max(worst, std::abs(std::abs(v[i]) - exact) / exact);
  }
  CHECK(worst < 1e-8);

  // covariance of the magnitude under a grid-aligned shift
  const FlowPoint z0{1.0, -1.5};
  const WaveFunction f = gaussian(0.5, 0.3) + hermite1() * cplx(0.0, 0.7);
  const PhaseLattice big = PhaseLattice::make(kGrid, 0.5, 0.5, 7.0);
  const std::vector<cplx> a = stft(f, g, big);
  std::vector<cplx> shifted_f(kGrid.n);
  const long long shift = std::llround(z0.x / kGrid.dx());
  for (std::size_t j = 0; j < kGrid.n; ++j) {
    const long long src = static_cast<long long>(j) - shift;
    if (src >= 0 && src < static_cast<long long>(kGrid.n)) shifted_f[j] = f[src] * std::polar(1.0, z0.xi * kGrid.x(j));
  }
  const std::vector<cplx> b = stft(f.with_values(shifted_f), g, big);
  const std::size_t nxi = big.xis().size();
  const long long di = std::llround(z0.x / big.alpha()), dk = std::llround(z0.xi / big.beta());
  double dev = 0.0;
  for (std::size_t i = 0; i < big.xs().size(); ++i)
    for (std::size_t k = 0; k < nxi; ++k) {
      const long long i0 = static_cast<long long>(i) - di, k0 = static_cast<long long>(k) - dk;
      if (i0 < 0 || k0 < 0 || i0 >= static_cast<long long>(big.xs().size()) || k0 >= static_cast<long long>(nxi)) continue;
      dev = std::max(dev, std::abs(std::abs(b[i * nxi + k]) - std::abs(a[i0 * nxi + k0])));
    }
  CHECK(dev < 1e-8);
}

TEST_CASE("STFT inversion") {
  const Window g = Window::gaussian(kGrid);
  const PhaseLattice dense = PhaseLattice::make(kGrid, 4 * kGrid.dx(), 4 * kGrid.dxi(), 10.0);
  CHECK(stft_inversion_error(gaussian(1.0, -1.0), g, dense) < 1e-6);
  CHECK(stft_inversion_error(hermite1(), g, dense) < 1e-6);
  double last = 0.0;
  for (double k : {4.0, 16.0, 32.0}) {
    const double e = stft_inversion_error(hermite1(), g, PhaseLattice::make(kGrid, k * kGrid.dx(), 4 * kGrid.dxi(), 10.0));
    CHECK(e >= last);
    last = e;
  }
  CHECK(last > 1e-3);
}

TEST_CASE("modulation norms") {
  const Window g = Window::gaussian(kGrid);
  const PhaseLattice lat = PhaseLattice::make(kGrid, 0.5, 0.5, 10.0);
  std::vector<double> ratios;
  for (const WaveFunction& f : {gaussian(0, 0), gaussian(2, -1), hermite1()})
    ratios.push_back(modulation_norm(f, g, 2.0, lat).value / lp_norm(f, 2.0));
  for (double r : ratios) CHECK(r == doctest::Approx(ratios.front()).epsilon(0.01));
  const WaveFunction f = gaussian(0.5, 0.5);
  CHECK(modulation_norm(f, g, INFINITY, lat).value <= modulation_norm(f, g, 1.0, lat).value);
  const ModulationNorm n4 = modulation_norm(f, g, 4.0, lat);
  CHECK(n4.tail < 1e-8);
  CHECK_THROWS_AS(modulation_norm(gaussian(8.0, 0.0), g, 2.0, PhaseLattice::make(kGrid, 0.5, 0.5, 4.0)), GuardError);
}

TEST_CASE("canonical maps") {
  const PotentialModel cosine = PotentialModel::harmonic_cos(0.2);
  const FlowPoint z{2.0, 0.0};
  const CanonicalMap flow = CanonicalMap::flow(cosine, 0.0, 1.0);
  FlowPoint a = rescaled_flow(flow, 1.0)(z), b = flow(z);
  CHECK(a.x == b.x);
  CHECK(a.xi == b.xi);
  for (const CanonicalMap& lin : {CanonicalMap::shear(0.7), CanonicalMap::rotation(0.7)}) {
    a = rescaled_flow(lin, 0.25)(z);
    b = lin(z);
    CHECK(std::abs(a.x - b.x) < 1e-14);
    CHECK(std::abs(a.xi - b.xi) < 1e-14);
  }
  // hbar^{-1/2} chi(hbar^{1/2} z)
  a = rescaled_flow(flow, 0.25)(z);
  b = hamiltonian_flow(cosine, 0.0, 1.0, {1.0, 0.0});
  CHECK(std::abs(a.x - 2 * b.x) < 1e-12);
  CHECK(std::abs(a.xi - 2 * b.xi) < 1e-12);
  CHECK(std::abs(a.x - flow(z).x) > 1e-3);
  const FlowPoint r = CanonicalMap::rotation(kPi / 2)({1.0, 0.0});
  CHECK(std::abs(r.x) < 1e-15);
  CHECK(std::abs(r.xi + 1.0) < 1e-15);
  const auto pts = jacobian_sample_points(4.0);
  CHECK(pts.size() == 25);
  for (const CanonicalMap& m : {flow, rescaled_flow(flow, 0.25), compose(flow, CanonicalMap::shear(0.3)),
                                CanonicalMap::rotation(1.0)})
    CHECK(jacobian_defect(m, pts) < 1e-6);
  const CanonicalMap squash([](FlowPoint p) { return FlowPoint{2 * p.x, p.xi}; }, "squash");
  CHECK(jacobian_defect(squash, pts) == doctest::Approx(1.0));
}

TEST_CASE("Gabor matrices of exact propagators") {
  const Window g = Window::gaussian(kGrid);
  const PhaseLattice Z = PhaseLattice::make(kGrid, 0.5, 0.5, 6.0);
  const PhaseLattice W = PhaseLattice::make(kGrid, 0.5, 0.5, 8.0);

  const GaborMatrix id = gabor_matrix(kIdentity, g, Z, W);
  double worst = 0.0;
  for (std::size_t iz = 0; iz < id.rows(); iz += 7)
    for (std::size_t iw = 0; iw < id.cols(); ++iw) {
      const auto s = id.sample(iz, iw);
      const double r2 = std::pow(s.w.x - s.z.x, 2) + std::pow(s.w.xi - s.z.xi, 2);
      worst = std::max(worst, std::abs(s.magnitude - std::exp(-0.25 * r2)));
    }
  CHECK(worst < 1e-6);
  const double sn = fio_seminorm(id, CanonicalMap::identity(), 4.0);
  CHECK(sn == doctest::Approx(11.108).epsilon(0.01));
  const double right = decay_fit(id, CanonicalMap::identity(), 8.0).exponent;
  const double wrong = decay_fit(id, CanonicalMap::shear(1.0), 8.0).exponent;
  CHECK(right >= 6.0);
  CHECK(wrong < right);
  CHECK_THROWS_AS(decay_fit(id, CanonicalMap::identity(), 3.0), FitError);

  const GaborMatrix fr = gabor_matrix([](const WaveFunction& f) { return free_propagator(f, 0.5); }, g, Z, W);
  CHECK(argmax_tracking(fr, CanonicalMap::shear(0.5)).fraction == 1.0);

  const GaborMatrix mh = gabor_matrix([](const WaveFunction& f) { return mehler_propagator(f, kPi / 4); }, g, Z, W);
  const CanonicalMap rot = CanonicalMap::rotation(kPi / 4);
  CHECK(argmax_tracking(mh, rot).fraction >= 0.95);
  CHECK(decay_fit(mh, rot, 8.0).exponent >= 4.0);
  CHECK(fio_seminorm(mh, rot, 0.0) <= 1.0 + 1e-9);
  CHECK(std::abs(fio_seminorm_stability(mh, rot, 4.0, 4.0).ratio - 1.0) < 0.1);

  std::ostringstream csv;
  write_gabor_csv(csv, fr, CanonicalMap::shear(0.5));
  CHECK(csv.str().rfind("z_x,z_xi,w_x,w_xi,magnitude,r\n", 0) == 0);
}

TEST_CASE("compositions and semiclassical conjugation") {
  const Window g = Window::gaussian(kGrid);
  const PhaseLattice Z = PhaseLattice::make(kGrid, 0.5, 0.5, 5.0);
  const PhaseLattice W = PhaseLattice::make(kGrid, 0.5, 0.5, 8.0);
  const Operator f1 = [](const WaveFunction& f) { return free_propagator(f, 0.5); };
  const Operator f2 = [](const WaveFunction& f) { return free_propagator(f, 0.25); };
  const CompositionReport rep =
      composition_decay_check(f1, f2, CanonicalMap::shear(0.5), CanonicalMap::shear(0.25), 4.0, g, Z, W);
  CHECK(rep.pass);
  const double direct = fio_seminorm(
      gabor_matrix([](const WaveFunction& f) { return free_propagator(f, 0.75); }, g, Z, W), CanonicalMap::shear(0.75), 4.0);
  CHECK(rep.composed / direct >= 0.5);
  CHECK(rep.composed / direct <= 2.0);

  const WaveFunction f = gaussian(1.0, 0.5);
  CHECK(relative_l2_error(semiclassical_conjugate(kIdentity, 0.25)(f), f) < 1e-8);
  CHECK(relative_l2_error(compose_operators(f1, f2)(f), free_propagator(f, 0.75)) < 1e-12);
  // the conjugated semiclassical free flow is the hbar = 1 free flow
  CHECK(relative_l2_error(semiclassical_conjugate(f1, 0.25)(f), free_propagator(f, 0.5)) < 1e-8);
}
