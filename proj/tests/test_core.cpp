#include <cmath>
#include <random>

#include "doctest.h"
#include "tslab/dilation.hpp"
#include "tslab/errors.hpp"
#include "tslab/fit.hpp"
#include "tslab/fourier.hpp"
#include "tslab/norms.hpp"
#include "tslab/parallel.hpp"

using namespace tslab;

namespace {

const GridSpec kGrid = GridSpec::make(20.0, 1024);

WaveFunction gaussian(const GridSpec& g, double x0 = 0.0, double width = 1.0) {
  return WaveFunction::sample(g, [=](double x) {
    const double y = (x - x0) / width;
    return cplx(std::exp(-0.5 * y * y), 0.0);
  });
}

double l2(const WaveFunction& f) { return lp_norm(f, 2.0); }

// random smooth data: a few random Gaussian packets
WaveFunction smooth_random(const GridSpec& g, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> v(g.n);
  for (int k = 0; k < 5; ++k) {
    const double x0 = 5 * u(rng), xi0 = 3 * u(rng);
    const cplx a(u(rng), u(rng));
    for (std::size_t j = 0; j < g.n; ++j) {
      const double y = g.x(j) - x0;
      v[j] += a * std::exp(-0.5 * y * y) * std::polar(1.0, xi0 * g.x(j));
    }
  }
  return WaveFunction(g, v);
}

}  // namespace

TEST_CASE("grid conventions") {
  CHECK(kGrid.x(kGrid.n / 2) == 0.0);
  CHECK(kGrid.xi_centered(0) == doctest::Approx(-kGrid.nyquist()));
  CHECK(kGrid.xi_fft(kGrid.n / 2) == doctest::Approx(-kGrid.nyquist()));
  CHECK_THROWS_AS(GridSpec::make(10.0, 1000), InvalidArgument);
  CHECK_THROWS_AS(GridSpec::make(-1.0, 1024), InvalidArgument);
}

TEST_CASE("wavefunction guards") {
  std::vector<cplx> bad(kGrid.n, 0.0);
  bad[3] = cplx(std::nan(""), 0.0);
  CHECK_THROWS_AS(WaveFunction(kGrid, bad), InvalidArgument);
  CHECK(gaussian(kGrid).boundary_mass_fraction() < 1e-30);
  const WaveFunction edge = gaussian(kGrid, 19.0);
  CHECK(edge.boundary_mass_fraction() > 0.4);
  CHECK_THROWS_AS(edge.require_boundary_mass(kBoundaryMassTol, "test"), GuardError);
}

TEST_CASE("Fourier transform of a Gaussian") {
  const WaveFunction F = fourier_transform(gaussian(kGrid), Direction::forward);
  double worst = 0.0;
  for (std::size_t m = 0; m < kGrid.n; ++m) {
    const double xi = kGrid.xi_centered(m);
    const double exact = std::sqrt(2 * kPi) * std::exp(-0.5 * xi * xi);
    worst = std::max(worst, std::abs(F[m] - exact));
  }
  CHECK(worst / std::sqrt(2 * kPi) < 1e-10);
}

TEST_CASE("Fourier roundtrip, shift theorem and Plancherel") {
  const WaveFunction f = smooth_random(kGrid, 7);
  const WaveFunction back = fourier_transform(fourier_transform(f, Direction::forward), Direction::inverse);
  CHECK(relative_l2_error(back, f) < 1e-12);

  const double a = 1.5;
  const WaveFunction F0 = fourier_transform(gaussian(kGrid), Direction::forward);
  const WaveFunction Fa = fourier_transform(gaussian(kGrid, a), Direction::forward);
  double worst = 0.0;
  for (std::size_t m = 0; m < kGrid.n; ++m)
    worst = std::max(worst, std::abs(Fa[m] - std::polar(1.0, -a * kGrid.xi_centered(m)) * F0[m]));
  CHECK(worst < 1e-10);

  const WaveFunction F = fourier_transform(f, Direction::forward);
  double ss = 0.0;
  for (std::size_t m = 0; m < kGrid.n; ++m) ss += std::norm(F[m]);
  CHECK(std::abs(ss * kGrid.dxi() / (2 * kPi) / std::pow(l2(f), 2) - 1.0) < 1e-12);
}

TEST_CASE("direct transform and interpolation agree with the FFT") {
  const WaveFunction f = smooth_random(kGrid, 3);
  const WaveFunction F = fourier_transform(f, Direction::forward);
  std::vector<double> xi{kGrid.xi_centered(500), kGrid.xi_centered(530)};
  const auto direct = fourier_transform_at(f, xi);
  CHECK(std::abs(direct[0] - F[500]) < 1e-10);
  CHECK(std::abs(direct[1] - F[530]) < 1e-10);
  const double pts[] = {0.3, -2.77};
  const auto vals = interpolate(gaussian(kGrid), pts);
  CHECK(std::abs(vals[0] - std::exp(-0.045)) < 1e-12);
  CHECK(std::abs(vals[1] - std::exp(-0.5 * 2.77 * 2.77)) < 1e-12);
}

TEST_CASE("Lp norms") {
  const WaveFunction g = gaussian(kGrid) * cplx(std::pow(kPi, -0.25), 0.0);
  CHECK(l2(g) == doctest::Approx(1.0).epsilon(1e-10));
  // smooth plateau of width 6
  const WaveFunction plateau = WaveFunction::sample(kGrid, [](double x) {
    return cplx(0.5 * (std::erf(4 * (x + 3)) - std::erf(4 * (x - 3))), 0.0);
  });
  for (double p : {1.5, 2.0, 4.0}) CHECK(lp_norm(plateau, p) == doctest::Approx(std::pow(6.0, 1 / p)).epsilon(0.02));
  const WaveFunction wide = gaussian(kGrid, 0.0, 2.0);
  for (double p : {1.5, 3.0}) CHECK(std::abs(lp_norm(wide, p) / lp_norm(gaussian(kGrid), p) - std::pow(2.0, 1 / p)) < 1e-8);
  CHECK(lp_norm(g, INFINITY) == doctest::Approx(std::pow(kPi, -0.25)));
}

TEST_CASE("Sobolev multiplier and norms") {
  const WaveFunction f = smooth_random(kGrid, 11);
  CHECK(relative_l2_error(sobolev_multiplier(f, 0.0, 1.0), f) < 1e-12);
  CHECK(relative_l2_error(sobolev_multiplier(sobolev_multiplier(f, 1.3, 0.5), -1.3, 0.5), f) < 1e-12);
  // a single discrete frequency xi = 2 (L = 20 makes 2 a multiple of dxi only approximately, so pick L = 8*pi)
  const GridSpec g = GridSpec::make(8 * kPi, 512);
  const WaveFunction wave = WaveFunction::sample(g, [](double x) { return std::polar(1.0, 2.0 * x); });
  const WaveFunction scaled = sobolev_multiplier(wave, 2.0, 1.0);
  CHECK(relative_l2_error(scaled, wave * cplx(5.0, 0.0)) < 1e-12);
  CHECK(sobolev_norm(f, 1.5, 0.0, 1.0) == doctest::Approx(lp_norm(f, 1.5)).epsilon(1e-12));

  // p = 2 via Plancherel, and the Gaussian against the analytic value
  const WaveFunction F = fourier_transform(f, Direction::forward);
  double ss = 0.0;
  for (std::size_t m = 0; m < kGrid.n; ++m) {
    const double xi = kGrid.xi_centered(m);
    ss += (1 + 0.5 * xi * xi) * std::norm(F[m]);
  }
  CHECK(std::abs(sobolev_norm(f, 2.0, 1.0, 0.5) / std::sqrt(ss * kGrid.dxi() / (2 * kPi)) - 1.0) < 1e-10);
  // int (1 + xi^2) 2 pi e^{-xi^2} dxi / 2 pi = sqrt(pi) * 3/2
  CHECK(sobolev_norm(gaussian(kGrid), 2.0, 1.0, 1.0) == doctest::Approx(std::sqrt(1.5 * std::sqrt(kPi))).epsilon(1e-10));

  // diagonal in frequency
  const WaveFunction a = fourier_transform(sobolev_multiplier(f, 0.7, 1.0), Direction::forward);
  double worst = 0.0;
  for (std::size_t m = 0; m < kGrid.n; ++m) {
    const double xi = kGrid.xi_centered(m);
    worst = std::max(worst, std::abs(a[m] - std::pow(1 + xi * xi, 0.35) * F[m]));
  }
  CHECK(worst < 1e-12 * l2(F));
}

TEST_CASE("k_exponent") {
  CHECK(k_exponent(2.0, 1) == 0.0);
  CHECK(k_exponent(4.0, 1) == doctest::Approx(0.5));
  CHECK(k_exponent(1.5, 2) == doctest::Approx(2.0 / 3.0));
  CHECK_THROWS_AS(k_exponent(1.0, 1), InvalidArgument);
  CHECK_THROWS_AS(k_exponent(INFINITY, 1), InvalidArgument);
}

TEST_CASE("semiclassical dilations") {
  const WaveFunction f = gaussian(kGrid, 1.0);
  CHECK(relative_l2_error(dilate(f, 1.0, DilationDirection::compress), f) < 1e-14);
  const WaveFunction c = dilate(f, 0.25, DilationDirection::compress);
  CHECK(std::abs(l2(c) / l2(f) - 1.0) < 1e-8);
  CHECK(relative_l2_error(dilate(c, 0.25, DilationDirection::expand), f) < 1e-8);
  // compress: hbar^{1/4} f(hbar^{1/2} x)
  const WaveFunction exact = WaveFunction::sample(kGrid, [](double x) {
    const double y = 0.5 * x - 1.0;
    return cplx(std::sqrt(0.5) * std::exp(-0.5 * y * y), 0.0);
  });
  CHECK(relative_l2_error(c, exact) < 1e-10);
  for (double p : {1.5, 4.0})
    CHECK(std::abs(lp_norm(c, p) / lp_norm(f, p) / std::pow(0.25, (0.5 - 1 / p) / 2) - 1.0) < 1e-6);
  CHECK_THROWS_AS(dilate(gaussian(kGrid, 5.0), 1.0 / 64, DilationDirection::compress), GuardError);
}

TEST_CASE("deterministic parallel reductions") {
  std::vector<double> v(10007);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::sin(0.37 * i) * 1e-3 + 1.0;
  const double s1 = pairwise_sum(v);
  std::vector<double> out(v.size());
  for (unsigned threads : {1u, 3u}) {
    set_thread_count(threads);
    parallel_for(v.size(), [&](std::size_t i) { out[i] = v[i] * 2; });
    CHECK(pairwise_sum(out) == 2 * s1);
  }
  set_thread_count(1);
  CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) {
                    if (i == 4) throw InvalidArgument("boom");
                  }),
                  InvalidArgument);
}

TEST_CASE("least-squares fits") {
  const std::vector<double> x{1, 2, 4, 8}, y{3, 12, 48, 192};
  const LineFit f = fit_loglog(x, y);
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.slope_stderr < 1e-12);
  CHECK_THROWS_AS(fit_loglog(std::vector<double>{1.0}, std::vector<double>{2.0}), FitError);
}
