#include <algorithm>
#include <cmath>
#include <ostream>

#include "experiment_common.hpp"
#include "tslab/dilation.hpp"
#include "tslab/fourier.hpp"
#include "tslab/gabor_matrix.hpp"
#include "tslab/norms.hpp"
#include "tslab/reference.hpp"
#include "tslab/slicing.hpp"
#include "tslab/strings.hpp"
#include "tslab/test_family.hpp"

namespace tslab {
namespace {

// sup over r of (1 + r^2)^{m/2} e^{-r^2/4}, the identity seminorm for the
// Gaussian window
double identity_seminorm_oracle(double m) {
  double best = 0.0;
  for (int i = 0; i <= 200000; ++i) {
    const double r = 20.0 * i / 200000.0;
    best = std::max(best, std::pow(1.0 + r * r, 0.5 * m) * std::exp(-0.25 * r * r));
  }
  return best;
}

Check at_most(std::string name, double value, double limit) {
  return {std::move(name), value, "<= " + num(limit), value <= limit};
}
Check at_least(std::string name, double value, double limit) {
  return {std::move(name), value, ">= " + num(limit), value >= limit};
}

}  // namespace

GaborReport run_gabor_report(const GaborConfig& c) {
  GaborReport rep;
  rep.config = c;
  auto& checks = rep.checks;
  rep.aborted = capture_guard([&] {
    const GridSpec& grid = c.grid;
    const Window g = Window::gaussian(grid);
    const PhaseLattice z_lat = PhaseLattice::make(grid, c.alpha, c.beta, c.z_radius);
    const PhaseLattice w_lat = PhaseLattice::make(grid, c.alpha, c.beta, c.w_radius);
    const PotentialModel harmonic = PotentialModel::harmonic();
    SliceEngine harm(harmonic, grid), free_engine(PotentialModel::free(), grid);
    const Operator slice = [&](const WaveFunction& u) { return harm.slice(0.0, c.tau, 0, u); };
    const CanonicalMap chi = CanonicalMap::flow(harmonic, 0.0, c.tau);

    // phase-space substrate
    checks.push_back(at_most("window norm defect", std::abs(g.l2_norm() - 1.0), 1e-10));
    {
      const PhaseLattice lat = PhaseLattice::make(grid, c.alpha, c.beta, 4.0);
      const std::vector<cplx> v = stft(time_frequency_shift(g, {0.0, 0.0}), g, lat);
      double worst = 0.0;
      for (std::size_t i = 0; i < lat.size(); ++i) {
        const FlowPoint z = lat.node(i);
        const double exact = std::exp(-0.25 * (z.x * z.x + z.xi * z.xi));
        worst = std::max(worst, std::abs(std::abs(v[i]) - exact) / exact);
      }
      checks.push_back(at_most("STFT of the window vs Gaussian oracle", worst, 1e-8));
    }
    {
      const PhaseLattice dense = PhaseLattice::make(grid, 4.0 * grid.dx(), 4.0 * grid.dxi(), 10.0);
      const WaveFunction gauss = gaussian_packet(grid, 1.0, 1.0).f;
      const WaveFunction h1 =
          WaveFunction::sample(grid, [](double x) { return cplx(hermite_function(1, x), 0.0); });
      checks.push_back(at_most("STFT inversion (Gaussian)", stft_inversion_error(gauss, g, dense), c.inversion_tol));
      checks.push_back(at_most("STFT inversion (Hermite-1)", stft_inversion_error(h1, g, dense), c.inversion_tol));
      const WaveFunction spec = fourier_transform(gauss, Direction::forward);
      double ss = 0.0;
      for (std::size_t m = 0; m < grid.n; ++m) ss += std::norm(spec[m]);
      const double plancherel = std::abs(ss * grid.dxi() / (2.0 * kPi) - std::pow(lp_norm(gauss, 2.0), 2));
      checks.push_back(at_most("Plancherel defect", plancherel, 1e-12));
      const WaveFunction back = dilate(dilate(gauss, 0.25, DilationDirection::compress), 0.25, DilationDirection::expand);
      checks.push_back(at_most("dilation roundtrip (hbar = 1/4)", relative_l2_error(back, gauss), 1e-8));
    }

    // identity operator against the Gaussian overlap oracle
    {
      const Operator id = [](const WaveFunction& u) { return u; };
      const GaborMatrix gm = gabor_matrix(id, g, z_lat, w_lat);
      double worst = 0.0;
      for (std::size_t iz = 0; iz < gm.rows(); ++iz)
        for (std::size_t iw = 0; iw < gm.cols(); ++iw) {
          const auto smp = gm.sample(iz, iw);
          const double r2 = (smp.w.x - smp.z.x) * (smp.w.x - smp.z.x) + (smp.w.xi - smp.z.xi) * (smp.w.xi - smp.z.xi);
          worst = std::max(worst, std::abs(smp.magnitude - std::exp(-0.25 * r2)));
        }
      checks.push_back(at_most("identity Gabor matrix vs overlap oracle", worst, 1e-6));
      const double sn = fio_seminorm(gm, CanonicalMap::identity(), c.m);
      const double oracle = identity_seminorm_oracle(c.m);
      checks.push_back(at_most("identity seminorm vs 1-D oracle " + num(oracle), std::abs(sn / oracle - 1.0), 0.01));
    }

    // slice operator against the classical flow
    {
      const GaborMatrix gm = gabor_matrix(slice, g, z_lat, w_lat);
      const DecayFit df = decay_fit(gm, chi, c.z_radius);
      rep.decay_exponent = df.exponent;
      rep.decay_bins = df.bin_centers;
      rep.decay_max = df.bin_max;
      checks.push_back(at_least("slice decay exponent at R=" + num(c.z_radius), df.exponent, c.min_decay));
      const SeminormStability st =
          fio_seminorm_stability(gm, chi, c.m, c.stability_radius, c.z_radius - c.stability_radius);
      checks.push_back(at_most("slice seminorm change R=" + num(c.stability_radius) + " -> " + num(c.z_radius),
                               std::abs(st.ratio - 1.0), c.stability_tol));
      const ArgmaxTracking tr = argmax_tracking(gm, chi);
      checks.push_back(at_least("arg-max rows within one cell of chi(z)", tr.fraction, c.min_tracking));
      checks.push_back({"slice seminorm m=" + num(c.m), st.outer, "finite", std::isfinite(st.outer)});
    }

    // compositions
    {
      const Operator f1 = [&](const WaveFunction& u) { return free_propagator(u, c.free_tau1); };
      const Operator f2 = [&](const WaveFunction& u) { return free_propagator(u, c.free_tau2); };
      const Operator f12 = [&](const WaveFunction& u) { return free_propagator(u, c.free_tau1 + c.free_tau2); };
      const CompositionReport fr = composition_decay_check(f1, f2, CanonicalMap::shear(c.free_tau1),
                                                           CanonicalMap::shear(c.free_tau2), c.m, g, z_lat, w_lat,
                                                           c.composition_bound);
      checks.push_back(at_most("composition ratio: free o free", fr.ratio, c.composition_bound));
      const double direct = fio_seminorm(gabor_matrix(f12, g, z_lat, w_lat),
                                         CanonicalMap::shear(c.free_tau1 + c.free_tau2), c.m);
      const double law = fr.composed / direct;
      checks.push_back({"free group law: composed / one-step seminorm", law, "in [0.5, 2]", law >= 0.5 && law <= 2.0});

      const CompositionReport hh =
          composition_decay_check(slice, slice, chi, chi, c.m, g, z_lat, w_lat, c.composition_bound);
      checks.push_back(at_most("composition ratio: E0(harmonic) o E0(harmonic)", hh.ratio, c.composition_bound));
      const Operator free_slice = [&](const WaveFunction& u) { return free_engine.slice(0.0, c.free_tau1, 0, u); };
      const CompositionReport hf = composition_decay_check(slice, free_slice, chi, CanonicalMap::shear(c.free_tau1),
                                                           c.m, g, z_lat, w_lat, c.composition_bound);
      checks.push_back(at_most("composition ratio: E0(harmonic) o E0(free)", hf.ratio, c.composition_bound));
    }

    // classical maps
    {
      const PotentialModel fp = c.flow_potential.model();
      const CanonicalMap whole = CanonicalMap::flow(fp, 0.0, c.flow_end);
      const CanonicalMap split =
          compose(CanonicalMap::flow(fp, c.flow_split, c.flow_end), CanonicalMap::flow(fp, 0.0, c.flow_split));
      double dev = 0.0;
      for (const FlowPoint& z : jacobian_sample_points(4.0)) {
        const FlowPoint a = whole(z), b = split(z);
        dev = std::max({dev, std::abs(a.x - b.x), std::abs(a.xi - b.xi)});
      }
      checks.push_back(at_most("flow composition deviation (" + fp.label() + ")", dev, c.flow_tol));
      double jd = 0.0;
      for (const CanonicalMap& m : {chi, whole, CanonicalMap::rotation(c.tau), CanonicalMap::shear(c.free_tau1),
                                    rescaled_flow(whole, 0.25)})
        jd = std::max(jd, jacobian_defect(m, jacobian_sample_points(4.0)));
      checks.push_back(at_most("symplectic sampling |det D chi - 1|", jd, c.jacobian_tol));
    }

    // semiclassical uniformity and flow-composition transport
    {
      const GridSpec& sg = c.semiclassical_grid;
      const Window sw = Window::gaussian(sg);
      const PhaseLattice sz = PhaseLattice::make(sg, c.semiclassical_spacing, c.semiclassical_spacing,
                                                 c.semiclassical_z_radius);
      const PhaseLattice swl = PhaseLattice::make(sg, c.semiclassical_spacing, c.semiclassical_spacing,
                                                  c.semiclassical_w_radius);
      std::vector<double> values;
      double transport = 0.0;
      for (double hbar : c.semiclassical_hbars) {
        const Operator u = semiclassical_conjugate(
            [&](const WaveFunction& f) { return mehler_propagator(f, c.tau); }, hbar);
        const GaborMatrix gm = gabor_matrix(u, sw, sz, swl);
        const double direct = fio_seminorm(gm, rescaled_flow(CanonicalMap::rotation(c.tau), hbar), c.m);
        const CanonicalMap via = compose(rescaled_flow(CanonicalMap::flow(harmonic, 0.5 * c.tau, c.tau), hbar),
                                         rescaled_flow(CanonicalMap::flow(harmonic, 0.0, 0.5 * c.tau), hbar));
        transport = std::max(transport, std::abs(fio_seminorm(gm, via, c.m) / direct - 1.0));
        values.push_back(direct);
      }
      const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
      checks.push_back(at_most("semiclassical seminorm spread (max/min - 1)", *hi / *lo - 1.0, c.semiclassical_tol));
      checks.push_back(at_most("seminorm via composed flows vs direct", transport, c.transport_tol));
    }

    // M^p boundedness probe under lattice refinement
    {
      const std::vector<TestFunction> family = standard_family(grid);
      for (double p : c.modulation_ps) {
        std::vector<double> ratios;
        for (double spacing : c.modulation_spacings) {
          const PhaseLattice lat = PhaseLattice::make(grid, spacing, spacing, c.modulation_radius);
          double worst = 0.0;
          for (const auto& tf : family)
            worst = std::max(worst, modulation_norm(slice(tf.f), g, p, lat).value / modulation_norm(tf.f, g, p, lat).value);
          ratios.push_back(worst);
        }
        const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
        checks.push_back(at_most("M^" + num(p) + " bound ratio change under refinement (value " + num(*hi) + ")",
                                 *hi / *lo - 1.0, c.modulation_tol));
      }
      const PhaseLattice lat = PhaseLattice::make(grid, c.alpha, c.beta, c.modulation_radius);
      std::vector<double> m2;
      for (const auto& tf : family) m2.push_back(modulation_norm(tf.f, g, 2.0, lat).value / lp_norm(tf.f, 2.0));
      const auto [lo, hi] = std::minmax_element(m2.begin(), m2.end());
      checks.push_back(at_most("M^2 / L^2 spread over the family", *hi / *lo - 1.0, 0.01));
    }

    // M^p_hbar scaling of a fixed Gaussian
    {
      const GridSpec& sg = c.scaling_grid;
      const Window sw = Window::gaussian(sg);
      const PhaseLattice lat = PhaseLattice::make(sg, c.alpha, c.beta, c.scaling_radius);
      const WaveFunction f0 = gaussian_packet(sg, 0.0, 0.0).f;
      for (double p : c.scaling_ps) {
        std::vector<double> norms;
        for (double hbar : c.scaling_hbars) norms.push_back(modulation_norm(f0, sw, p, lat, hbar).value);
        const double theory = -static_cast<double>(sg.dim) * (1.0 / p - 0.5) / 2.0;
        const double slope = fit_loglog(c.scaling_hbars, norms).slope;
        checks.push_back({"M^" + num(p) + "_hbar exponent (theory " + num(theory) + ")", slope,
                          "within " + num(c.scaling_tol) + " of theory", std::abs(slope - theory) <= c.scaling_tol});
      }
    }
  });
  rep.pass = !rep.aborted && !checks.empty() &&
             std::all_of(checks.begin(), checks.end(), [](const Check& x) { return x.pass; });
  return rep;
}

nlohmann::json GaborReport::to_json() const {
  nlohmann::json checks_json = nlohmann::json::array();
  for (const auto& c : checks) checks_json.push_back(tslab::to_json(c));
  return {{"kind", "gabor"},
          {"name", config.name},
          {"config", tslab::to_json(config)},
          {"checks", checks_json},
          {"decay_exponent", decay_exponent},
          {"decay_bins", decay_bins},
          {"decay_max", decay_max},
          {"guard", detail::guard_json(aborted)},
          {"pass", pass}};
}

void GaborReport::write_csv(std::ostream& out) const {
  out << "check,value,requirement,pass\n";
  out.precision(17);
  for (const auto& c : checks) out << '"' << c.name << "\"," << c.value << ",\"" << c.requirement << "\"," << (c.pass ? 1 : 0) << '\n';
}

}  // namespace tslab
