#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <set>

#include "experiment_common.hpp"
#include "tslab/norms.hpp"
#include "tslab/reference.hpp"
#include "tslab/slicing.hpp"
#include "tslab/strings.hpp"
#include "tslab/test_family.hpp"

namespace tslab {

ConvergenceReport run_convergence(const ExperimentConfig& config) {
  ConvergenceReport rep;
  rep.config = config;
  const PotentialModel pot = config.potential.model();
  EngineOptions options;
  options.cached_tables = 2;
  SliceEngine engine(pot, config.grid, options);
  std::set<std::string> methods;

  rep.aborted = capture_guard([&] {
    for (double hbar : config.hbars) {
      const std::vector<TestFunction> family = family_by_name(config.family, config.grid, hbar);
      std::vector<WaveFunction> refs;
      double ref_acc = 0.0;
      for (const auto& tf : family) {
        ReferenceResult r = exact_propagator(pot, tf.f, config.s, config.t, config.reference_tol);
        ref_acc = std::max(ref_acc, r.accuracy);
        methods.insert(r.method);
        refs.push_back(std::move(r.u));
      }
      for (int slices : config.slices) {
        const Subdivision omega = Subdivision::uniform(config.s, config.t, static_cast<std::size_t>(slices));
        for (int order : config.orders) {
          std::vector<WaveFunction> diffs;
          double l2 = 0.0;
          for (std::size_t i = 0; i < family.size(); ++i) {
            diffs.push_back(engine.propagate(omega, order, family[i].f) - refs[i]);
            l2 = std::max(l2, lp_norm(diffs.back(), 2.0) / lp_norm(family[i].f, 2.0));
          }
          for (double p : config.ps) {
            ConvergenceRow row{order, p, hbar, slices, omega.mesh(), 0.0, l2, ref_acc, "", false};
            for (std::size_t i = 0; i < family.size(); ++i) {
              const double e = target_norm(diffs[i], p, config.dim) / source_norm(family[i].f, p, config.dim);
              if (e > row.error) {
                row.error = e;
                row.worst = family[i].label;
              }
            }
            row.valid = ref_acc <= 0.01 * l2;
            rep.rows.push_back(row);
          }
        }
      }
    }
  });
  rep.reference_methods.assign(methods.begin(), methods.end());
  if (rep.aborted) return rep;

  if (pot.kind() == PotentialKind::free) {
    rep.exact_regime = std::all_of(rep.rows.begin(), rep.rows.end(),
                                   [&](const ConvergenceRow& r) { return r.error < config.exact_tol; });
    rep.pass = rep.exact_regime;
    return rep;
  }

  auto series = [&](auto&& select, auto&& abscissa) {
    std::vector<double> xs, ys;
    std::size_t dropped = 0;
    for (const auto& r : rep.rows) {
      if (!select(r)) continue;
      if (!r.valid || !(r.error > 0.0)) {
        ++dropped;
        continue;
      }
      xs.push_back(abscissa(r));
      ys.push_back(r.error);
    }
    return std::tuple(xs, ys, dropped);
  };
  auto finish = [&](SlopeCheck c, std::size_t dropped, const std::vector<double>& ys) {
    if (!ys.empty() && *std::max_element(ys.begin(), ys.end()) < config.exact_tol)
      c.note = "every error below " + num(config.exact_tol) + ": the slice is exact up to rounding, no order to fit";
    if (dropped) c.note += (c.note.empty() ? "" : "; ") + std::to_string(dropped) +
                           " points dropped (reference accuracy above 1% of the error)";
    rep.fits.push_back(std::move(c));
  };
  for (int order : config.orders)
    for (double p : config.ps) {
      if (config.slices.size() >= 2)
        for (double hbar : config.hbars) {
          auto [xs, ys, dropped] = series(
              [&](const ConvergenceRow& r) { return r.order == order && r.p == p && r.hbar == hbar; },
              [](const ConvergenceRow& r) { return r.omega; });
          finish(detail::slope_check("mesh slope N=" + std::to_string(order) + " p=" + num(p) + " hbar=" + num(hbar),
                                     detail::band_for(config.mesh_bands, order), xs, ys, config.min_fit_points),
                 dropped, ys);
        }
      if (config.hbars.size() >= 2)
        for (int slices : config.slices) {
          auto [xs, ys, dropped] = series(
              [&](const ConvergenceRow& r) { return r.order == order && r.p == p && r.slices == slices; },
              [](const ConvergenceRow& r) { return r.hbar; });
          finish(detail::slope_check("hbar slope N=" + std::to_string(order) + " p=" + num(p) +
                                         " L=" + std::to_string(slices),
                                     detail::band_for(config.hbar_bands, order), xs, ys, config.min_fit_points),
                 dropped, ys);
        }
    }
  rep.pass = !rep.fits.empty() &&
             std::all_of(rep.fits.begin(), rep.fits.end(), [](const SlopeCheck& c) { return c.pass; });
  return rep;
}

nlohmann::json ConvergenceReport::to_json() const {
  nlohmann::json rows_json = nlohmann::json::array();
  for (const auto& r : rows)
    rows_json.push_back({{"order", r.order},
                         {"p", r.p},
                         {"hbar", r.hbar},
                         {"slices", r.slices},
                         {"omega", r.omega},
                         {"error", r.error},
                         {"l2_error", r.l2_error},
                         {"reference_accuracy", r.reference_accuracy},
                         {"valid", r.valid},
                         {"worst", r.worst}});
  nlohmann::json fits_json = nlohmann::json::array();
  for (const auto& f : fits) fits_json.push_back(tslab::to_json(f));
  return {{"kind", "converge"},
          {"name", config.name},
          {"config", tslab::to_json(config)},
          {"rows", rows_json},
          {"fits", fits_json},
          {"exact_regime", exact_regime},
          {"reference_methods", reference_methods},
          {"guard", detail::guard_json(aborted)},
          {"pass", pass}};
}

void ConvergenceReport::write_csv(std::ostream& out) const {
  out << "order,p,hbar,L,omega,error,l2_error,reference_accuracy,valid,worst\n";
  out.precision(17);
  for (const auto& r : rows)
    out << r.order << ',' << r.p << ',' << r.hbar << ',' << r.slices << ',' << r.omega << ',' << r.error << ','
        << r.l2_error << ',' << r.reference_accuracy << ',' << (r.valid ? 1 : 0) << ',' << r.worst << '\n';
}

}  // namespace tslab
