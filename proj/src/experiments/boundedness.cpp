#include <algorithm>
#include <cmath>
#include <ostream>

#include "experiment_common.hpp"
#include "tslab/norms.hpp"
#include "tslab/reference.hpp"
#include "tslab/strings.hpp"
#include "tslab/test_family.hpp"

namespace tslab {

BoundednessReport run_boundedness(const ExperimentConfig& config) {
  BoundednessReport rep;
  rep.config = config;
  const PotentialModel pot = config.potential.model();
  const std::vector<double> taus = config.taus.empty() ? std::vector<double>{config.t - config.s} : config.taus;

  rep.aborted = capture_guard([&] {
    for (double tau : taus)
      for (double hbar : config.hbars) {
        const std::vector<TestFunction> family = family_by_name(config.family, config.grid, hbar);
        std::vector<WaveFunction> out;
        double acc = 0.0;
        for (const auto& tf : family) {
          ReferenceResult r = exact_propagator(pot, tf.f, config.s, config.s + tau, config.reference_tol);
          acc = std::max(acc, r.accuracy);
          out.push_back(std::move(r.u));
        }
        for (double p : config.ps) {
          BoundednessRow row{tau, hbar, p, 0.0, acc, ""};
          for (std::size_t i = 0; i < family.size(); ++i) {
            const double ratio = target_norm(out[i], p, config.dim) / source_norm(family[i].f, p, config.dim);
            if (ratio > row.ratio) {
              row.ratio = ratio;
              row.worst = family[i].label;
            }
          }
          rep.rows.push_back(row);
        }
      }
  });
  if (rep.aborted) return rep;

  for (double tau : taus)
    for (double p : config.ps) {
      const BoundednessRow* base = nullptr;
      for (const auto& r : rep.rows)
        if (r.tau == tau && r.p == p && r.hbar == 1.0) base = &r;
      for (const auto& r : rep.rows) {
        if (r.tau != tau || r.p != p) continue;
        const std::string tag = "tau=" + num(tau) + " p=" + num(p) + " hbar=" + num(r.hbar);
        if (p == 2.0)
          rep.checks.push_back({"unit ratio " + tag, r.ratio, "|ratio - 1| <= " + num(config.unit_tol),
                                std::abs(r.ratio - 1.0) <= config.unit_tol});
        if (base && r.hbar != 1.0)
          rep.checks.push_back({"hbar stability " + tag, r.ratio / base->ratio,
                                "ratio / ratio(hbar=1) <= " + num(config.bounded_factor),
                                std::isfinite(r.ratio) && r.ratio <= config.bounded_factor * base->ratio});
      }
    }
  rep.pass = !rep.checks.empty() &&
             std::all_of(rep.checks.begin(), rep.checks.end(), [](const Check& c) { return c.pass; });
  return rep;
}

nlohmann::json BoundednessReport::to_json() const {
  nlohmann::json rows_json = nlohmann::json::array();
  for (const auto& r : rows)
    rows_json.push_back({{"tau", r.tau},
                         {"hbar", r.hbar},
                         {"p", r.p},
                         {"ratio", r.ratio},
                         {"reference_accuracy", r.reference_accuracy},
                         {"worst", r.worst}});
  nlohmann::json checks_json = nlohmann::json::array();
  for (const auto& c : checks) checks_json.push_back(tslab::to_json(c));
  return {{"kind", "bounded"},
          {"name", config.name},
          {"config", tslab::to_json(config)},
          {"rows", rows_json},
          {"checks", checks_json},
          {"guard", detail::guard_json(aborted)},
          {"pass", pass}};
}

void BoundednessReport::write_csv(std::ostream& out) const {
  out << "tau,hbar,p,ratio,reference_accuracy,worst\n";
  out.precision(17);
  for (const auto& r : rows)
    out << r.tau << ',' << r.hbar << ',' << r.p << ',' << r.ratio << ',' << r.reference_accuracy << ',' << r.worst
        << '\n';
}

}  // namespace tslab
