#include <algorithm>
#include <cmath>
#include <ostream>

#include "experiment_common.hpp"
#include "tslab/errors.hpp"
#include "tslab/norms.hpp"
#include "tslab/reference.hpp"
#include "tslab/strings.hpp"
#include "tslab/test_family.hpp"

namespace tslab {

DuhamelResult duhamel_check(SliceEngine& engine, const WaveFunction& f, int order, double s, double t, int panels,
                            TimeStencil stencil) {
  if (panels < 2 || panels % 2) throw InvalidArgument("duhamel_check: Simpson needs an even panel count");
  const PotentialModel& pot = engine.potential();
  const GridSpec& g = f.grid();
  const double h = (t - s) / panels;
  std::vector<cplx> integral(g.n, cplx(0.0, 0.0));
  // r = s contributes nothing: E^(N)(s, s) = 1 solves the equation there
  for (int k = 1; k <= panels; ++k) {
    const double r = s + k * h;
    const WaveFunction field = parametrix_residual(engine, s, r, order, f, stencil).field;
    const WaveFunction moved = k == panels ? field : exact_propagator(pot, field, r, t).u;
    const double w = (k == panels ? 1.0 : (k % 2 ? 4.0 : 2.0)) * h / 3.0;
    for (std::size_t j = 0; j < g.n; ++j) integral[j] += w * moved[j];
  }
  const WaveFunction diff = engine.slice(s, t, order, f) - exact_propagator(pot, f, s, t).u;
  const cplx factor(0.0, -1.0 / f.hbar());
  std::vector<cplx> mismatch(g.n);
  for (std::size_t j = 0; j < g.n; ++j) mismatch[j] = diff[j] - factor * integral[j];
  DuhamelResult d;
  d.order = order;
  d.tau = t - s;
  d.hbar = f.hbar();
  d.panels = panels;
  d.difference_l2 = lp_norm(diff, 2.0);
  d.relative_error = lp_norm(f.with_values(std::move(mismatch)), 2.0) / d.difference_l2;
  return d;
}

ResidualReport run_residual_scaling(const ExperimentConfig& config) {
  ResidualReport rep;
  rep.config = config;
  const PotentialModel pot = config.potential.model();
  EngineOptions options;
  options.cached_tables = 5;
  SliceEngine engine(pot, config.grid, options);
  const double s = config.s;
  const double hbar0 = config.hbars.empty() ? 1.0 : config.hbars.front();

  auto residual = [&](double tau, double hbar, int order) {
    double worst = 0.0;
    for (const auto& tf : family_by_name(config.family, config.grid, hbar))
      worst = std::max(worst, parametrix_residual(engine, s, s + tau, order, tf.f, config.stencil).l2);
    return worst;
  };

  rep.aborted = capture_guard([&] {
    for (int order : config.orders) {
      for (double tau : config.taus) rep.tau_rows.push_back({tau, hbar0, order, residual(tau, hbar0, order)});
      if (config.hbars.size() >= 2)
        for (double hbar : config.hbars)
          rep.hbar_rows.push_back({config.fixed_tau, hbar, order, residual(config.fixed_tau, hbar, order)});
    }
    if (config.duhamel_tau > 0.0) {
      const auto family = family_by_name(config.family, config.grid, config.duhamel_hbar);
      rep.duhamel = duhamel_check(engine, family.front().f, config.duhamel_order, s, s + config.duhamel_tau,
                                  config.duhamel_panels, config.stencil);
    }
  });
  if (rep.aborted) return rep;

  if (rep.duhamel)
    rep.checks.push_back({"Duhamel identity N=" + std::to_string(rep.duhamel->order) + " tau=" +
                              num(rep.duhamel->tau) + " hbar=" + num(rep.duhamel->hbar),
                          rep.duhamel->relative_error, "relative error < " + num(config.duhamel_tol),
                          rep.duhamel->relative_error < config.duhamel_tol});

  if (pot.kind() == PotentialKind::free) {
    double worst = 0.0;
    for (const auto* rows : {&rep.tau_rows, &rep.hbar_rows})
      for (const auto& r : *rows) worst = std::max(worst, r.residual_l2);
    rep.exact_regime = worst < config.exact_tol;
    rep.checks.push_back({"free residual", worst, "< " + num(config.exact_tol), rep.exact_regime});
  } else {
    for (int order : config.orders) {
      std::vector<double> xs, ys;
      for (const auto& r : rep.tau_rows)
        if (r.order == order) {
          xs.push_back(r.tau);
          ys.push_back(r.residual_l2);
        }
      if (!xs.empty())
        rep.fits.push_back(detail::slope_check("tau exponent N=" + std::to_string(order),
                                               detail::band_for(config.residual_bands, order), xs, ys,
                                               config.min_fit_points));
      xs.clear();
      ys.clear();
      for (const auto& r : rep.hbar_rows)
        if (r.order == order) {
          xs.push_back(r.hbar);
          ys.push_back(r.residual_l2);
        }
      if (!xs.empty())
        rep.fits.push_back(detail::slope_check("hbar exponent N=" + std::to_string(order),
                                               detail::band_for(config.residual_bands, order), xs, ys,
                                               config.min_fit_points));
    }
  }
  rep.pass = std::all_of(rep.fits.begin(), rep.fits.end(), [](const SlopeCheck& c) { return c.pass; }) &&
             std::all_of(rep.checks.begin(), rep.checks.end(), [](const Check& c) { return c.pass; }) &&
             !(rep.fits.empty() && rep.checks.empty());
  return rep;
}

nlohmann::json ResidualReport::to_json() const {
  auto rows_json = [](const std::vector<ResidualRow>& rows) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& r : rows) a.push_back({{"tau", r.tau}, {"hbar", r.hbar}, {"N", r.order}, {"residual_l2", r.residual_l2}});
    return a;
  };
  nlohmann::json fits_json = nlohmann::json::array();
  for (const auto& f : fits) fits_json.push_back(tslab::to_json(f));
  nlohmann::json checks_json = nlohmann::json::array();
  for (const auto& c : checks) checks_json.push_back(tslab::to_json(c));
  nlohmann::json d = nullptr;
  if (duhamel)
    d = {{"order", duhamel->order},
         {"tau", duhamel->tau},
         {"hbar", duhamel->hbar},
         {"panels", duhamel->panels},
         {"difference_l2", duhamel->difference_l2},
         {"relative_error", duhamel->relative_error}};
  return {{"kind", "residual"},
          {"name", config.name},
          {"config", tslab::to_json(config)},
          {"tau_sweep", rows_json(tau_rows)},
          {"hbar_sweep", rows_json(hbar_rows)},
          {"fits", fits_json},
          {"checks", checks_json},
          {"duhamel", d},
          {"exact_regime", exact_regime},
          {"guard", detail::guard_json(aborted)},
          {"pass", pass}};
}

void ResidualReport::write_csv(std::ostream& out) const {
  std::vector<ResidualRow> all = tau_rows;
  all.insert(all.end(), hbar_rows.begin(), hbar_rows.end());
  write_residual_csv(out, all);
}

}  // namespace tslab
