#include <algorithm>
#include <cmath>
#include <ostream>

#include "experiment_common.hpp"
#include "tslab/fit.hpp"
#include "tslab/norms.hpp"
#include "tslab/reference.hpp"
#include "tslab/strings.hpp"

namespace tslab {
namespace {

// Fourier transform up to a phase: the oscillator propagator at a quarter period
WaveFunction fourier_op(const WaveFunction& f) { return mehler_propagator(f, 0.5 * kPi); }

WaveFunction gaussian_at(const GridSpec& grid, double shift, double scale) {
  return WaveFunction::sample(grid, [=](double x) {
    const double y = (x - shift) / scale;
    return cplx(std::exp(-0.5 * y * y), 0.0);
  });
}

double ratio(const WaveFunction& f, double p, double k) {
  return sobolev_norm(fourier_op(f), p, k, 1.0) / lp_norm(f, p);
}

}  // namespace

SharpnessReport run_sharpness_probe(const SharpnessConfig& c) {
  SharpnessReport rep;
  rep.config = c;
  rep.aborted = capture_guard([&] {
    std::vector<double> tr, unit;
    for (double lambda : c.translations) {
      const WaveFunction f = gaussian_at(c.grid, lambda, 1.0);
      const double r = ratio(f, c.translation_p, c.translation_k);
      rep.rows.push_back({"translation", lambda, c.translation_p, c.translation_k, r});
      tr.push_back(r);
      const double u = ratio(f, 2.0, 0.0);
      rep.rows.push_back({"translation", lambda, 2.0, 0.0, u});
      unit.push_back(u);
    }
    const double k2 = -k_exponent(c.dilation_p, c.grid.dim) + c.dilation_k_offset;
    const double dil_law = k2 + 2.0 * c.grid.dim * (0.5 - 1.0 / c.dilation_p);
    std::vector<double> dl;
    for (double lambda : c.dilations) {
      const double r = ratio(gaussian_at(c.grid, 0.0, lambda), c.dilation_p, k2);
      rep.rows.push_back({"dilation", lambda, c.dilation_p, k2, r});
      dl.push_back(r);
    }
    const Band tband{c.translation_k - c.tolerance, c.translation_k + c.tolerance};
    const Band dband{dil_law - c.tolerance, dil_law + c.tolerance};
    rep.fits.push_back(detail::slope_check("translation exponent p=" + num(c.translation_p) + " k=" +
                                               num(c.translation_k),
                                           tband, c.translations, tr, 3));
    rep.fits.push_back(detail::slope_check("dilation exponent p=" + num(c.dilation_p) + " k=" + num(k2),
                                           dband, c.dilations, dl, 3));
    const auto [lo, hi] = std::minmax_element(unit.begin(), unit.end());
    rep.checks.push_back({"p=2 ratio spread over translations", *hi / *lo - 1.0, "<= " + num(c.unit_tol),
                          *hi / *lo - 1.0 <= c.unit_tol});
    rep.checks.push_back({"dilation exponent positive", rep.fits.back().fit.slope, "> 0", rep.fits.back().fit.slope > 0.0});
  });
  rep.pass = !rep.aborted && std::all_of(rep.fits.begin(), rep.fits.end(), [](const SlopeCheck& s) { return s.pass; }) &&
             std::all_of(rep.checks.begin(), rep.checks.end(), [](const Check& x) { return x.pass; });
  return rep;
}

nlohmann::json SharpnessReport::to_json() const {
  nlohmann::json rows_json = nlohmann::json::array(), fits_json = nlohmann::json::array(),
                 checks_json = nlohmann::json::array();
  for (const auto& r : rows)
    rows_json.push_back({{"family", r.family}, {"lambda", r.lambda}, {"p", r.p}, {"k", r.k}, {"ratio", r.ratio}});
  for (const auto& f : fits) fits_json.push_back(tslab::to_json(f));
  for (const auto& c : checks) checks_json.push_back(tslab::to_json(c));
  return {{"kind", "sharpness"},   {"name", config.name},  {"config", tslab::to_json(config)},
          {"rows", rows_json},     {"fits", fits_json},    {"checks", checks_json},
          {"guard", detail::guard_json(aborted)}, {"pass", pass}};
}

void SharpnessReport::write_csv(std::ostream& out) const {
  out << "family,lambda,p,k,ratio\n";
  out.precision(17);
  for (const auto& r : rows) out << r.family << ',' << r.lambda << ',' << r.p << ',' << r.k << ',' << r.ratio << '\n';
}

}  // namespace tslab
