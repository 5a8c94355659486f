#include "experiment_common.hpp"

#include <cmath>

#include "tslab/errors.hpp"
#include "tslab/norms.hpp"

namespace tslab {

nlohmann::json to_json(const SlopeCheck& s) {
  return {{"name", s.name},
          {"band", {s.band.lo, s.band.hi}},
          {"slope", s.refused ? nlohmann::json(nullptr) : nlohmann::json(s.fit.slope)},
          {"slope_stderr", s.fit.slope_stderr},
          {"points", s.fit.points},
          {"refused", s.refused},
          {"note", s.note},
          {"pass", s.pass}};
}

nlohmann::json to_json(const Check& c) {
  return {{"name", c.name}, {"value", c.value}, {"requirement", c.requirement}, {"pass", c.pass}};
}

double source_norm(const WaveFunction& f, double p, int dim) {
  if (p <= 2.0) return sobolev_norm(f, p, k_exponent(p, dim), f.hbar());
  return lp_norm(f, p);
}

double target_norm(const WaveFunction& g, double p, int dim) {
  if (p <= 2.0) return lp_norm(g, p);
  return sobolev_norm(g, p, -k_exponent(p, dim), g.hbar());
}

std::optional<GuardDiagnostic> capture_guard(const std::function<void()>& body) {
  try {
    body();
  } catch (const ResolutionError& e) {
    return GuardDiagnostic{e.guard(), e.what(), e.required_n()};
  } catch (const GuardError& e) {
    return GuardDiagnostic{e.guard(), e.what(), 0};
  }
  return std::nullopt;
}

namespace detail {

SlopeCheck slope_check(std::string name, Band band, std::span<const double> xs, std::span<const double> ys,
                       std::size_t min_points) {
  SlopeCheck c;
  c.name = std::move(name);
  c.band = band;
  if (xs.size() < std::max<std::size_t>(min_points, 2)) {
    c.refused = true;
    c.note = "fit refused: " + std::to_string(xs.size()) + " valid points, need " + std::to_string(min_points);
    return c;
  }
  try {
    c.fit = fit_loglog(xs, ys);
  } catch (const FitError& e) {
    c.refused = true;
    c.note = e.what();
    return c;
  }
  c.pass = band.contains(c.fit.slope);
  return c;
}

Band band_for(const std::vector<Band>& bands, int order) {
  if (order < 0 || static_cast<std::size_t>(order) >= bands.size())
    throw InvalidArgument("no acceptance band configured for order " + std::to_string(order));
  return bands[static_cast<std::size_t>(order)];
}

nlohmann::json guard_json(const std::optional<GuardDiagnostic>& g) {
  if (!g) return nullptr;
  return {{"guard", g->guard}, {"message", g->message}, {"required_n", g->required_n}};
}

}  // namespace detail
}  // namespace tslab
