#include "tslab/config.hpp"

#include <cmath>
#include <set>

#include "tslab/errors.hpp"

namespace tslab {

using nlohmann::json;

namespace {

// Reads keys into fields, remembering which keys were consumed so that
// typos surface as errors instead of silently keeping defaults.
class Reader {
 public:
  Reader(const json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) throw InvalidArgument(where_ + ": expected a JSON object");
  }
  template <class T>
  void operator()(const char* key, T& field) {
    seen_.insert(key);
    if (!j_.contains(key)) return;
    try {
      field = j_.at(key).get<T>();
    } catch (const json::exception& e) {
      throw InvalidArgument(where_ + "." + key + ": " + e.what());
    }
  }
  void grid(const char* key, GridSpec& g) {
    seen_.insert(key);
    if (!j_.contains(key)) return;
    Reader r(j_.at(key), where_ + "." + key);
    double half_width = g.half_width;
    std::size_t n = g.n;
    r("half_width", half_width);
    r("n", n);
    r.finish();
    g = GridSpec::make(half_width, n);
  }
  void potential(const char* key, PotentialSpec& p) {
    seen_.insert(key);
    if (!j_.contains(key)) return;
    const json& v = j_.at(key);
    if (v.is_string()) {
      p = PotentialSpec{v.get<std::string>(), default_parameter(v.get<std::string>())};
      return;
    }
    Reader r(v, where_ + "." + key);
    r("label", p.label);
    p.parameter = default_parameter(p.label);
    r("parameter", p.parameter);
    r.finish();
  }
  void bands(const char* key, std::vector<Band>& b) {
    seen_.insert(key);
    if (!j_.contains(key)) return;
    b.clear();
    for (const json& e : j_.at(key)) {
      if (!e.is_array() || e.size() != 2) throw InvalidArgument(where_ + "." + key + ": bands are [lo, hi] pairs");
      b.push_back({e[0].get<double>(), e[1].get<double>()});
    }
  }
  void stencil(const char* key, TimeStencil& s) {
    seen_.insert(key);
    if (!j_.contains(key)) return;
    Reader r(j_.at(key), where_ + "." + key);
    r("dt", s.dt);
    r("points", s.points);
    r.finish();
  }
  void mark(const char* key) { seen_.insert(key); }
  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key())) throw InvalidArgument(where_ + ": unknown key '" + it.key() + "'");
  }
  static double default_parameter(const std::string& label) {
    if (label == "harmonic-cos") return 0.2;
    if (label == "pulsed-harmonic") return 0.1;
    return 0.0;
  }

 private:
  const json& j_;
  std::string where_;
  std::set<std::string> seen_;
};

json grid_json(const GridSpec& g) { return {{"half_width", g.half_width}, {"n", g.n}}; }
json potential_json(const PotentialSpec& p) { return {{"label", p.label}, {"parameter", p.parameter}}; }
json bands_json(const std::vector<Band>& b) {
  json a = json::array();
  for (const Band& x : b) a.push_back({x.lo, x.hi});
  return a;
}

ExperimentConfig experiment_from_json(const json& j, const ExperimentConfig& base, const std::string& where) {
  ExperimentConfig c = base;
  Reader r(j, where);
  r("name", c.name);
  r.potential("potential", c.potential);
  r("dim", c.dim);
  r.grid("grid", c.grid);
  r("hbars", c.hbars);
  r("ps", c.ps);
  r("orders", c.orders);
  r("s", c.s);
  r("t", c.t);
  r("slices", c.slices);
  r("family", c.family);
  r("seed", c.seed);
  r("taus", c.taus);
  r("fixed_tau", c.fixed_tau);
  r("reference_tol", c.reference_tol);
  r("min_fit_points", c.min_fit_points);
  r.stencil("stencil", c.stencil);
  r.bands("mesh_bands", c.mesh_bands);
  r.bands("hbar_bands", c.hbar_bands);
  r.bands("residual_bands", c.residual_bands);
  r("bounded_factor", c.bounded_factor);
  r("unit_tol", c.unit_tol);
  r("duhamel_order", c.duhamel_order);
  r("duhamel_tau", c.duhamel_tau);
  r("duhamel_hbar", c.duhamel_hbar);
  r("duhamel_panels", c.duhamel_panels);
  r("duhamel_tol", c.duhamel_tol);
  r("exact_tol", c.exact_tol);
  r.finish();
  if (c.dim != 1) throw InvalidArgument(where + ": only dim = 1 is implemented");
  return c;
}

GaborConfig gabor_from_json(const json& j, const std::string& where) {
  GaborConfig c;
  Reader r(j, where);
  r("name", c.name);
  r.grid("grid", c.grid);
  r("tau", c.tau);
  r("alpha", c.alpha);
  r("beta", c.beta);
  r("z_radius", c.z_radius);
  r("w_radius", c.w_radius);
  r("m", c.m);
  r("min_decay", c.min_decay);
  r("stability_radius", c.stability_radius);
  r("stability_tol", c.stability_tol);
  r("min_tracking", c.min_tracking);
  r("composition_bound", c.composition_bound);
  r("free_tau1", c.free_tau1);
  r("free_tau2", c.free_tau2);
  r.potential("flow_potential", c.flow_potential);
  r("flow_split", c.flow_split);
  r("flow_end", c.flow_end);
  r("flow_tol", c.flow_tol);
  r("jacobian_tol", c.jacobian_tol);
  r.grid("semiclassical_grid", c.semiclassical_grid);
  r("semiclassical_hbars", c.semiclassical_hbars);
  r("semiclassical_spacing", c.semiclassical_spacing);
  r("semiclassical_z_radius", c.semiclassical_z_radius);
  r("semiclassical_w_radius", c.semiclassical_w_radius);
  r("semiclassical_tol", c.semiclassical_tol);
  r("transport_tol", c.transport_tol);
  r("modulation_ps", c.modulation_ps);
  r("modulation_radius", c.modulation_radius);
  r("modulation_spacings", c.modulation_spacings);
  r("modulation_tol", c.modulation_tol);
  r.grid("scaling_grid", c.scaling_grid);
  r("scaling_hbars", c.scaling_hbars);
  r("scaling_ps", c.scaling_ps);
  r("scaling_radius", c.scaling_radius);
  r("scaling_tol", c.scaling_tol);
  r("inversion_tol", c.inversion_tol);
  r.finish();
  return c;
}

SharpnessConfig sharpness_from_json(const json& j, const std::string& where) {
  SharpnessConfig c;
  Reader r(j, where);
  r("name", c.name);
  r.grid("grid", c.grid);
  r("translations", c.translations);
  r("translation_p", c.translation_p);
  r("translation_k", c.translation_k);
  r("dilations", c.dilations);
  r("dilation_p", c.dilation_p);
  r("dilation_k_offset", c.dilation_k_offset);
  r("tolerance", c.tolerance);
  r("unit_tol", c.unit_tol);
  r.finish();
  return c;
}

}  // namespace

SuiteConfig default_suite() {
  SuiteConfig s;
  const GridSpec wide = GridSpec::make(20.0, 1024);

  ExperimentConfig free_run;
  free_run.name = "converge-free";
  free_run.potential = {"free", 0.0};
  free_run.grid = wide;
  free_run.orders = {0, 1};
  free_run.slices = {1, 2, 4};
  s.converge.push_back(free_run);

  for (const char* label : {"harmonic", "harmonic-cos"}) {
    ExperimentConfig c;
    c.name = std::string("converge-mesh-") + label;
    c.potential = {label, Reader::default_parameter(label)};
    c.grid = wide;
    c.orders = {0, 1};
    c.ps = {2.0, 4.0, 1.5};
    c.slices = {2, 4, 8, 16, 32};
    s.converge.push_back(c);
  }
  ExperimentConfig hb;
  hb.name = "converge-hbar-harmonic-cos";
  hb.potential = {"harmonic-cos", 0.2};
  hb.grid = GridSpec::make(10.0, 1024);
  hb.orders = {0, 1};
  hb.hbars = {1.0, 0.5, 0.25, 0.125};
  hb.slices = {8};
  s.converge.push_back(hb);

  ExperimentConfig bd;
  bd.name = "bounded-harmonic";
  bd.potential = {"harmonic", 0.0};
  bd.grid = GridSpec::make(10.0, 2048);
  bd.taus = {kPi / 8.0, kPi / 2.0};
  bd.ps = {1.5, 2.0, 4.0};
  bd.hbars = {1.0, 0.25, 0.0625};
  s.bounded.push_back(bd);
  ExperimentConfig bf = bd;
  bf.name = "bounded-free";
  bf.potential = {"free", 0.0};
  bf.taus = {1.0};
  bf.ps = {1.5};
  s.bounded.push_back(bf);

  ExperimentConfig rf;
  rf.name = "residual-free";
  rf.potential = {"free", 0.0};
  rf.grid = GridSpec::make(10.0, 512);
  rf.orders = {0};
  rf.taus = {0.1, 0.2, 0.4};
  rf.hbars = {1.0, 0.5, 0.25};
  rf.family = "gaussian";
  rf.min_fit_points = 3;
  rf.stencil = {1e-3, 4};
  rf.duhamel_tau = 0.0;
  s.residual.push_back(rf);
  ExperimentConfig rh = rf;
  rh.name = "residual-harmonic";
  rh.potential = {"harmonic", 0.0};
  rh.duhamel_tau = 0.4;
  s.residual.push_back(rh);
  ExperimentConfig rc = rf;
  rc.name = "residual-harmonic-cos";
  rc.potential = {"harmonic-cos", 0.2};
  rc.orders = {0, 1};
  s.residual.push_back(rc);

  s.gabor.push_back(GaborConfig{});
  s.sharpness.push_back(SharpnessConfig{});
  return s;
}

SuiteConfig suite_from_json(const json& j) {
  SuiteConfig s = default_suite();
  Reader r(j, "config");
  r("out_dir", s.out_dir);
  r("seed", s.seed);
  auto section = [&](const char* key, std::vector<ExperimentConfig>& runs) {
    r.mark(key);
    if (!j.contains(key)) return;
    const std::vector<ExperimentConfig> defaults = runs;
    runs.clear();
    std::size_t idx = 0;
    for (const json& e : j.at(key)) {
      const std::string where = std::string("config.") + key + "[" + std::to_string(idx++) + "]";
      // an entry naming a default run starts from it
      ExperimentConfig base;
      if (e.is_object() && e.contains("name"))
        for (const auto& d : defaults)
          if (d.name == e.at("name").get<std::string>()) base = d;
      runs.push_back(experiment_from_json(e, base, where));
    }
  };
  section("converge", s.converge);
  section("bounded", s.bounded);
  section("residual", s.residual);
  r.mark("gabor");
  if (j.contains("gabor")) {
    s.gabor.clear();
    std::size_t idx = 0;
    for (const json& e : j.at("gabor")) s.gabor.push_back(gabor_from_json(e, "config.gabor[" + std::to_string(idx++) + "]"));
  }
  r.mark("sharpness");
  if (j.contains("sharpness")) {
    s.sharpness.clear();
    std::size_t idx = 0;
    for (const json& e : j.at("sharpness"))
      s.sharpness.push_back(sharpness_from_json(e, "config.sharpness[" + std::to_string(idx++) + "]"));
  }
  r.finish();
  return s;
}

json to_json(const ExperimentConfig& c) {
  return {{"name", c.name},
          {"potential", potential_json(c.potential)},
          {"dim", c.dim},
          {"grid", grid_json(c.grid)},
          {"hbars", c.hbars},
          {"ps", c.ps},
          {"orders", c.orders},
          {"s", c.s},
          {"t", c.t},
          {"slices", c.slices},
          {"family", c.family},
          {"seed", c.seed},
          {"taus", c.taus},
          {"fixed_tau", c.fixed_tau},
          {"reference_tol", c.reference_tol},
          {"min_fit_points", c.min_fit_points},
          {"stencil", {{"dt", c.stencil.dt}, {"points", c.stencil.points}}},
          {"mesh_bands", bands_json(c.mesh_bands)},
          {"hbar_bands", bands_json(c.hbar_bands)},
          {"residual_bands", bands_json(c.residual_bands)},
          {"bounded_factor", c.bounded_factor},
          {"unit_tol", c.unit_tol},
          {"duhamel_order", c.duhamel_order},
          {"duhamel_tau", c.duhamel_tau},
          {"duhamel_hbar", c.duhamel_hbar},
          {"duhamel_panels", c.duhamel_panels},
          {"duhamel_tol", c.duhamel_tol},
          {"exact_tol", c.exact_tol}};
}

json to_json(const GaborConfig& c) {
  return {{"name", c.name},
          {"grid", grid_json(c.grid)},
          {"tau", c.tau},
          {"alpha", c.alpha},
          {"beta", c.beta},
          {"z_radius", c.z_radius},
          {"w_radius", c.w_radius},
          {"m", c.m},
          {"min_decay", c.min_decay},
          {"stability_radius", c.stability_radius},
          {"stability_tol", c.stability_tol},
          {"min_tracking", c.min_tracking},
          {"composition_bound", c.composition_bound},
          {"free_tau1", c.free_tau1},
          {"free_tau2", c.free_tau2},
          {"flow_potential", potential_json(c.flow_potential)},
          {"flow_split", c.flow_split},
          {"flow_end", c.flow_end},
          {"flow_tol", c.flow_tol},
          {"jacobian_tol", c.jacobian_tol},
          {"semiclassical_grid", grid_json(c.semiclassical_grid)},
          {"semiclassical_hbars", c.semiclassical_hbars},
          {"semiclassical_spacing", c.semiclassical_spacing},
          {"semiclassical_z_radius", c.semiclassical_z_radius},
          {"semiclassical_w_radius", c.semiclassical_w_radius},
          {"semiclassical_tol", c.semiclassical_tol},
          {"transport_tol", c.transport_tol},
          {"modulation_ps", c.modulation_ps},
          {"modulation_radius", c.modulation_radius},
          {"modulation_spacings", c.modulation_spacings},
          {"modulation_tol", c.modulation_tol},
          {"scaling_grid", grid_json(c.scaling_grid)},
          {"scaling_hbars", c.scaling_hbars},
          {"scaling_ps", c.scaling_ps},
          {"scaling_radius", c.scaling_radius},
          {"scaling_tol", c.scaling_tol},
          {"inversion_tol", c.inversion_tol}};
}

json to_json(const SharpnessConfig& c) {
  return {{"name", c.name},
          {"grid", grid_json(c.grid)},
          {"translations", c.translations},
          {"translation_p", c.translation_p},
          {"translation_k", c.translation_k},
          {"dilations", c.dilations},
          {"dilation_p", c.dilation_p},
          {"dilation_k_offset", c.dilation_k_offset},
          {"tolerance", c.tolerance},
          {"unit_tol", c.unit_tol}};
}

json to_json(const SuiteConfig& c) {
  json j = {{"out_dir", c.out_dir}, {"seed", c.seed}};
  j["converge"] = json::array();
  for (const auto& e : c.converge) j["converge"].push_back(to_json(e));
  j["bounded"] = json::array();
  for (const auto& e : c.bounded) j["bounded"].push_back(to_json(e));
  j["residual"] = json::array();
  for (const auto& e : c.residual) j["residual"].push_back(to_json(e));
  j["gabor"] = json::array();
  for (const auto& e : c.gabor) j["gabor"].push_back(to_json(e));
  j["sharpness"] = json::array();
  for (const auto& e : c.sharpness) j["sharpness"].push_back(to_json(e));
  return j;
}

}  // namespace tslab
