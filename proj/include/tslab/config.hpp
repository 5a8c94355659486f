#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "tslab/grid.hpp"
#include "tslab/potential.hpp"
#include "tslab/slicing.hpp"

namespace tslab {

struct Band {
  double lo = 0.0, hi = 0.0;
  bool contains(double v) const noexcept { return v >= lo && v <= hi; }
};

struct PotentialSpec {
  std::string label = "harmonic";
  double parameter = 0.0;  ///< cos amplitude or pulse depth; defaulted per label
  PotentialModel model() const { return PotentialModel::from_label(label, parameter); }
};

/// One sweep of the converge, bounded or residual subcommands.
///
/// converge: every (hbar, L) pair of hbars x slices; the error is fitted
///   against omega along slices (per hbar) and against hbar (per L) when
///   the axis has at least min_fit_points values.
/// bounded:  every (tau, hbar, p) of taus x hbars x ps.
/// residual: tau sweep at hbars[0], hbar sweep at fixed_tau, per order.
struct ExperimentConfig {
  std::string name;
  PotentialSpec potential;
  int dim = 1;
  GridSpec grid;
  std::vector<double> hbars{1.0};
  std::vector<double> ps{2.0};
  std::vector<int> orders{0};
  double s = 0.0, t = 1.0;
  std::vector<int> slices{2, 4, 8, 16, 32};
  std::string family = "standard";
  std::uint64_t seed = 0;

  std::vector<double> taus;
  double fixed_tau = 0.2;
  double reference_tol = 1e-9;
  std::size_t min_fit_points = 4;
  TimeStencil stencil;
  /// indexed by order N
  std::vector<Band> mesh_bands{{0.7, 1.3}, {1.6, 2.4}};
  std::vector<Band> hbar_bands{{-0.3, 0.3}, {0.7, 1.3}};
  /// residual tau and hbar exponents
  std::vector<Band> residual_bands{{0.7, 1.3}, {1.7, 2.3}};
  /// bounded: ratio(hbar) <= factor * ratio(hbar = 1); p = 2 ratios within unit_tol of 1
  double bounded_factor = 3.0;
  double unit_tol = 1e-6;
  /// residual: Duhamel check configuration (order, tau, hbar); skipped if duhamel_tau <= 0
  int duhamel_order = 0;
  double duhamel_tau = 0.4;
  double duhamel_hbar = 1.0;
  int duhamel_panels = 8;
  double duhamel_tol = 5e-3;
  /// free potential: every error/residual must stay below this
  double exact_tol = 1e-6;
};

struct GaborConfig {
  std::string name = "gabor";
  GridSpec grid = GridSpec::make(24.0, 1024);
  double tau = kPi / 8.0;
  double alpha = 0.5, beta = 0.5;
  double z_radius = 8.0, w_radius = 12.0;
  double m = 4.0;
  double min_decay = 4.0;
  double stability_radius = 6.0, stability_tol = 0.10;
  double min_tracking = 0.95;
  double composition_bound = 50.0;
  double free_tau1 = 0.5, free_tau2 = 0.25;
  PotentialSpec flow_potential{"harmonic-cos", 0.2};
  double flow_split = 0.5, flow_end = 1.0, flow_tol = 1e-7;
  double jacobian_tol = 1e-6;
  GridSpec semiclassical_grid = GridSpec::make(16.0, 2048);
  std::vector<double> semiclassical_hbars{1.0, 0.25, 0.0625};
  double semiclassical_spacing = 1.0, semiclassical_z_radius = 6.0, semiclassical_w_radius = 8.0;
  double semiclassical_tol = 0.5, transport_tol = 0.01;
  std::vector<double> modulation_ps{1.5, 2.0, 4.0};
  double modulation_radius = 12.0;
  std::vector<double> modulation_spacings{0.5, 0.25};
  double modulation_tol = 0.10;
  GridSpec scaling_grid = GridSpec::make(40.0, 2048);
  std::vector<double> scaling_hbars{1.0, 0.25, 0.0625};
  std::vector<double> scaling_ps{1.0, 1.5, 2.0, 4.0};
  double scaling_radius = 30.0, scaling_tol = 0.2;
  double inversion_tol = 1e-6;
};

struct SharpnessConfig {
  std::string name = "sharpness";
  GridSpec grid = GridSpec::make(64.0, 4096);
  std::vector<double> translations{4, 8, 16, 32};
  double translation_p = 1.5, translation_k = 0.5;
  std::vector<double> dilations{1, 2, 4, 8};
  double dilation_p = 4.0;
  double dilation_k_offset = 0.5;  ///< k2 = -k_p + offset
  double tolerance = 0.3;
  double unit_tol = 0.02;  ///< p = 2, k2 = 0 ratio spread
};

struct SuiteConfig {
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  std::vector<ExperimentConfig> converge, bounded, residual;
  std::vector<GaborConfig> gabor;
  std::vector<SharpnessConfig> sharpness;
};

/// Acceptance setups for every subcommand.
SuiteConfig default_suite();

/// Sections present in the JSON replace the defaults; keys missing inside
/// an entry keep the defaults of ExperimentConfig / GaborConfig /
/// SharpnessConfig. Unknown keys are rejected.
SuiteConfig suite_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SuiteConfig& c);
nlohmann::json to_json(const ExperimentConfig& c);
nlohmann::json to_json(const GaborConfig& c);
nlohmann::json to_json(const SharpnessConfig& c);

}  // namespace tslab
