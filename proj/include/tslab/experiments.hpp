#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tslab/config.hpp"
#include "tslab/fit.hpp"

namespace tslab {

struct GuardDiagnostic {
  std::string guard;
  std::string message;
  std::size_t required_n = 0;  ///< set for nyquist guards
};

/// A fitted exponent checked against a band. `refused` when too few valid
/// points were left for the fit.
struct SlopeCheck {
  std::string name;
  Band band;
  LineFit fit;
  bool refused = false;
  std::string note;
  bool pass = false;
};

/// A scalar compared with a threshold.
struct Check {
  std::string name;
  double value = 0.0;
  std::string requirement;
  bool pass = false;
};

nlohmann::json to_json(const SlopeCheck& s);
nlohmann::json to_json(const Check& c);

/// Norm pairs of the convergence and boundedness estimates with
/// k = k_exponent(p, d): for p <= 2 the source carries the Sobolev weight
/// (L^p vs L~^p_k), for p > 2 the target carries the negative one
/// (L~^p_{-k} vs L^p).
double source_norm(const WaveFunction& f, double p, int dim);
double target_norm(const WaveFunction& g, double p, int dim);

struct ConvergenceRow {
  int order = 0;
  double p = 2.0, hbar = 1.0;
  int slices = 1;
  double omega = 0.0;
  double error = 0.0;     ///< max over the family of target/source norms
  double l2_error = 0.0;  ///< max relative L2 error over the family
  double reference_accuracy = 0.0;
  std::string worst;  ///< family member attaining `error`
  bool valid = false;  ///< reference accuracy <= 1% of l2_error
};

struct ConvergenceReport {
  ExperimentConfig config;
  std::vector<ConvergenceRow> rows;
  std::vector<SlopeCheck> fits;
  bool exact_regime = false;
  std::optional<GuardDiagnostic> aborted;
  std::vector<std::string> reference_methods;
  bool pass = false;
  nlohmann::json to_json() const;
  /// order,p,hbar,L,omega,error,l2_error,reference_accuracy,valid,worst
  void write_csv(std::ostream& out) const;
};

ConvergenceReport run_convergence(const ExperimentConfig& config);

struct BoundednessRow {
  double tau = 0.0, hbar = 1.0, p = 2.0;
  double ratio = 0.0;
  double reference_accuracy = 0.0;
  std::string worst;
};

struct BoundednessReport {
  ExperimentConfig config;
  std::vector<BoundednessRow> rows;
  std::vector<Check> checks;
  std::optional<GuardDiagnostic> aborted;
  bool pass = false;
  nlohmann::json to_json() const;
  /// tau,hbar,p,ratio,reference_accuracy,worst
  void write_csv(std::ostream& out) const;
};

BoundednessReport run_boundedness(const ExperimentConfig& config);

struct DuhamelResult {
  int order = 0;
  double tau = 0.0, hbar = 1.0;
  int panels = 0;
  double difference_l2 = 0.0;  ///< ||E f - U f||
  double relative_error = 0.0;
};

/// E^(N)(t,s)f - U(t,s)f against -i/hbar times the composite Simpson rule
/// of U(t,r) G^(N)(r,s) f over r in [s, t] (G vanishes at r = s).
DuhamelResult duhamel_check(SliceEngine& engine, const WaveFunction& f, int order, double s, double t,
                            int panels, TimeStencil stencil = {});

struct ResidualReport {
  ExperimentConfig config;
  std::vector<ResidualRow> tau_rows, hbar_rows;
  std::vector<SlopeCheck> fits;
  std::optional<DuhamelResult> duhamel;
  std::vector<Check> checks;
  bool exact_regime = false;
  std::optional<GuardDiagnostic> aborted;
  bool pass = false;
  nlohmann::json to_json() const;
  /// tau,hbar,N,residual_l2 (both sweeps)
  void write_csv(std::ostream& out) const;
};

ResidualReport run_residual_scaling(const ExperimentConfig& config);

struct GaborReport {
  GaborConfig config;
  std::vector<Check> checks;
  std::vector<double> decay_bins, decay_max;
  double decay_exponent = 0.0;
  std::optional<GuardDiagnostic> aborted;
  bool pass = false;
  nlohmann::json to_json() const;
  /// check,value,requirement,pass
  void write_csv(std::ostream& out) const;
};

GaborReport run_gabor_report(const GaborConfig& config);

struct SharpnessRow {
  std::string family;
  double lambda = 1.0, p = 2.0, k = 0.0;
  double ratio = 0.0;
};

struct SharpnessReport {
  SharpnessConfig config;
  std::vector<SharpnessRow> rows;
  std::vector<SlopeCheck> fits;
  std::vector<Check> checks;
  std::optional<GuardDiagnostic> aborted;
  bool pass = false;
  nlohmann::json to_json() const;
  /// family,lambda,p,k,ratio
  void write_csv(std::ostream& out) const;
};

SharpnessReport run_sharpness_probe(const SharpnessConfig& config);

/// Runs `body`, turning a GuardError into a diagnostic.
std::optional<GuardDiagnostic> capture_guard(const std::function<void()>& body);

}  // namespace tslab
