#pragma once

#include <functional>
#include <string>

namespace tslab {

enum class PotentialKind { free, harmonic, harmonic_cos, pulsed_harmonic, custom };

/// Result of the Assumption-(A) spot check: sampled maxima of |V''| and
/// |V'''| against the declared bounds.
struct AssumptionReport {
  double max_second = 0.0;
  double max_third = 0.0;
  double bound_second = 0.0;
  double bound_third = 0.0;
  bool pass = false;
};

/// Scalar potential V(t, x) on the line with its first two x-derivatives.
///
/// Built-ins evaluate through a switch so the hot loops of the shooting
/// solver avoid an indirect call; custom models go through std::function.
class PotentialModel {
 public:
  using Fn = std::function<double(double, double)>;

  static PotentialModel free();
  static PotentialModel harmonic();
  /// V = x^2/2 + amplitude cos x.
  static PotentialModel harmonic_cos(double amplitude = 0.2);
  /// V = x^2/2 (1 + eps sin t).
  static PotentialModel pulsed_harmonic(double eps = 0.1);
  static PotentialModel custom(std::string label, Fn value, Fn grad, Fn hess, double bound_second,
                               double bound_third, bool time_independent);

  /// Looks up a built-in by label: free | harmonic | harmonic-cos | pulsed-harmonic.
  static PotentialModel from_label(const std::string& label, double parameter);

  double value(double t, double x) const;
  double grad(double t, double x) const;
  double hess(double t, double x) const;
  /// grad and hess in one evaluation.
  void grad_hess(double t, double x, double& g, double& h) const;
  /// value, grad and hess in one evaluation.
  void value_grad_hess(double t, double x, double& v, double& g, double& h) const;

  PotentialKind kind() const noexcept { return kind_; }
  const std::string& label() const noexcept { return label_; }
  double parameter() const noexcept { return parameter_; }
  bool time_independent() const noexcept { return time_independent_; }
  double bound(int order) const noexcept { return order == 2 ? bound2_ : bound3_; }

  /// Finite differences of grad_V on [-half_width, half_width] (points
  /// samples) at times {0, 0.5, 1}.
  AssumptionReport check_assumption_a(double half_width = 20.0, int points = 401) const;

 private:
  PotentialKind kind_ = PotentialKind::free;
  std::string label_ = "free";
  double parameter_ = 0.0;
  bool time_independent_ = true;
  double bound2_ = 0.0;
  double bound3_ = 0.0;
  Fn value_, grad_, hess_;
};

}  // namespace tslab
