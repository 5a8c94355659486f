#pragma once

#include <functional>
#include <string>
#include <vector>

#include "tslab/flow.hpp"

namespace tslab {

/// Phase-space map z -> chi(z) used to score Gabor matrices.
class CanonicalMap {
 public:
  using Eval = std::function<FlowPoint(FlowPoint)>;
  CanonicalMap(Eval eval, std::string label, bool rescaled = false);

  static CanonicalMap identity();
  /// free flow over tau: (x + tau xi, xi)
  static CanonicalMap shear(double tau);
  /// V = x^2/2 flow over tau: clockwise rotation by tau
  static CanonicalMap rotation(double tau);
  /// chi(t, s) of the potential by RK4.
  static CanonicalMap flow(const PotentialModel& pot, double s, double t, int nsteps = kDefaultFlowSteps);

  FlowPoint operator()(FlowPoint z) const { return eval_(z); }
  const std::string& label() const noexcept { return label_; }
  bool rescaled() const noexcept { return rescaled_; }

 private:
  Eval eval_;
  std::string label_;
  bool rescaled_ = false;
};

/// (a o b)(z) = a(b(z)).
CanonicalMap compose(const CanonicalMap& a, const CanonicalMap& b);

/// chi^hbar(z) = hbar^{-1/2} chi(hbar^{1/2} z).
CanonicalMap rescaled_flow(const CanonicalMap& chi, double hbar);

/// max |det D chi - 1| over the points, Jacobian by centered differences
/// with step h.
double jacobian_defect(const CanonicalMap& chi, const std::vector<FlowPoint>& points, double h = 1e-4);

/// 5 x 5 sample points on [-R, R]^2.
std::vector<FlowPoint> jacobian_sample_points(double radius);

}  // namespace tslab
