#include "tslab/canonical_map.hpp"

#include <algorithm>
#include <cmath>

#include "tslab/errors.hpp"
#include "tslab/strings.hpp"

namespace tslab {

CanonicalMap::CanonicalMap(Eval eval, std::string label, bool rescaled)
    : eval_(std::move(eval)), label_(std::move(label)), rescaled_(rescaled) {
  if (!eval_) throw InvalidArgument("CanonicalMap: empty evaluator");
}

CanonicalMap CanonicalMap::identity() {
  return CanonicalMap([](FlowPoint z) { return z; }, "identity");
}

CanonicalMap CanonicalMap::shear(double tau) {
  return CanonicalMap([tau](FlowPoint z) { return FlowPoint{z.x + tau * z.xi, z.xi}; }, "shear(" + num(tau) + ")");
}

CanonicalMap CanonicalMap::rotation(double tau) {
  const double c = std::cos(tau), s = std::sin(tau);
  return CanonicalMap([c, s](FlowPoint z) { return FlowPoint{c * z.x + s * z.xi, -s * z.x + c * z.xi}; },
                      "rotation(" + num(tau) + ")");
}

CanonicalMap CanonicalMap::flow(const PotentialModel& pot, double s, double t, int nsteps) {
  return CanonicalMap([pot, s, t, nsteps](FlowPoint z) { return hamiltonian_flow(pot, s, t, z, nsteps); },
                      "flow[" + pot.label() + "](" + num(s) + ", " + num(t) + ")");
}

CanonicalMap compose(const CanonicalMap& a, const CanonicalMap& b) {
  return CanonicalMap([a, b](FlowPoint z) { return a(b(z)); }, a.label() + " o " + b.label(),
                      a.rescaled() || b.rescaled());
}

CanonicalMap rescaled_flow(const CanonicalMap& chi, double hbar) {
  if (!(hbar > 0.0 && hbar <= 1.0)) throw InvalidArgument("rescaled_flow: hbar must lie in (0, 1]");
  if (hbar == 1.0) return chi;
  const double r = std::sqrt(hbar);
  return CanonicalMap(
      [chi, r](FlowPoint z) {
        const FlowPoint w = chi(FlowPoint{r * z.x, r * z.xi});
        return FlowPoint{w.x / r, w.xi / r};
      },
      chi.label() + "^hbar=" + num(hbar), true);
}

double jacobian_defect(const CanonicalMap& chi, const std::vector<FlowPoint>& points, double h) {
  double worst = 0.0;
  for (const FlowPoint& z : points) {
    const FlowPoint xp = chi({z.x + h, z.xi}), xm = chi({z.x - h, z.xi});
    const FlowPoint kp = chi({z.x, z.xi + h}), km = chi({z.x, z.xi - h});
    const double a = (xp.x - xm.x) / (2 * h), b = (kp.x - km.x) / (2 * h);
    const double c = (xp.xi - xm.xi) / (2 * h), d = (kp.xi - km.xi) / (2 * h);
    worst = std::max(worst, std::abs(a * d - b * c - 1.0));
  }
  return worst;
}

std::vector<FlowPoint> jacobian_sample_points(double radius) {
  std::vector<FlowPoint> pts;
  for (int i = -2; i <= 2; ++i)
    for (int k = -2; k <= 2; ++k) pts.push_back({0.5 * radius * i, 0.5 * radius * k});
  return pts;
}

}  // namespace tslab
