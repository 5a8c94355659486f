#include "tslab/potential.hpp"

#include <cmath>

#include "tslab/errors.hpp"

namespace tslab {

PotentialModel PotentialModel::free() { return PotentialModel{}; }

PotentialModel PotentialModel::harmonic() {
  PotentialModel p;
  p.kind_ = PotentialKind::harmonic;
  p.label_ = "harmonic";
  p.bound2_ = 1.0;
  p.bound3_ = 0.0;
  return p;
}

PotentialModel PotentialModel::harmonic_cos(double amplitude) {
  PotentialModel p;
  p.kind_ = PotentialKind::harmonic_cos;
  p.label_ = "harmonic-cos";
  p.parameter_ = amplitude;
  p.bound2_ = 1.0 + std::abs(amplitude);
  p.bound3_ = std::abs(amplitude);
  return p;
}

PotentialModel PotentialModel::pulsed_harmonic(double eps) {
  PotentialModel p;
  p.kind_ = PotentialKind::pulsed_harmonic;
  p.label_ = "pulsed-harmonic";
  p.parameter_ = eps;
  p.time_independent_ = false;
  p.bound2_ = 1.0 + std::abs(eps);
  p.bound3_ = 0.0;
  return p;
}

PotentialModel PotentialModel::custom(std::string label, Fn value, Fn grad, Fn hess,
                                      double bound_second, double bound_third,
                                      bool time_independent) {
  if (!value || !grad || !hess) throw InvalidArgument("PotentialModel::custom: missing evaluator");
  PotentialModel p;
  p.kind_ = PotentialKind::custom;
  p.label_ = std::move(label);
  p.time_independent_ = time_independent;
  p.bound2_ = bound_second;
  p.bound3_ = bound_third;
  p.value_ = std::move(value);
  p.grad_ = std::move(grad);
  p.hess_ = std::move(hess);
  return p;
}

PotentialModel PotentialModel::from_label(const std::string& label, double parameter) {
  if (label == "free") return free();
  if (label == "harmonic") return harmonic();
  if (label == "harmonic-cos") return harmonic_cos(parameter);
  if (label == "pulsed-harmonic") return pulsed_harmonic(parameter);
  throw InvalidArgument("unknown potential label '" + label + "'");
}

double PotentialModel::value(double t, double x) const {
  switch (kind_) {
    case PotentialKind::free: return 0.0;
    case PotentialKind::harmonic: return 0.5 * x * x;
    case PotentialKind::harmonic_cos: return 0.5 * x * x + parameter_ * std::cos(x);
    case PotentialKind::pulsed_harmonic: return 0.5 * x * x * (1.0 + parameter_ * std::sin(t));
    case PotentialKind::custom: return value_(t, x);
  }
  return 0.0;
}

double PotentialModel::grad(double t, double x) const {
  switch (kind_) {
    case PotentialKind::free: return 0.0;
    case PotentialKind::harmonic: return x;
    case PotentialKind::harmonic_cos: return x - parameter_ * std::sin(x);
    case PotentialKind::pulsed_harmonic: return x * (1.0 + parameter_ * std::sin(t));
    case PotentialKind::custom: return grad_(t, x);
  }
  return 0.0;
}

double PotentialModel::hess(double t, double x) const {
  switch (kind_) {
    case PotentialKind::free: return 0.0;
    case PotentialKind::harmonic: return 1.0;
    case PotentialKind::harmonic_cos: return 1.0 - parameter_ * std::cos(x);
    case PotentialKind::pulsed_harmonic: return 1.0 + parameter_ * std::sin(t);
    case PotentialKind::custom: return hess_(t, x);
  }
  return 0.0;
}

void PotentialModel::grad_hess(double t, double x, double& g, double& h) const {
  switch (kind_) {
    case PotentialKind::free:
      g = 0.0;
      h = 0.0;
      return;
    case PotentialKind::harmonic:
      g = x;
      h = 1.0;
      return;
    case PotentialKind::harmonic_cos: {
      const double s = std::sin(x);
      const double c = std::cos(x);
      g = x - parameter_ * s;
      h = 1.0 - parameter_ * c;
      return;
    }
    case PotentialKind::pulsed_harmonic: {
      const double f = 1.0 + parameter_ * std::sin(t);
      g = x * f;
      h = f;
      return;
    }
    case PotentialKind::custom:
      g = grad_(t, x);
      h = hess_(t, x);
      return;
  }
}

void PotentialModel::value_grad_hess(double t, double x, double& v, double& g, double& h) const {
  switch (kind_) {
    case PotentialKind::harmonic_cos: {
      const double s = std::sin(x);
      const double c = std::cos(x);
      v = 0.5 * x * x + parameter_ * c;
      g = x - parameter_ * s;
      h = 1.0 - parameter_ * c;
      return;
    }
    default:
      v = value(t, x);
      grad_hess(t, x, g, h);
  }
}

AssumptionReport PotentialModel::check_assumption_a(double half_width, int points) const {
  AssumptionReport r;
  r.bound_second = bound2_;
  r.bound_third = bound3_;
  const double h = 2.0 * half_width / (points - 1);
  const double fd = 1e-3;
  for (double t : {0.0, 0.5, 1.0}) {
    for (int i = 0; i < points; ++i) {
      const double x = -half_width + i * h;
      const double gp = grad(t, x + fd), g0 = grad(t, x), gm = grad(t, x - fd);
      r.max_second = std::max(r.max_second, std::abs((gp - gm) / (2.0 * fd)));
      r.max_third = std::max(r.max_third, std::abs((gp - 2.0 * g0 + gm) / (fd * fd)));
    }
  }
  // finite-difference slack
  r.pass = r.max_second <= bound2_ * (1.0 + 1e-6) + 1e-6 && r.max_third <= bound3_ * (1.0 + 1e-3) + 1e-3;
  return r;
}

}  // namespace tslab
