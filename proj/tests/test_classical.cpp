#include <cmath>

#include "doctest.h"
#include "tslab/errors.hpp"
#include "tslab/flow.hpp"
#include "tslab/generating_table.hpp"
#include "tslab/potential.hpp"

using namespace tslab;

namespace {

const PotentialModel kFree = PotentialModel::free();
const PotentialModel kHarm = PotentialModel::harmonic();
const PotentialModel kCos = PotentialModel::harmonic_cos(0.2);
const PotentialModel kPulsed = PotentialModel::pulsed_harmonic(0.1);

// closed-form oscillator action
double harmonic_action(double tau, double x, double y) {
  return ((x * x + y * y) * std::cos(tau) - 2 * x * y) / (2 * std::sin(tau));
}

Axis axis(double a, double b, std::size_t n) { return Axis{a, (b - a) / static_cast<double>(n - 1), n}; }

}  // namespace

TEST_CASE("potentials satisfy their declared bounds") {
  for (const auto& p : {kFree, kHarm, kCos, kPulsed}) CHECK(p.check_assumption_a().pass);
  CHECK(kCos.value(0.0, 1.0) == doctest::Approx(0.5 + 0.2 * std::cos(1.0)));
  CHECK(kPulsed.hess(kPi / 2, 3.0) == doctest::Approx(1.1));
  CHECK(PotentialModel::from_label("harmonic-cos", 0.3).value(0, 0) == doctest::Approx(0.3));
  CHECK_THROWS_AS(PotentialModel::from_label("quartic", 0.0), InvalidArgument);
}

TEST_CASE("Hamiltonian flow") {
  FlowPoint p = hamiltonian_flow(kFree, 0.0, 2.0, {0.0, 1.0});
  CHECK(p.x == doctest::Approx(2.0));
  CHECK(p.xi == doctest::Approx(1.0));
  p = hamiltonian_flow(kHarm, 0.0, kPi / 2, {1.0, 0.0});
  CHECK(std::abs(p.x) < 1e-8);
  CHECK(std::abs(p.xi + 1.0) < 1e-8);
  for (const auto& pot : {kHarm, kCos, kPulsed}) {
    const FlowPoint start{0.7, -1.2};
    const FlowPoint back = hamiltonian_flow(pot, 1.3, 0.2, hamiltonian_flow(pot, 0.2, 1.3, start));
    CHECK(std::abs(back.x - start.x) < 1e-8);
    CHECK(std::abs(back.xi - start.xi) < 1e-8);
  }
}

TEST_CASE("flow Jacobian") {
  const double tau = 0.9;
  Jacobian2 j = flow_jacobian(kFree, 0.0, tau, {0.3, 0.4});
  CHECK(j[0][0] == doctest::Approx(1.0));
  CHECK(j[0][1] == doctest::Approx(tau));
  CHECK(j[1][0] == doctest::Approx(0.0));
  CHECK(j[1][1] == doctest::Approx(1.0));
  j = flow_jacobian(kHarm, 0.0, tau, {0.3, 0.4});
  CHECK(std::abs(j[0][0] - std::cos(tau)) < 1e-9);
  CHECK(std::abs(j[0][1] - std::sin(tau)) < 1e-9);
  CHECK(std::abs(j[1][0] + std::sin(tau)) < 1e-9);
  CHECK(std::abs(j[1][1] - std::cos(tau)) < 1e-9);
  // symplecticity for every built-in and tau <= 2
  for (const auto& pot : {kFree, kHarm, kCos, kPulsed})
    for (double t : {0.3, 0.7, 2.0})
      for (double y : {-2.0, 0.5}) {
        const Jacobian2 m = flow_jacobian(pot, 0.1, 0.1 + t, {y, 1.1});
        CHECK(std::abs(m[0][0] * m[1][1] - m[0][1] * m[1][0] - 1.0) < 1e-8);
      }
}

TEST_CASE("energy conservation and flow composition") {
  for (const auto& pot : {kHarm, kCos}) {
    const FlowPoint z{1.4, -0.6};
    const FlowPoint w = hamiltonian_flow(pot, 0.0, 2.0, z);
    CHECK(std::abs(energy(pot, 2.0, w) - energy(pot, 0.0, z)) < 1e-8);
  }
  double dev = 0.0;
  for (int a = -2; a <= 2; ++a)
    for (int b = -2; b <= 2; ++b) {
      const FlowPoint z{1.0 * a, 1.0 * b};
      const FlowPoint one = hamiltonian_flow(kPulsed, 0.0, 1.0, z);
      const FlowPoint two = hamiltonian_flow(kPulsed, 0.4, 1.0, hamiltonian_flow(kPulsed, 0.0, 0.4, z));
      dev = std::max({dev, std::abs(one.x - two.x), std::abs(one.xi - two.xi)});
    }
  CHECK(dev < 1e-7);
}

TEST_CASE("blow-up is reported with the offending time") {
  const PotentialModel repulsive = PotentialModel::custom(
      "quartic-repulsive", [](double, double x) { return -x * x * x * x; },
      [](double, double x) { return -4 * x * x * x; }, [](double, double x) { return -12 * x * x; }, 0, 0, true);
  CHECK_THROWS_AS(hamiltonian_flow(repulsive, 0.0, 10.0, {5.0, 5.0}, 100), FlowError);
}

TEST_CASE("boundary-value problem") {
  Trajectory tr = classical_bvp(kFree, 0.0, 1.0, 0.0, 2.0);
  CHECK(tr.eta == doctest::Approx(2.0));
  tr = classical_bvp(kHarm, 0.0, kPi / 2, 1.0, 0.0);
  CHECK(std::abs(tr.eta) < 1e-8);
  CHECK(std::abs(tr.positions.front() - 1.0) < 1e-12);
  CHECK(std::abs(tr.positions.back()) < 1e-10);
  CHECK_THROWS_AS(classical_bvp(kHarm, 0.0, kPi, 1.0, 0.5), CausticError);
}

TEST_CASE("action along the path") {
  CHECK(action_integral(kFree, classical_bvp(kFree, 0.0, 1.0, 0.0, 1.0)) == doctest::Approx(0.5).epsilon(1e-12));
  for (double tau : {0.3, 1.5, 3.0}) CHECK(std::abs(action_integral(kHarm, classical_bvp(kHarm, 0.0, tau, 0.0, 0.0))) < 1e-8);
  CHECK(std::abs(action_integral(kHarm, classical_bvp(kHarm, 0.0, kPi / 4, 0.0, 1.0)) - 0.5) < 1e-6);
  // closed form at scattered points
  for (auto [tau, x, y] : {std::tuple{0.4, 1.3, -0.7}, std::tuple{1.1, -2.0, 0.5}, std::tuple{2.5, 0.2, 1.9}})
    CHECK(std::abs(action_integral(kHarm, classical_bvp(kHarm, 0.0, tau, y, x)) - harmonic_action(tau, x, y)) < 1e-6);
}

TEST_CASE("generating table: free and harmonic") {
  const Axis ax = axis(-2.0, 2.0, 21);
  const GeneratingTable free = generating_table(kFree, 0.0, 0.5, ax, ax);
  double worst = 0.0;
  for (std::size_t i = 0; i < ax.count; ++i)
    for (std::size_t j = 0; j < ax.count; ++j) {
      const double d = ax.at(i) - ax.at(j);
      worst = std::max(worst, std::abs(free.S(i, j) - d * d / 1.0));
      if (i > 0 && i + 1 < ax.count && j > 0 && j + 1 < ax.count)
        worst = std::max(worst, std::abs(free.Sy(i, j) + d / 0.5));
    }
  CHECK(worst < 1e-10);

  const Axis hx = axis(0.0, 2.0, 9), hy = axis(-1.0, 1.0, 9);
  const GeneratingTable harm = generating_table(kHarm, 0.0, kPi / 4, hx, hy);
  // x = 1 is hx index 4, y = 0 is hy index 4
  CHECK(std::abs(harm.S(4, 4) - 0.5) < 1e-6);
  double err = 0.0;
  for (std::size_t i = 0; i < hx.count; ++i)
    for (std::size_t j = 0; j < hy.count; ++j) err = std::max(err, std::abs(harm.S(i, j) - harmonic_action(kPi / 4, hx.at(i), hy.at(j))));
  CHECK(err < 1e-8);
}

TEST_CASE("generating identities and Hamilton-Jacobi residual") {
  const Axis ax = axis(-2.0, 2.0, 81);
  for (const auto& pot : {kHarm, kCos, kPulsed}) {
    const GeneratingTable t = generating_table(pot, 0.2, 0.9, ax, ax);
    const GeneratingIdentities id = generating_identities(t);
    CHECK(id.max_dx_error < 5e-5);
    CHECK(id.max_dy_error < 5e-5);
    CHECK(id.max_symmetry_error < 1e-6);
    CHECK(hamilton_jacobi_residual(pot, t) < 1e-5);
  }
}

TEST_CASE("tameness diagnostics") {
  const Axis ax = axis(-2.0, 2.0, 21);
  TamenessReport r = tameness_report(generating_table(kFree, 0.0, 0.7, ax, ax));
  CHECK(r.min_det_yy == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.pass);
  r = tameness_report(generating_table(kHarm, 0.0, kPi / 4, ax, ax));
  CHECK(r.min_det_yy == doctest::Approx(kPi / 4).epsilon(1e-4));
  CHECK(r.pass);
  r = tameness_report(generating_table(kCos, 0.0, kPi / 4, ax, ax));
  CHECK(r.pass);
  // close to the focal time Syy = cot tau degenerates
  r = tameness_report(generating_table(kHarm, 0.0, 0.49 * kPi, ax, ax));
  CHECK(r.min_det_yy < 0.1);
  CHECK_FALSE(r.pass);
  CHECK_THROWS_AS(generating_table(kHarm, 0.0, kPi, ax, ax), CausticError);
}
