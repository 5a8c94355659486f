#include "tslab/test_family.hpp"

#include <cmath>

#include "tslab/errors.hpp"
#include "tslab/norms.hpp"

namespace tslab {
namespace {

WaveFunction normalised(WaveFunction f) {
  const double norm = lp_norm(f, 2.0);
  return f * cplx(1.0 / norm, 0.0);
}

}  // namespace

double hermite_function(int k, double x) {
  if (k < 0) throw InvalidArgument("hermite_function: negative order");
  double prev = 0.0;
  double cur = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
  for (int m = 0; m < k; ++m) {
    const double next = std::sqrt(2.0 / (m + 1.0)) * x * cur - std::sqrt(m / (m + 1.0)) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

TestFunction gaussian_packet(const GridSpec& grid, double x0, double xi0, double hbar) {
  auto f = WaveFunction::sample(
      grid, [=](double x) { return std::polar(std::exp(-0.5 * (x - x0) * (x - x0)), xi0 * x); }, hbar);
  std::string label = "gauss(x0=" + std::to_string(static_cast<int>(x0)) + ",xi0=" + std::to_string(static_cast<int>(xi0)) + ")";
  return {label, normalised(std::move(f))};
}

std::vector<TestFunction> standard_family(const GridSpec& grid, double hbar) {
  std::vector<TestFunction> fam;
  for (int k = 0; k < 8; ++k)
    fam.push_back({"h" + std::to_string(k),
                   normalised(WaveFunction::sample(grid, [k](double x) { return cplx(hermite_function(k, x), 0.0); }, hbar))});
  for (double x0 : {-2.0, 2.0}) fam.push_back(gaussian_packet(grid, x0, 0.0, hbar));
  for (double xi0 : {-2.0, 2.0}) fam.push_back(gaussian_packet(grid, 0.0, xi0, hbar));
  return fam;
}

std::vector<TestFunction> family_by_name(const std::string& name, const GridSpec& grid, double hbar) {
  if (name == "standard") return standard_family(grid, hbar);
  if (name == "gaussian") return {gaussian_packet(grid, 2.0, 0.0, hbar)};
  throw InvalidArgument("unknown test family '" + name + "' (standard | gaussian)");
}

}  // namespace tslab
