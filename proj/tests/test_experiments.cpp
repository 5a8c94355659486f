#include <cmath>
#include <sstream>

#include "doctest.h"
#include "tslab/config.hpp"
#include "tslab/errors.hpp"
#include "tslab/experiments.hpp"
#include "tslab/norms.hpp"
#include "tslab/test_family.hpp"

using namespace tslab;

namespace {

template <class Report>
std::string csv(const Report& r) {
  std::ostringstream out;
  r.write_csv(out);
  return out.str();
}

}  // namespace

TEST_CASE("test family") {
  const GridSpec grid = GridSpec::make(20.0, 1024);
  const auto family = standard_family(grid);
  CHECK(family.size() == 12);
  for (const auto& tf : family) CHECK(std::abs(lp_norm(tf.f, 2.0) - 1.0) < 1e-12);
  // Hermite functions are orthonormal
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      const cplx ip = inner_product(family[a].f, family[b].f);
      CHECK(std::abs(ip - (a == b ? 1.0 : 0.0)) < 1e-10);
    }
  CHECK(std::abs(hermite_function(0, 0.0) - std::pow(kPi, -0.25)) < 1e-15);
  CHECK(family_by_name("gaussian", grid).size() == 1);
  CHECK_THROWS_AS(family_by_name("random", grid), InvalidArgument);
}

TEST_CASE("Sobolev source and target norms") {
  const GridSpec grid = GridSpec::make(20.0, 1024);
  const WaveFunction f = gaussian_packet(grid, 1.0, 1.0).f;
  CHECK(source_norm(f, 2.0, 1) == doctest::Approx(1.0));
  CHECK(source_norm(f, 1.5, 1) == doctest::Approx(sobolev_norm(f, 1.5, k_exponent(1.5, 1), 1.0)));
  CHECK(target_norm(f, 1.5, 1) == doctest::Approx(lp_norm(f, 1.5)));
  CHECK(source_norm(f, 4.0, 1) == doctest::Approx(lp_norm(f, 4.0)));
  CHECK(target_norm(f, 4.0, 1) == doctest::Approx(sobolev_norm(f, 4.0, -0.5, 1.0)));
}

TEST_CASE("suite configuration") {
  const SuiteConfig def = default_suite();
  CHECK(def.converge.size() == 4);
  CHECK(def.bounded.size() == 2);
  CHECK(def.residual.size() == 3);
  CHECK(def.gabor.size() == 1);
  CHECK(def.sharpness.size() == 1);
  CHECK(to_json(suite_from_json(to_json(def))) == to_json(def));

  const nlohmann::json partial = nlohmann::json::parse(R"({
    "out_dir": "elsewhere",
    "converge": [{"name": "converge-free", "slices": [1, 2]},
                 {"name": "mine", "potential": {"label": "harmonic-cos"}, "grid": {"half_width": 8, "n": 256}}]
  })");
  const SuiteConfig s = suite_from_json(partial);
  CHECK(s.out_dir == "elsewhere");
  REQUIRE(s.converge.size() == 2);
  CHECK(s.converge[0].slices == std::vector<int>{1, 2});
  CHECK(s.converge[0].potential.label == "free");
  CHECK(s.converge[1].potential.parameter == 0.2);
  CHECK(s.converge[1].grid.n == 256);
  CHECK(s.bounded.size() == def.bounded.size());

  CHECK_THROWS(suite_from_json(nlohmann::json::parse(R"({"converge": [{"name": "x", "slicez": [1]}]})")));
  CHECK_THROWS(suite_from_json(nlohmann::json::parse(R"({"bogus": 1})")));
  CHECK_THROWS(suite_from_json(nlohmann::json::parse(R"({"converge": [{"name": "x", "grid": {"half_width": 8, "n": 100}}]})")));
}

TEST_CASE("guard capture") {
  const auto g = capture_guard([] { throw ResolutionError("too fast", 4096); });
  REQUIRE(g);
  CHECK(g->guard == "nyquist");
  CHECK(g->required_n == 4096);
  CHECK_FALSE(capture_guard([] {}));
  CHECK_THROWS_AS(capture_guard([] { throw InvalidArgument("not a guard"); }), InvalidArgument);
}

TEST_CASE("small convergence and boundedness runs") {
  ExperimentConfig c;
  c.name = "tiny-free";
  c.potential = {"free", 0.0};
  c.grid = GridSpec::make(20.0, 512);
  c.orders = {0};
  c.slices = {1, 2, 4};
  const ConvergenceReport r = run_convergence(c);
  CHECK(r.exact_regime);
  CHECK(r.pass);
  CHECK(csv(r) == csv(run_convergence(c)));
  CHECK(r.to_json()["config"]["name"] == "tiny-free");

  ExperimentConfig b;
  b.name = "tiny-bounded";
  b.potential = {"harmonic", 0.0};
  b.grid = GridSpec::make(10.0, 512);
  b.taus = {0.3};
  b.ps = {1.5, 2.0};
  b.hbars = {1.0, 0.5};
  const BoundednessReport br = run_boundedness(b);
  CHECK(br.pass);
  CHECK(br.rows.size() == 4);
  for (const auto& row : br.rows)
    if (row.p == 2.0) CHECK(std::abs(row.ratio - 1.0) < 1e-6);
}

TEST_CASE("guard aborts are reported, not thrown") {
  ExperimentConfig c;
  c.name = "too-coarse";
  c.potential = {"harmonic", 0.0};
  c.grid = GridSpec::make(10.0, 64);
  c.hbars = {1.0 / 64};
  c.slices = {2};
  const ConvergenceReport r = run_convergence(c);
  REQUIRE(r.aborted);
  CHECK_FALSE(r.pass);
  CHECK(r.to_json()["guard"]["guard"].is_string());
}

TEST_CASE("sharpness probe") {
  const SharpnessReport r = run_sharpness_probe(SharpnessConfig{});
  CHECK(r.pass);
  CHECK(r.fits.size() == 2);
  CHECK(csv(r).rfind("family,lambda,p,k,ratio\n", 0) == 0);
}
