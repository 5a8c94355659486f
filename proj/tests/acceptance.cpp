// Acceptance criteria 1-12. One PASS/FAIL line per criterion, followed by
// its individual checks. Exit status is nonzero on any unexpected failure
// (every failure with --strict).
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "tslab/config.hpp"
#include "tslab/errors.hpp"
#include "tslab/experiments.hpp"
#include "tslab/fourier.hpp"
#include "tslab/generating_table.hpp"
#include "tslab/norms.hpp"
#include "tslab/parallel.hpp"
#include "tslab/reference.hpp"
#include "tslab/slicing.hpp"
#include "tslab/strings.hpp"
#include "tslab/test_family.hpp"

using namespace tslab;

namespace {

struct Item {
  std::string name;
  bool pass = false;
  std::string detail;
  std::string known;  ///< reason this failure is expected, empty otherwise
};

struct Criterion {
  int id;
  std::string title;
  std::vector<Item> items;
  std::string aborted;
  double seconds = 0.0;
  bool pass() const {
    if (!aborted.empty() || items.empty()) return false;
    for (const auto& i : items)
      if (!i.pass) return false;
    return true;
  }
  bool unexpected() const {
    if (!aborted.empty() || items.empty()) return true;
    for (const auto& i : items)
      if (!i.pass && i.known.empty()) return true;
    return false;
  }
};

Item below(std::string name, double value, double limit) {
  return {std::move(name), value < limit, num(value) + " < " + num(limit), ""};
}

Item from_slope(const SlopeCheck& s) {
  std::string d = "slope " + num(s.fit.slope) + " in [" + num(s.band.lo) + ", " + num(s.band.hi) + "]";
  if (s.refused) d = "refused";
  if (!s.note.empty()) d += " (" + s.note + ")";
  return {s.name, s.pass, d, ""};
}

Item from_check(const Check& c) { return {c.name, c.pass, num(c.value) + " " + c.requirement, ""}; }

std::string guard_text(const std::optional<GuardDiagnostic>& g) {
  return g ? g->guard + ": " + g->message : "";
}

const char* kHarmonicExact =
    "E^(1) is exact for the quadratic potential (criterion 2); errors sit at the rounding floor";

ExperimentConfig find(const std::vector<ExperimentConfig>& list, const std::string& name) {
  for (const auto& c : list)
    if (c.name == name) return c;
  throw InvalidArgument("no default run named " + name);
}

// Results shared between criteria.
struct Cache {
  SuiteConfig suite = default_suite();
  std::optional<ConvergenceReport> mesh_harmonic, mesh_cos;
  std::optional<GaborReport> gabor;
  const ConvergenceReport& mesh(bool harmonic) {
    auto& slot = harmonic ? mesh_harmonic : mesh_cos;
    if (!slot)
      slot = run_convergence(find(suite.converge, harmonic ? "converge-mesh-harmonic" : "converge-mesh-harmonic-cos"));
    return *slot;
  }
  const GaborReport& gabor_report() {
    if (!gabor) gabor = run_gabor_report(suite.gabor.front());
    return *gabor;
  }
};

WaveFunction packet(const GridSpec& g, double x0, double xi0) { return gaussian_packet(g, x0, xi0).f; }

void criterion1(Criterion& c, Cache&) {
  const GridSpec grid = GridSpec::make(20.0, 1024);
  SliceEngine engine(PotentialModel::free(), grid);
  const WaveFunction f = packet(grid, 1.0, 0.5);
  for (double tau : {0.25, 0.5, 1.0})
    c.items.push_back(below("tau=" + num(tau), relative_l2_error(engine.slice(0.0, tau, 0, f), free_propagator(f, tau)), 1e-6));
}

void criterion2(Criterion& c, Cache&) {
  const GridSpec grid = GridSpec::make(10.0, 512);
  SliceEngine engine(PotentialModel::harmonic(), grid);
  for (double tau : {0.2, 0.3, 0.5})
    for (const auto& tf : {gaussian_packet(grid, 2.0, 0.0), standard_family(grid)[3]})
      c.items.push_back(below("tau=" + num(tau) + " " + tf.label,
                              relative_l2_error(engine.slice(0.0, tau, 1, tf.f), mehler_propagator(tf.f, tau)), 1e-5));
}

void mesh_items(Criterion& c, Cache& cache, const std::set<double>& ps) {
  for (bool harmonic : {true, false}) {
    const ConvergenceReport& r = cache.mesh(harmonic);
    if (r.aborted) c.aborted = guard_text(r.aborted);
    for (const auto& f : r.fits) {
      if (f.name.rfind("mesh slope", 0) != 0) continue;
      bool wanted = false;
      for (double p : ps) wanted = wanted || f.name.find(" p=" + num(p) + " ") != std::string::npos;
      if (!wanted) continue;
      Item it = from_slope(f);
      it.name = std::string(harmonic ? "harmonic " : "harmonic-cos ") + it.name;
      if (harmonic && f.name.find("N=1") != std::string::npos) it.known = kHarmonicExact;
      c.items.push_back(it);
    }
  }
}

void criterion3(Criterion& c, Cache& cache) { mesh_items(c, cache, {2.0}); }
void criterion6(Criterion& c, Cache& cache) { mesh_items(c, cache, {4.0, 1.5}); }

void criterion4(Criterion& c, Cache& cache) {
  const ConvergenceReport r = run_convergence(find(cache.suite.converge, "converge-hbar-harmonic-cos"));
  c.aborted = guard_text(r.aborted);
  for (const auto& f : r.fits) c.items.push_back(from_slope(f));
}

void criterion5(Criterion& c, Cache& cache) {
  for (const char* name : {"residual-free", "residual-harmonic", "residual-harmonic-cos"}) {
    const ResidualReport r = run_residual_scaling(find(cache.suite.residual, name));
    if (r.aborted) c.aborted = guard_text(r.aborted);
    for (const auto& f : r.fits) {
      Item it = from_slope(f);
      it.name = std::string(name) + " " + it.name;
      c.items.push_back(it);
    }
    for (const auto& k : r.checks) {
      Item it = from_check(k);
      it.name = std::string(name) + " " + it.name;
      c.items.push_back(it);
    }
  }
}

void criterion7(Criterion& c, Cache& cache) {
  const BoundednessReport r = run_boundedness(find(cache.suite.bounded, "bounded-harmonic"));
  c.aborted = guard_text(r.aborted);
  for (const auto& k : r.checks) c.items.push_back(from_check(k));
}

void criterion8(Criterion& c, Cache&) {
  const GridSpec grid = GridSpec::make(10.0, 512);
  for (const auto& tf : {gaussian_packet(grid, 1.0, -0.5), standard_family(grid)[2]}) {
    const WaveFunction u = mehler_propagator(tf.f, kPi / 2);
    std::vector<double> xs(grid.n);
    for (std::size_t j = 0; j < grid.n; ++j) xs[j] = grid.x(j);
    const WaveFunction fhat = tf.f.with_values(fourier_transform_at(tf.f, xs));
    // least-squares constant
    const cplx constant = inner_product(u, fhat) / inner_product(fhat, fhat);
    c.items.push_back(below(tf.label + " |U f - c f^| / |U f|", relative_l2_error(fhat * constant, u), 1e-6));
    c.items.push_back(below(tf.label + " ||c| - (2 pi)^{-1/2}|", std::abs(std::abs(constant) - 1 / std::sqrt(2 * kPi)), 1e-6));
    c.items.push_back({tf.label + " arg c", true, num(std::arg(constant)) + " (e^{-i pi/4}: " + num(-kPi / 4) + ")", ""});

    const WaveFunction focal = split_step_reference(PotentialModel::harmonic(), tf.f, 0.0, kPi, 4000);
    std::vector<cplx> mirrored(grid.n);
    for (std::size_t j = 1; j < grid.n; ++j) mirrored[j] = cplx(0.0, -1.0) * tf.f[grid.n - j];
    c.items.push_back(below(tf.label + " U(pi) f vs e^{-i pi/2} f(-x)", relative_l2_error(focal, tf.f.with_values(mirrored)), 1e-6));
  }
}

void gabor_items(Criterion& c, Cache& cache, const std::vector<std::string>& prefixes) {
  const GaborReport& r = cache.gabor_report();
  c.aborted = guard_text(r.aborted);
  for (const auto& k : r.checks)
    for (const auto& p : prefixes)
      if (k.name.rfind(p, 0) == 0) c.items.push_back(from_check(k));
}

void criterion9(Criterion& c, Cache& cache) {
  gabor_items(c, cache, {"slice decay exponent", "slice seminorm change", "arg-max rows"});
}

void criterion10(Criterion& c, Cache& cache) {
  gabor_items(c, cache, {"composition ratio", "free group law", "flow composition deviation"});
}

void criterion11(Criterion& c, Cache&) {
  const std::vector<PotentialModel> pots{PotentialModel::free(), PotentialModel::harmonic(),
                                         PotentialModel::harmonic_cos(0.2), PotentialModel::pulsed_harmonic(0.1)};
  double det = 0.0;
  for (const auto& pot : pots)
    for (double tau : {0.5, 1.0, 2.0})
      for (double y : {-2.0, 0.0, 1.5})
        for (double eta : {-1.0, 0.5, 2.0}) {
          const Jacobian2 j = flow_jacobian(pot, 0.0, tau, {y, eta});
          det = std::max(det, std::abs(j[0][0] * j[1][1] - j[0][1] * j[1][0] - 1.0));
        }
  c.items.push_back(below("symplecticity max |det J - 1|", det, 1e-8));

  double drift = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    const PotentialModel& pot = pots[k];
    for (double y : {-2.0, 1.0}) {
      const FlowPoint z{y, 0.8};
      drift = std::max(drift, std::abs(energy(pot, 2.0, hamiltonian_flow(pot, 0.0, 2.0, z)) - energy(pot, 0.0, z)));
    }
  }
  c.items.push_back(below("energy drift (time-independent potentials)", drift, 1e-8));

  const Axis ax{-2.0, 0.05, 81};
  for (std::size_t k = 1; k < pots.size(); ++k)
    c.items.push_back(below("Hamilton-Jacobi residual " + pots[k].label(),
                            hamilton_jacobi_residual(pots[k], generating_table(pots[k], 0.1, 0.6, ax, ax)), 1e-5));
  for (std::size_t k = 0; k < pots.size(); ++k)
    for (double tau : {0.25, kPi / 4}) {
      const TamenessReport t = tameness_report(generating_table(pots[k], 0.0, tau, ax, ax));
      c.items.push_back({"tameness " + pots[k].label() + " tau=" + num(tau), t.pass,
                         "min |t-s| det Syy " + num(t.min_det_yy) + " >= " + num(t.delta_tilde), ""});
    }
  bool raised = false;
  try {
    classical_bvp(pots[1], 0.0, kPi, 1.0, 0.5);
  } catch (const CausticError&) {
    raised = true;
  }
  c.items.push_back({"caustic error at harmonic tau=pi", raised, raised ? "CausticError raised" : "not raised", ""});
}

void criterion12(Criterion& c, Cache& cache) {
  gabor_items(c, cache, {"STFT inversion", "Plancherel", "dilation roundtrip"});
  const SharpnessReport s = run_sharpness_probe(cache.suite.sharpness.front());
  if (s.aborted) c.aborted = guard_text(s.aborted);
  for (const auto& f : s.fits) c.items.push_back(from_slope(f));
  for (const auto& k : s.checks) c.items.push_back(from_check(k));
}

// module invariants of the gabor report that no numbered criterion names
void supplementary(Criterion& c, Cache& cache) {
  gabor_items(c, cache, {"window norm", "STFT of the window", "identity", "slice seminorm m", "symplectic sampling",
                         "semiclassical", "seminorm via", "M^"});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  bool strict = false;
  std::vector<int> only;
  std::string report_path;
  app.add_flag("--strict", strict, "fail on expected failures too");
  app.add_option("--only", only, "criteria to run (0 = supplementary gabor invariants)");
  app.add_option("--report", report_path, "also write the report to this file");
  CLI11_PARSE(app, argc, argv);
  set_thread_count(std::max(1u, std::thread::hardware_concurrency()));

  const std::vector<std::tuple<int, std::string, std::function<void(Criterion&, Cache&)>>> table{
      {1, "free-particle exactness", criterion1},
      {2, "quadratic-potential N=1 exactness", criterion2},
      {3, "mesh order, p=2", criterion3},
      {4, "hbar order", criterion4},
      {5, "residual scaling and Duhamel identity", criterion5},
      {6, "Sobolev-loss mesh order, p=4 and p=1.5", criterion6},
      {7, "boundedness proxy", criterion7},
      {8, "Fourier identification and focal time", criterion8},
      {9, "Gabor sparsity of E^(0)", criterion9},
      {10, "composition", criterion10},
      {11, "classical suite", criterion11},
      {12, "phase-space substrate and sharpness", criterion12},
      {0, "gabor-analysis invariants (supplementary)", supplementary}};

  Cache cache;
  std::ostringstream report;
  bool failed = false;
  for (const auto& [id, title, run] : table) {
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    Criterion c{id, title, {}, "", 0.0};
    const auto t0 = std::chrono::steady_clock::now();
    try {
      run(c, cache);
    } catch (const std::exception& e) {
      c.aborted = e.what();
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream block;
    const std::string label = id ? "criterion " + std::to_string(id) : std::string("supplementary");
    block << (c.pass() ? "PASS" : "FAIL") << "  " << label << ": " << title;
    if (!c.pass() && !c.unexpected()) block << "  [expected failure, see notes]";
    block << "  (" << num(c.seconds) << " s)\n";
    if (!c.aborted.empty()) block << "        aborted: " << c.aborted << '\n';
    for (const auto& i : c.items) {
      block << "        " << (i.pass ? "ok  " : "FAIL") << "  " << i.name << ": " << i.detail << '\n';
      if (!i.pass && !i.known.empty()) block << "              expected: " << i.known << '\n';
    }
    std::fputs(block.str().c_str(), stdout);
    std::fflush(stdout);
    report << block.str();
    failed = failed || (strict ? !c.pass() : c.unexpected());
  }
  if (!report_path.empty()) std::ofstream(report_path) << report.str();
  return failed ? 1 : 0;
}
