#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "tslab/config.hpp"
#include "tslab/experiments.hpp"
#include "tslab/flow.hpp"
#include "tslab/generating_table.hpp"
#include "tslab/parallel.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Options {
  std::string config_path;
  std::string out_dir;
  unsigned threads = 0;
  std::optional<std::uint64_t> seed;
};

tslab::SuiteConfig load_suite(const Options& o) {
  tslab::SuiteConfig suite = tslab::default_suite();
  if (!o.config_path.empty()) {
    std::ifstream in(o.config_path);
    if (!in) throw std::runtime_error("cannot open config " + o.config_path);
    suite = tslab::suite_from_json(json::parse(in));
  }
  if (!o.out_dir.empty()) suite.out_dir = o.out_dir;
  if (o.seed) suite.seed = *o.seed;
  return suite;
}

class Runner {
 public:
  explicit Runner(const tslab::SuiteConfig& suite) : suite_(suite) {
    fs::create_directories(suite.out_dir);
    summary_ = {{"seed", suite.seed}, {"runs", json::array()}};
  }

  template <class Report>
  void record(const std::string& name, const Report& report, double seconds) {
    std::ofstream csv(fs::path(suite_.out_dir) / (name + ".csv"));
    report.write_csv(csv);
    json j = report.to_json();
    j["seconds"] = seconds;
    summary_["runs"].push_back(j);
    all_pass_ = all_pass_ && report.pass;
    std::printf("%s %s (%.1f s)\n", report.pass ? "PASS" : "FAIL", name.c_str(), seconds);
    std::fflush(stdout);
  }

  template <class Config, class Run>
  void run_all(const std::vector<Config>& configs, Run run) {
    for (const auto& c : configs) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto report = run(c);
      const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      record(c.name, report, dt);
    }
  }

  int finish() {
    summary_["pass"] = all_pass_;
    std::ofstream(fs::path(suite_.out_dir) / "summary.json") << summary_.dump(2) << '\n';
    return all_pass_ ? 0 : 1;
  }

 private:
  const tslab::SuiteConfig& suite_;
  json summary_;
  bool all_pass_ = true;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-slicing parametrix experiments"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--config", opt.config_path, "JSON suite configuration")->check(CLI::ExistingFile);
  app.add_option("--out", opt.out_dir, "output directory (default: out)");
  app.add_option("--threads", opt.threads, "worker threads (0 = hardware)");
  app.add_option("--seed", opt.seed, "seed echoed into summary.json");

  auto* converge = app.add_subcommand("converge", "convergence orders in the mesh size and hbar");
  auto* bounded = app.add_subcommand("bounded", "uniform boundedness sweeps");
  auto* residual = app.add_subcommand("residual", "residual scaling and the Duhamel check");
  auto* gabor = app.add_subcommand("gabor", "Gabor matrix decay and phase-space checks");
  auto* sharp = app.add_subcommand("sharpness", "Sobolev-loss sharpness probes");
  auto* all = app.add_subcommand("all", "every configured run");

  auto* flow = app.add_subcommand("flow-dump", "one classical trajectory as CSV");
  std::string pot_label = "harmonic";
  double pot_param = std::nan("");
  double s = 0.0, t = 1.0, y = 1.0, eta = 0.0;
  int steps = tslab::kDefaultFlowSteps;
  for (auto* sub : {flow}) {
    sub->add_option("--potential", pot_label, "free | harmonic | harmonic-cos | pulsed-harmonic");
    sub->add_option("--parameter", pot_param, "potential parameter");
    sub->add_option("--s", s);
    sub->add_option("--t", t);
    sub->add_option("--y", y, "start position");
    sub->add_option("--eta", eta, "start momentum");
    sub->add_option("--steps", steps, "RK4 steps");
  }
  auto* table = app.add_subcommand("table-dump", "generating function table as CSV");
  double half_width = 4.0;
  std::size_t points = 64;
  table->add_option("--potential", pot_label, "free | harmonic | harmonic-cos | pulsed-harmonic");
  table->add_option("--parameter", pot_param, "potential parameter");
  table->add_option("--s", s);
  table->add_option("--t", t);
  table->add_option("--L", half_width, "table covers [-L, L)");
  table->add_option("--n", points, "points per axis");

  CLI11_PARSE(app, argc, argv);
  tslab::set_thread_count(opt.threads > 0 ? opt.threads : std::max(1u, std::thread::hardware_concurrency()));

  try {
    auto model = [&] {
      if (std::isnan(pot_param)) pot_param = pot_label == "pulsed-harmonic" ? 0.1 : 0.2;
      return tslab::PotentialModel::from_label(pot_label, pot_param);
    };
    if (flow->parsed()) {
      const tslab::PotentialModel pot = model();
      std::printf("t,x,xi,energy\n");
      tslab::FlowPoint p{y, eta};
      for (int k = 0; k <= steps; ++k) {
        const double tk = s + (t - s) * k / steps;
        std::printf("%.17g,%.17g,%.17g,%.17g\n", tk, p.x, p.xi, tslab::energy(pot, tk, p));
        if (k < steps) p = tslab::hamiltonian_flow(pot, tk, s + (t - s) * (k + 1) / steps, p, 1);
      }
      return 0;
    }
    if (table->parsed()) {
      const tslab::GridSpec g = tslab::GridSpec::make(half_width, points);
      const auto axis = tslab::Axis::from_grid(g);
      tslab::write_csv(std::cout, tslab::generating_table(model(), s, t, axis, axis));
      return 0;
    }

    const tslab::SuiteConfig suite = load_suite(opt);
    Runner runner(suite);
    const bool every = all->parsed();
    if (every || converge->parsed()) runner.run_all(suite.converge, tslab::run_convergence);
    if (every || bounded->parsed()) runner.run_all(suite.bounded, tslab::run_boundedness);
    if (every || residual->parsed()) runner.run_all(suite.residual, tslab::run_residual_scaling);
    if (every || gabor->parsed()) runner.run_all(suite.gabor, tslab::run_gabor_report);
    if (every || sharp->parsed()) runner.run_all(suite.sharpness, tslab::run_sharpness_probe);
    return runner.finish();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
