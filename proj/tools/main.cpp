#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "dadmm/harness.hpp"

namespace {

int cmd_run(const std::string& config_path, const std::string& out_dir,
            long long seed, int max_steps, double tol) {
  dadmm::ExperimentConfig cfg;
  try {
    cfg = dadmm::parse_config_file(config_path);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (seed >= 0) {
      cfg.network.seed = static_cast<std::uint64_t>(seed);
      cfg.problem.seed = static_cast<std::uint64_t>(seed);
    }
    if (max_steps > 0) cfg.max_steps = max_steps;
    if (tol > 0.0) cfg.tol = tol;
  } catch (const std::exception& ex) {
    std::cerr << "configuration error: " << ex.what() << '\n';
    return 1;
  }
  try {
    auto result = dadmm::run_experiment(cfg);
    int failed = 0;
    for (const auto& cell : result.cells)
      if (!cell.error.empty()) ++failed;
    std::cout << "network " << result.network << ": " << result.cells.size()
              << " cells, " << failed << " failed\n";
    for (const auto& best : result.best)
      std::cout << "  " << best.algorithm << ": best rho " << best.rho << ", "
                << best.steps << " steps" << (best.reached_tol ? "" : " (no tol)")
                << '\n';
    return failed == 0 ? 0 : 2;
  } catch (const std::exception& ex) {
    std::cerr << "runtime failure: " << ex.what() << '\n';
    return 2;
  }
}

int cmd_suite_figure2(int nodes, int seeds, const dadmm::SuiteOptions& base) {
  try {
    for (int rep = 0; rep < seeds; ++rep) {
      dadmm::SuiteOptions opts = base;
      opts.network_seed = base.network_seed + rep;
      opts.problem_seed = base.problem_seed + rep;
      if (seeds > 1) {
        opts.out_dir = base.out_dir + "/seed" + std::to_string(rep);
      }
      auto rows = dadmm::suite_figure2(nodes, opts);
      for (const auto& row : rows)
        std::cout << row.network << ' ' << row.algorithm << ": " << row.steps
                  << " steps (rho " << row.rho << ")\n";
    }
    return 0;
  } catch (const std::exception& ex) {
    std::cerr << "runtime failure: " << ex.what() << '\n';
    return 2;
  }
}

int cmd_gen_network(const dadmm::NetworkSpec& spec, const std::string& out_path) {
  try {
    dadmm::Graph g = dadmm::build_network(spec);
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "cannot write '" << out_path << "'\n";
      return 2;
    }
    dadmm::write_edge_list(g, out);
    std::cout << "wrote " << out_path << " (" << g.node_count << " nodes, "
              << g.edge_count() << " edges)\n";
    return 0;
  } catch (const std::exception& ex) {
    std::cerr << "runtime failure: " << ex.what() << '\n';
    return 2;
  }
}

int cmd_solve_reference(const std::string& instance_path, const std::string& out_path) {
  std::ifstream in(instance_path);
  if (!in) {
    std::cerr << "cannot open instance file '" << instance_path << "'\n";
    return 1;
  }
  try {
    dadmm::ProblemInstance instance = dadmm::load_instance(in);
    Eigen::VectorXd reference = dadmm::reference_solution(instance);
    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
      file.open(out_path);
      if (!file) {
        std::cerr << "cannot write '" << out_path << "'\n";
        return 2;
      }
      out = &file;
    }
    char buf[32];
    for (Eigen::Index i = 0; i < reference.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", reference[i]);
      *out << buf << (i + 1 == reference.size() ? '\n' : ' ');
    }
    return 0;
  } catch (const std::exception& ex) {
    std::cerr << "runtime failure: " << ex.what() << '\n';
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"distributed separable optimization testbed"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  std::string out_dir;
  long long seed = -1;
  int max_steps = 0;
  double tol = 0.0;
  app.add_option("--out-dir", out_dir, "output directory override");
  app.add_option("--seed", seed, "seed override (network and problem)");
  app.add_option("--max-steps", max_steps, "communication step cap override");
  app.add_option("--tol", tol, "relative error tolerance override");

  auto* run = app.add_subcommand("run", "run the experiment in a config file");
  std::string config_path;
  run->add_option("config", config_path, "config file")->required();

  auto* suite = app.add_subcommand("suite", "prepackaged experiment suites");
  suite->require_subcommand(1);
  auto* figure2 = suite->add_subcommand(
      "figure2", "consensus sweep over the seven standard networks");
  int nodes = 50;
  int seeds = 1;
  figure2->add_option("--nodes", nodes, "network size")->required();
  figure2->add_option("--seeds", seeds, "repetitions, one summary per seed");

  auto* gen = app.add_subcommand("gen-network", "generate a network edge list");
  dadmm::NetworkSpec spec;
  std::string gen_out = "network.txt";
  gen->add_option("model", spec.model,
                  "erdos-renyi | watts-strogatz | barabasi-albert | geometric | lattice")
      ->required();
  gen->add_option("--nodes", spec.nodes, "node count")->required();
  gen->add_option("--p", spec.p, "edge or rewire probability");
  gen->add_option("--n", spec.n, "watts-strogatz ring degree");
  gen->add_option("--d", spec.d, "geometric radius");
  gen->add_option("--out", gen_out, "output file");

  auto* solve = app.add_subcommand("solve-reference",
                                   "centralized reference for an instance file");
  std::string instance_path, solve_out;
  solve->add_option("instance", instance_path, "instance file")->required();
  solve->add_option("--out", solve_out, "write the solution here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  if (run->parsed()) return cmd_run(config_path, out_dir, seed, max_steps, tol);
  if (figure2->parsed()) {
    dadmm::SuiteOptions opts;
    if (!out_dir.empty()) opts.out_dir = out_dir;
    if (seed >= 0) {
      opts.network_seed = static_cast<std::uint64_t>(seed);
      opts.problem_seed = static_cast<std::uint64_t>(seed);
    }
    if (max_steps > 0) opts.max_steps = max_steps;
    if (tol > 0.0) opts.tol = tol;
    return cmd_suite_figure2(nodes, seeds, opts);
  }
  if (gen->parsed()) {
    if (seed >= 0) spec.seed = static_cast<std::uint64_t>(seed);
    spec.label = spec.model;
    return cmd_gen_network(spec, gen_out);
  }
  if (solve->parsed()) return cmd_solve_reference(instance_path, solve_out);
  return 1;
}
