#include "dadmm/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

namespace dadmm {

namespace {

namespace fs = std::filesystem;

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", value);
  return buf;
}

std::string trim(const std::string& s) {
  auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> items;
  std::string current;
  for (char ch : s) {
    if (ch == ',' || ch == ' ' || ch == '\t') {
      if (!current.empty()) items.push_back(current);
      current.clear();
    } else {
      current += ch;
    }
  }
  if (!current.empty()) items.push_back(current);
  return items;
}

struct ConfigMap {
  std::map<std::string, std::map<std::string, std::string>> sections;
  mutable std::map<std::string, std::map<std::string, bool>> consumed;

  bool has(const std::string& section, const std::string& key) const {
    auto s = sections.find(section);
    return s != sections.end() && s->second.count(key) > 0;
  }
  std::string take(const std::string& section, const std::string& key) const {
    consumed[section][key] = true;
    return sections.at(section).at(key);
  }
  void check_all_consumed() const {
    for (const auto& [section, keys] : sections)
      for (const auto& [key, value] : keys)
        if (!consumed.count(section) || !consumed.at(section).count(key))
          throw std::runtime_error("config: unknown key '" + key + "' in section [" +
                                   section + "]");
  }
};

ConfigMap read_config_map(std::istream& in) {
  ConfigMap cfg;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto comment = line.find('#');
    if (comment != std::string::npos) line.erase(comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::runtime_error("config line " + std::to_string(lineno) +
                                 ": bad section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos || section.empty())
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": expected key = value inside a section");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": empty key or value");
    cfg.sections[section][key] = value;
  }
  return cfg;
}

double to_double(const std::string& s) {
  std::size_t used = 0;
  double value = std::stod(s, &used);
  if (used != s.size()) throw std::runtime_error("config: bad number '" + s + "'");
  return value;
}

int to_int(const std::string& s) {
  std::size_t used = 0;
  int value = std::stoi(s, &used);
  if (used != s.size()) throw std::runtime_error("config: bad integer '" + s + "'");
  return value;
}

RunTrace run_cell(const std::string& algorithm, const std::vector<NodeProblem>& problems,
                  const Graph& g, const Coloring& col, const Eigen::MatrixXd& weights,
                  double rho, const InnerRule& inner, const StopRule& stop) {
  if (algorithm == "d-admm") return d_admm(problems, g, col, rho, stop);
  if (algorithm == "zhu-admm") return zhu_admm(problems, g, rho, stop);
  if (algorithm == "mm-ngs") return mm_gauss_seidel(problems, g, col, rho, inner, stop);
  if (algorithm == "subgradient")
    return subgradient(problems, g, weights, sqrt_decay(rho), stop);
  throw std::runtime_error("unknown algorithm '" + algorithm + "'");
}

bool needs_weights(const std::vector<std::string>& algorithms) {
  return std::find(algorithms.begin(), algorithms.end(), "subgradient") !=
         algorithms.end();
}

}  // namespace

Graph build_network(const NetworkSpec& spec) {
  if (spec.model == "erdos-renyi") return gen_erdos_renyi(spec.nodes, spec.p, spec.seed);
  if (spec.model == "watts-strogatz")
    return gen_watts_strogatz(spec.nodes, spec.n, spec.p, spec.seed);
  if (spec.model == "barabasi-albert") return gen_barabasi_albert(spec.nodes, spec.seed);
  if (spec.model == "geometric") return gen_geometric(spec.nodes, spec.d, spec.seed);
  if (spec.model == "lattice") return gen_lattice(spec.nodes);
  throw std::runtime_error("unknown network model '" + spec.model + "'");
}

ProblemInstance build_instance(const ProblemSpec& spec, int nodes) {
  if (spec.family == "consensus") {
    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> dist(spec.theta_mean, spec.theta_std);
    Eigen::VectorXd theta(nodes);
    for (int p = 0; p < nodes; ++p) theta[p] = dist(rng);
    return make_consensus_instance(theta);
  }

  if (spec.family == "bpdn" || spec.family == "lasso") {
    bool dct = spec.matrix == "dct";
    if (!dct && spec.matrix != "gaussian")
      throw std::runtime_error("unknown matrix kind '" + spec.matrix + "'");
    int m = spec.m > 0 ? spec.m : (dct ? 50 : 60);
    int n = spec.n > 0 ? spec.n : (dct ? 250 : 256);
    CsInstance cs = dct ? gen_partial_dct_cs(m, n, spec.sparsity, spec.noise_std, spec.seed)
                        : gen_gaussian_cs(m, n, spec.sparsity, spec.noise_std, spec.seed);
    if (spec.family == "bpdn") {
      double beta = spec.beta > 0.0 ? spec.beta : (dct ? 0.3 : 1.0);
      return make_bpdn_instance(std::move(cs.a), std::move(cs.b), beta, nodes);
    }
    double sigma = spec.sigma > 0.0 ? spec.sigma : (dct ? 0.1 : 0.5);
    return make_lasso_instance(std::move(cs.a), std::move(cs.b), sigma, spec.delta, nodes);
  }

  if (spec.family == "svm")
    return gen_separable_svm(spec.svm_points, spec.svm_features, spec.margin, spec.seed,
                             nodes);

  throw std::runtime_error("unknown problem family '" + spec.family + "'");
}

ExperimentConfig parse_config(std::istream& in) {
  ConfigMap map = read_config_map(in);
  ExperimentConfig cfg;

  auto& net = cfg.network;
  if (!map.has("network", "model")) throw std::runtime_error("config: network.model missing");
  net.model = map.take("network", "model");
  if (!map.has("network", "nodes")) throw std::runtime_error("config: network.nodes missing");
  net.nodes = to_int(map.take("network", "nodes"));
  if (map.has("network", "p")) net.p = to_double(map.take("network", "p"));
  if (map.has("network", "n")) net.n = to_int(map.take("network", "n"));
  if (map.has("network", "d")) net.d = to_double(map.take("network", "d"));
  if (map.has("network", "seed"))
    net.seed = static_cast<std::uint64_t>(std::stoull(map.take("network", "seed")));
  net.label = map.has("network", "label") ? map.take("network", "label") : net.model;

  auto& prob = cfg.problem;
  if (!map.has("problem", "family")) throw std::runtime_error("config: problem.family missing");
  prob.family = map.take("problem", "family");
  if (map.has("problem", "seed"))
    prob.seed = static_cast<std::uint64_t>(std::stoull(map.take("problem", "seed")));
  if (map.has("problem", "theta_mean")) prob.theta_mean = to_double(map.take("problem", "theta_mean"));
  if (map.has("problem", "theta_std")) prob.theta_std = to_double(map.take("problem", "theta_std"));
  if (map.has("problem", "matrix")) prob.matrix = map.take("problem", "matrix");
  if (map.has("problem", "m")) prob.m = to_int(map.take("problem", "m"));
  if (map.has("problem", "n")) prob.n = to_int(map.take("problem", "n"));
  if (map.has("problem", "sparsity")) prob.sparsity = to_int(map.take("problem", "sparsity"));
  if (map.has("problem", "noise_std")) prob.noise_std = to_double(map.take("problem", "noise_std"));
  if (map.has("problem", "beta")) prob.beta = to_double(map.take("problem", "beta"));
  if (map.has("problem", "sigma")) prob.sigma = to_double(map.take("problem", "sigma"));
  if (map.has("problem", "delta")) prob.delta = to_double(map.take("problem", "delta"));
  if (map.has("problem", "svm_points")) prob.svm_points = to_int(map.take("problem", "svm_points"));
  if (map.has("problem", "svm_features"))
    prob.svm_features = to_int(map.take("problem", "svm_features"));
  if (map.has("problem", "margin")) prob.margin = to_double(map.take("problem", "margin"));

  if (!map.has("run", "algorithms")) throw std::runtime_error("config: run.algorithms missing");
  cfg.algorithms = split_list(map.take("run", "algorithms"));
  if (map.has("run", "rhos")) {
    cfg.rho_grid.clear();
    for (const auto& item : split_list(map.take("run", "rhos")))
      cfg.rho_grid.push_back(to_double(item));
  }
  if (map.has("run", "tol")) cfg.tol = to_double(map.take("run", "tol"));
  if (map.has("run", "max_steps")) cfg.max_steps = to_int(map.take("run", "max_steps"));
  if (map.has("run", "inner_tol")) cfg.inner.tol = to_double(map.take("run", "inner_tol"));
  if (map.has("run", "inner_sweeps"))
    cfg.inner.max_sweeps = to_int(map.take("run", "inner_sweeps"));
  if (map.has("run", "out_dir")) cfg.out_dir = map.take("run", "out_dir");

  map.check_all_consumed();

  if (cfg.algorithms.empty()) throw std::runtime_error("config: nothing to run");
  if (cfg.rho_grid.empty()) throw std::runtime_error("config: rho grid empty");
  for (double rho : cfg.rho_grid)
    if (rho <= 0.0) throw std::runtime_error("config: rho values must be positive");
  if (cfg.tol <= 0.0 || cfg.tol >= 1.0)
    throw std::runtime_error("config: tol must be in (0,1)");
  if (cfg.max_steps < 1) throw std::runtime_error("config: max_steps must be >= 1");
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  return parse_config(in);
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  if (cfg.algorithms.empty()) throw std::runtime_error("nothing to run");
  if (cfg.rho_grid.empty()) throw std::runtime_error("rho grid empty");
  for (double rho : cfg.rho_grid)
    if (rho <= 0.0) throw std::runtime_error("rho values must be positive");

  Graph g = build_network(cfg.network);
  Coloring col = greedy_color(g);
  ProblemInstance instance = build_instance(cfg.problem, g.node_count);
  StopRule stop{reference_solution(instance), cfg.tol, cfg.max_steps};
  Eigen::MatrixXd weights;
  if (needs_weights(cfg.algorithms)) weights = metropolis_weights(g);

  fs::create_directories(cfg.out_dir);
  {
    std::ofstream out(fs::path(cfg.out_dir) / ("instance_" + cfg.network.label + ".txt"));
    if (!out) throw std::runtime_error("cannot write instance file");
    save_instance(instance, out);
  }

  struct Cell {
    std::string algorithm;
    double rho;
  };
  std::vector<Cell> grid;
  for (const auto& algorithm : cfg.algorithms)
    for (double rho : cfg.rho_grid) grid.push_back({algorithm, rho});

  ExperimentResult result;
  result.network = cfg.network.label;
  result.edge_count = g.edge_count();
  result.cells.resize(grid.size());

  // Cells are independent; traces land in per-cell files, results in
  // per-cell slots, so the schedule cannot affect the output.
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(grid.size()); ++i) {
    CellResult cell;
    cell.network = cfg.network.label;
    cell.algorithm = grid[i].algorithm;
    cell.rho = grid[i].rho;
    try {
      // fresh node problems per cell: solves may carry warm-start caches
      std::vector<NodeProblem> problems = make_node_problems(instance);
      RunTrace trace =
          run_cell(grid[i].algorithm, problems, g, col, weights, grid[i].rho, cfg.inner, stop);
      cell.steps = trace.comm_steps();
      cell.final_rel_error = trace.final_error();
      cell.messages = comm_steps_total(trace, g);
      cell.reached_tol = trace.termination == Termination::reached_tol;
      std::ofstream out(fs::path(cfg.out_dir) /
                        ("trace_" + cell.network + "_" + cell.algorithm + "_rho" +
                         format_double(cell.rho) + ".csv"));
      if (!out) throw std::runtime_error("cannot write trace file");
      write_trace_csv(trace, out);
    } catch (const std::exception& ex) {
      cell.error = ex.what();
    }
    result.cells[i] = std::move(cell);
  }

  std::sort(result.cells.begin(), result.cells.end(), [](const CellResult& a, const CellResult& b) {
    return std::tie(a.network, a.algorithm, a.rho) < std::tie(b.network, b.algorithm, b.rho);
  });

  for (const auto& algorithm : cfg.algorithms) {
    AlgorithmBest best;
    best.algorithm = algorithm;
    bool found = false;
    for (const auto& cell : result.cells) {
      if (cell.algorithm != algorithm || !cell.error.empty()) continue;
      bool better = !found ||
                    (cell.reached_tol && !best.reached_tol) ||
                    (cell.reached_tol == best.reached_tol &&
                     (cell.reached_tol ? cell.steps < best.steps
                                       : cell.final_rel_error < best.final_rel_error));
      if (better) {
        best.rho = cell.rho;
        best.steps = cell.steps;
        best.final_rel_error = cell.final_rel_error;
        best.reached_tol = cell.reached_tol;
        found = true;
      }
    }
    if (found) result.best.push_back(best);
  }

  emit_summary_csv(result, (fs::path(cfg.out_dir) /
                            ("summary_" + cfg.network.label + ".csv"))
                               .string());

  bool any_failed = false;
  for (const auto& cell : result.cells) any_failed |= !cell.error.empty();
  if (any_failed) {
    std::ofstream out(fs::path(cfg.out_dir) / ("errors_" + cfg.network.label + ".txt"));
    for (const auto& cell : result.cells)
      if (!cell.error.empty())
        out << cell.algorithm << " rho=" << format_double(cell.rho) << ": " << cell.error
            << '\n';
  }
  return result;
}

void emit_summary_csv(const std::vector<CellResult>& cells, const std::string& path) {
  std::vector<CellResult> sorted = cells;
  std::sort(sorted.begin(), sorted.end(), [](const CellResult& a, const CellResult& b) {
    return std::tie(a.network, a.algorithm, a.rho) < std::tie(b.network, b.algorithm, b.rho);
  });
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write summary CSV '" + path + "'");
  out << "network,algorithm,rho,steps,final_rel_error,messages\n";
  char buf[64];
  for (const auto& cell : sorted) {
    if (!cell.error.empty()) continue;
    std::snprintf(buf, sizeof buf, "%.8e", cell.final_rel_error);
    out << cell.network << ',' << cell.algorithm << ',' << format_double(cell.rho) << ','
        << cell.steps << ',' << buf << ',' << cell.messages << '\n';
  }
  if (!out) throw std::runtime_error("write failed for summary CSV '" + path + "'");
}

void emit_summary_csv(const ExperimentResult& result, const std::string& path) {
  emit_summary_csv(result.cells, path);
}

std::vector<NetworkSpec> standard_networks(int nodes, std::uint64_t seed_base) {
  // The two small-world rows keep the reference degrees 4 and 8; a rewired
  // degree-2 ring is disconnected in almost every draw at these sizes.
  std::vector<NetworkSpec> specs(7);
  specs[0] = {"erdos-renyi", nodes, 0.25, 0, 0.0, seed_base + 1, "1-erdos-renyi-p25"};
  specs[1] = {"erdos-renyi", nodes, 0.75, 0, 0.0, seed_base + 2, "2-erdos-renyi-p75"};
  specs[2] = {"watts-strogatz", nodes, 0.8, 4, 0.0, seed_base + 3, "3-watts-strogatz-4"};
  specs[3] = {"watts-strogatz", nodes, 0.6, 8, 0.0, seed_base + 4, "4-watts-strogatz-8"};
  specs[4] = {"barabasi-albert", nodes, 0.0, 0, 0.0, seed_base + 5, "5-barabasi-albert"};
  specs[5] = {"geometric", nodes, 0.0, 0, 0.2, seed_base + 6, "6-geometric"};
  specs[6] = {"lattice", nodes, 0.0, 0, 0.0, seed_base + 7, "7-lattice"};
  return specs;
}

std::vector<Figure2Row> suite_figure2(int nodes, const SuiteOptions& opts) {
  std::vector<Figure2Row> rows;
  std::vector<CellResult> all_cells;
  for (const auto& net : standard_networks(nodes, opts.network_seed)) {
    ExperimentConfig cfg;
    cfg.network = net;
    cfg.problem.family = "consensus";
    cfg.problem.seed = opts.problem_seed;
    cfg.algorithms = opts.algorithms;
    cfg.tol = opts.tol;
    cfg.max_steps = opts.max_steps;
    cfg.out_dir = opts.out_dir;
    ExperimentResult res = run_experiment(cfg);
    all_cells.insert(all_cells.end(), res.cells.begin(), res.cells.end());

    for (const auto& best : res.best) {
      rows.push_back({net.label, best.algorithm, best.rho, best.steps, best.reached_tol,
                      2LL * res.edge_count * best.steps});
      if (best.algorithm == "zhu-admm") {
        // baseline needing two exchanges per iteration: same iteration count,
        // twice the communication
        rows.push_back({net.label, "schizas-2x", best.rho, 2 * best.steps,
                        best.reached_tol, 4LL * res.edge_count * best.steps});
      }
    }
  }
  std::sort(rows.begin(), rows.end(), [](const Figure2Row& a, const Figure2Row& b) {
    return std::tie(a.network, a.algorithm) < std::tie(b.network, b.algorithm);
  });
  emit_summary_csv(all_cells,
                   (std::filesystem::path(opts.out_dir) /
                    ("figure2_grid_P" + std::to_string(nodes) + ".csv"))
                       .string());
  write_figure2_csv(rows, (std::filesystem::path(opts.out_dir) /
                           ("figure2_best_P" + std::to_string(nodes) + ".csv"))
                              .string());
  return rows;
}

void write_figure2_csv(const std::vector<Figure2Row>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write figure2 CSV '" + path + "'");
  out << "network,algorithm,rho,steps,reached_tol,messages\n";
  for (const auto& row : rows)
    out << row.network << ',' << row.algorithm << ',' << format_double(row.rho) << ','
        << row.steps << ',' << (row.reached_tol ? 1 : 0) << ',' << row.messages << '\n';
  if (!out) throw std::runtime_error("write failed for figure2 CSV '" + path + "'");
}

}  // namespace dadmm
