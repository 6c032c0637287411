#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dadmm/algorithms.hpp"
#include "dadmm/graph.hpp"
#include "dadmm/problems.hpp"

namespace dadmm {

struct NetworkSpec {
  std::string model;  // erdos-renyi | watts-strogatz | barabasi-albert | geometric | lattice
  int nodes = 0;
  double p = 0.0;     // erdos-renyi edge prob / watts-strogatz rewire prob
  int n = 0;          // watts-strogatz ring degree
  double d = 0.0;     // geometric radius
  std::uint64_t seed = 1;
  std::string label;  // row name in CSVs; defaults to the model name
};

Graph build_network(const NetworkSpec& spec);

struct ProblemSpec {
  std::string family = "consensus";  // consensus | bpdn | lasso | svm
  std::uint64_t seed = 1;
  // consensus
  double theta_mean = 10.0;
  double theta_std = 100.0;
  // compressed sensing (bpdn, lasso); defaults depend on the matrix kind
  std::string matrix = "gaussian";  // gaussian | dct
  int m = 0;
  int n = 0;
  int sparsity = 5;
  double noise_std = 0.01;
  double beta = -1.0;   // <0 picks the per-matrix default
  double sigma = -1.0;  // <0 picks the per-matrix default
  double delta = 1e-3;
  // svm
  int svm_points = 100;
  int svm_features = 4;
  double margin = 1.0;
};

ProblemInstance build_instance(const ProblemSpec& spec, int nodes);

struct ExperimentConfig {
  NetworkSpec network;
  ProblemSpec problem;
  std::vector<std::string> algorithms;  // d-admm | zhu-admm | mm-ngs | subgradient
  // doubles as the alpha0 grid for subgradient
  std::vector<double> rho_grid = {1e-4, 1e-3, 1e-2, 1e-1, 1.0, 10.0, 100.0};
  double tol = 1e-4;
  int max_steps = 1000;
  InnerRule inner;
  std::string out_dir = ".";
};

// Flat sectioned key=value text; '#' starts a comment. Unknown keys fail.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config_file(const std::string& path);

struct CellResult {
  std::string network;
  std::string algorithm;
  double rho = 0.0;
  int steps = 0;
  double final_rel_error = 0.0;
  long long messages = 0;
  bool reached_tol = false;
  std::string error;  // nonempty when this cell failed
};

struct AlgorithmBest {
  std::string algorithm;
  double rho = 0.0;
  int steps = 0;
  double final_rel_error = 0.0;
  bool reached_tol = false;
};

struct ExperimentResult {
  std::string network;
  int edge_count = 0;
  std::vector<CellResult> cells;  // sorted by (network, algorithm, rho)
  std::vector<AlgorithmBest> best;
};

// Builds network, instance, and reference, then runs every (algorithm, rho)
// cell, writing one trace CSV per cell plus instance/summary files under
// cfg.out_dir. Cell failures are recorded and the sweep continues.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// Header "network,algorithm,rho,steps,final_rel_error,messages", rows sorted.
void emit_summary_csv(const std::vector<CellResult>& cells, const std::string& path);
void emit_summary_csv(const ExperimentResult& result, const std::string& path);

// The seven standard test networks at a given size.
std::vector<NetworkSpec> standard_networks(int nodes, std::uint64_t seed_base);

struct Figure2Row {
  std::string network;
  std::string algorithm;  // includes the analytic "schizas-2x" entry
  double rho = 0.0;
  int steps = 0;
  bool reached_tol = false;
  long long messages = 0;
};

struct SuiteOptions {
  double tol = 1e-4;
  int max_steps = 1000;
  std::uint64_t network_seed = 1;
  std::uint64_t problem_seed = 1;
  std::string out_dir = ".";
  std::vector<std::string> algorithms = {"d-admm", "zhu-admm", "mm-ngs", "subgradient"};
};

// Consensus benchmark across the seven standard networks: best-rho step
// counts per algorithm per network, plus the two-steps-per-iteration
// baseline reported as twice the synchronous ADMM count.
std::vector<Figure2Row> suite_figure2(int nodes, const SuiteOptions& opts);

void write_figure2_csv(const std::vector<Figure2Row>& rows, const std::string& path);

}  // namespace dadmm
