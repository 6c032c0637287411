#pragma once

#include <Eigen/Dense>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "dadmm/graph.hpp"
#include "dadmm/parallel.hpp"

namespace dadmm {

// One node's private problem, exposed through its regularized solve oracle:
// solve(v, c) returns argmin over x in X_p of f_p(x) + v'x + c||x||^2.
// The subgradient and project oracles are needed only by the subgradient
// baseline. All oracles must be reentrant and deterministic in their inputs.
struct NodeProblem {
  int dim = 0;
  std::function<Eigen::VectorXd(const Eigen::VectorXd& v, double c)> solve;
  std::function<Eigen::VectorXd(const Eigen::VectorXd& x)> subgradient;
  std::function<Eigen::VectorXd(const Eigen::VectorXd& x)> project;
};

// Per-node state of a run: estimates, dual accumulators, counters.
struct AlgorithmState {
  std::vector<Eigen::VectorXd> x;
  std::vector<Eigen::VectorXd> gamma;
  int comm_steps = 0;
  int iterations = 0;
};

enum class Termination { reached_tol, max_steps };

struct TraceRecord {
  int comm_step = 0;
  double rel_error = 0.0;
};

struct RunTrace {
  std::vector<TraceRecord> records;  // one per communication step
  Termination termination = Termination::max_steps;
  Eigen::VectorXd final_stacked;     // node estimates stacked, P*n entries

  int comm_steps() const { return records.empty() ? 0 : records.back().comm_step; }
  double final_error() const { return records.empty() ? 0.0 : records.back().rel_error; }
};

// Stops a run when ||xbar - 1_P (x) x*|| / (sqrt(P) ||x*||) <= tol, or at
// max_steps communication steps. When ||x*|| = 0 the denominator degrades
// to sqrt(P).
struct StopRule {
  Eigen::VectorXd reference;
  double tol = 1e-4;
  int max_steps = 1000;

  double rel_error(std::span<const Eigen::VectorXd> x) const;
};

// Snapshot handed to an observer after each communication step. gamma is
// empty for the subgradient baseline.
struct IterationView {
  int comm_step;
  std::span<const Eigen::VectorXd> x;
  std::span<const Eigen::VectorXd> gamma;
};
using IterationObserver = std::function<void(const IterationView&)>;

struct RunOptions {
  Exec exec = Exec::openmp;
  IterationObserver observer;
};

// Color-sequenced ADMM on the edge-consensus reformulation. Classes update
// in color order within one iteration; a node mixes already-updated
// lower-color neighbors with not-yet-updated higher-color ones:
//   v_p = gamma_p - rho * (sum_{j: col(j)<col(p)} x_j^{k+1}
//                          + sum_{j: col(j)>col(p)} x_j^k),
//   x_p^{k+1} = solve(v_p, D_p rho / 2),
// then every node accumulates
//   gamma_p += rho * sum_{j in N_p} (x_p^{k+1} - x_j^{k+1}).
// One iteration = one communication step. With two colors this is exactly
// the bipartite variant.
RunTrace d_admm(const std::vector<NodeProblem>& problems, const Graph& g,
                const Coloring& col, double rho, const StopRule& stop,
                const RunOptions& opts = {});

// Fully synchronous ADMM variant: every node simultaneously computes
//   v_p = gamma_p - rho * (D_p x_p^k + sum_{j in N_p} x_j^k),
//   x_p^{k+1} = solve(v_p, rho D_p),
// then the same gamma update as above. The update minimizes
// f_p + gamma_p' x + rho sum_j ||x - (x_p^k + x_j^k)/2||^2, one midpoint
// penalty per incident edge. One iteration = one communication step.
RunTrace zhu_admm(const std::vector<NodeProblem>& problems, const Graph& g,
                  double rho, const StopRule& stop, const RunOptions& opts = {});

// Step-size schedule for the subgradient baseline; alpha(k) for k >= 1.
using StepSchedule = std::function<double(int k)>;
StepSchedule sqrt_decay(double alpha0);

struct SubgradientOptions {
  Exec exec = Exec::openmp;
  IterationObserver observer;
  std::vector<Eigen::VectorXd> start;  // defaults to zeros
};

// Projected consensus subgradient iteration
//   x_p^{k+1} = Proj_{X_p}( sum_j a_pj x_j^k - alpha_k g_p(sum_j a_pj x_j^k) ).
// weights must be doubly stochastic with the sparsity of g plus diagonal.
RunTrace subgradient(const std::vector<NodeProblem>& problems, const Graph& g,
                     const Eigen::MatrixXd& weights, const StepSchedule& schedule,
                     const StopRule& stop, const SubgradientOptions& opts = {});

// Metropolis mixing matrix: a_ij = 1/(1 + max(D_i, D_j)) on edges,
// diagonal fills each row to 1. Symmetric, doubly stochastic.
Eigen::MatrixXd metropolis_weights(const Graph& g);

struct InnerRule {
  double tol = 1e-4;    // relative change across one sweep
  int max_sweeps = 10;
};

// Method of multipliers with nonlinear Gauss-Seidel inner sweeps. The outer
// loop ascends the edge duals with step rho; the inner loop sweeps the nodes
// in color order, each node solving solve(v_p, D_p rho / 2) against the
// latest neighbor estimates. Every inner sweep is one communication step.
RunTrace mm_gauss_seidel(const std::vector<NodeProblem>& problems, const Graph& g,
                         const Coloring& col, double rho, const InnerRule& inner,
                         const StopRule& stop, const RunOptions& opts = {});

// Total directed messages after a run: 2 E * (final communication step).
long long comm_steps_total(const RunTrace& trace, const Graph& g);

// CSV export: header "step,rel_error", scientific errors with 9 significant
// digits.
void write_trace_csv(const RunTrace& trace, std::ostream& out);

}  // namespace dadmm
