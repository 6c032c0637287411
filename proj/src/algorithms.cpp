#include "dadmm/algorithms.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>

namespace dadmm {

namespace {

using Eigen::VectorXd;

void validate_problems(const std::vector<NodeProblem>& problems, const Graph& g) {
  if (static_cast<int>(problems.size()) != g.node_count)
    throw std::invalid_argument("need one node problem per node");
  for (const auto& np : problems) {
    if (np.dim <= 0 || !np.solve)
      throw std::invalid_argument("node problem missing dimension or solve oracle");
    if (np.dim != problems.front().dim)
      throw std::invalid_argument("node copies must share a dimension");
  }
}

void validate_coloring(const Graph& g, const Coloring& col) {
  if (static_cast<int>(col.colors.size()) != g.node_count)
    throw std::invalid_argument("coloring size mismatch");
  for (auto [i, j] : g.edges)
    if (col.colors[i] == col.colors[j])
      throw std::invalid_argument("coloring is not proper");
}

// Runs solve oracles for a set of nodes, serial or OpenMP. Exceptions are
// captured inside the loop (they may not cross a parallel region) and the
// first one is rethrown with node/iteration context.
template <typename Body>
void run_nodes(Exec exec, std::span<const int> nodes, int iteration, Body&& body) {
  std::vector<std::string> failures(nodes.size());
  parallel_for(exec, static_cast<std::ptrdiff_t>(nodes.size()), [&](std::ptrdiff_t i) {
    try {
      body(nodes[i]);
    } catch (const std::exception& ex) {
      failures[i] = ex.what();
    }
  });
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!failures[i].empty())
      throw std::runtime_error("node " + std::to_string(nodes[i]) + " at iteration " +
                               std::to_string(iteration) + ": " + failures[i]);
  }
}

std::vector<int> all_nodes(int count) {
  std::vector<int> ids(count);
  for (int i = 0; i < count; ++i) ids[i] = i;
  return ids;
}

VectorXd stack(const std::vector<VectorXd>& x) {
  Eigen::Index n = x.empty() ? 0 : x.front().size();
  VectorXd out(static_cast<Eigen::Index>(x.size()) * n);
  for (std::size_t p = 0; p < x.size(); ++p) out.segment(p * n, n) = x[p];
  return out;
}

struct EdgeRef {
  int neighbor;
  int edge;
};

// Adjacency annotated with edge indices, for per-edge dual bookkeeping.
std::vector<std::vector<EdgeRef>> edge_adjacency(const Graph& g) {
  std::vector<std::vector<EdgeRef>> adj(g.node_count);
  for (int e = 0; e < g.edge_count(); ++e) {
    auto [i, j] = g.edges[e];
    adj[i].push_back({j, e});
    adj[j].push_back({i, e});
  }
  for (auto& list : adj)
    std::sort(list.begin(), list.end(),
              [](const EdgeRef& a, const EdgeRef& b) { return a.neighbor < b.neighbor; });
  return adj;
}

}  // namespace

double StopRule::rel_error(std::span<const Eigen::VectorXd> x) const {
  double sq = 0.0;
  for (const auto& xp : x) sq += (xp - reference).squaredNorm();
  double denom = std::sqrt(static_cast<double>(x.size())) * std::max(reference.norm(), 0.0);
  if (denom == 0.0) denom = std::sqrt(static_cast<double>(x.size()));
  return std::sqrt(sq) / denom;
}

RunTrace d_admm(const std::vector<NodeProblem>& problems, const Graph& g,
                const Coloring& col, double rho, const StopRule& stop,
                const RunOptions& opts) {
  validate_problems(problems, g);
  validate_coloring(g, col);
  if (rho <= 0.0) throw std::invalid_argument("rho must be positive");
  if (stop.max_steps < 1) throw std::invalid_argument("max_steps must be >= 1");

  const int n = problems.front().dim;
  std::vector<VectorXd> x(g.node_count, VectorXd::Zero(n));
  std::vector<VectorXd> x_next = x;
  std::vector<VectorXd> gamma(g.node_count, VectorXd::Zero(n));

  RunTrace trace;
  for (int k = 1; k <= stop.max_steps; ++k) {
    for (const auto& members : col.classes) {
      run_nodes(opts.exec, members, k, [&](int p) {
        VectorXd mixed = VectorXd::Zero(n);
        for (int j : g.neighbors[p])
          mixed += col.colors[j] < col.colors[p] ? x_next[j] : x[j];
        VectorXd v = gamma[p] - rho * mixed;
        x_next[p] = problems[p].solve(v, g.degree(p) * rho / 2.0);
      });
    }
    run_nodes(opts.exec, all_nodes(g.node_count), k, [&](int p) {
      VectorXd disagreement = VectorXd::Zero(n);
      for (int j : g.neighbors[p]) disagreement += x_next[p] - x_next[j];
      gamma[p] += rho * disagreement;
    });
    std::swap(x, x_next);

    double err = stop.rel_error(x);
    trace.records.push_back({k, err});
    if (opts.observer) opts.observer({k, x, gamma});
    if (err <= stop.tol) {
      trace.termination = Termination::reached_tol;
      break;
    }
  }
  trace.final_stacked = stack(x);
  return trace;
}

RunTrace zhu_admm(const std::vector<NodeProblem>& problems, const Graph& g,
                  double rho, const StopRule& stop, const RunOptions& opts) {
  validate_problems(problems, g);
  if (rho <= 0.0) throw std::invalid_argument("rho must be positive");
  if (stop.max_steps < 1) throw std::invalid_argument("max_steps must be >= 1");

  const int n = problems.front().dim;
  const auto nodes = all_nodes(g.node_count);
  std::vector<VectorXd> x(g.node_count, VectorXd::Zero(n));
  std::vector<VectorXd> x_next = x;
  std::vector<VectorXd> gamma(g.node_count, VectorXd::Zero(n));

  RunTrace trace;
  for (int k = 1; k <= stop.max_steps; ++k) {
    run_nodes(opts.exec, nodes, k, [&](int p) {
      // own estimate enters weighted by the degree: the penalty is
      // sum_j ||x_p - (x_p^k + x_j^k)/2||^2, one midpoint per edge
      VectorXd mixed = static_cast<double>(g.degree(p)) * x[p];
      for (int j : g.neighbors[p]) mixed += x[j];
      VectorXd v = gamma[p] - rho * mixed;
      x_next[p] = problems[p].solve(v, rho * g.degree(p));
    });
    run_nodes(opts.exec, nodes, k, [&](int p) {
      VectorXd disagreement = VectorXd::Zero(n);
      for (int j : g.neighbors[p]) disagreement += x_next[p] - x_next[j];
      gamma[p] += rho * disagreement;
    });
    std::swap(x, x_next);

    double err = stop.rel_error(x);
    trace.records.push_back({k, err});
    if (opts.observer) opts.observer({k, x, gamma});
    if (err <= stop.tol) {
      trace.termination = Termination::reached_tol;
      break;
    }
  }
  trace.final_stacked = stack(x);
  return trace;
}

StepSchedule sqrt_decay(double alpha0) {
  if (alpha0 <= 0.0) throw std::invalid_argument("alpha0 must be positive");
  return [alpha0](int k) { return alpha0 / std::sqrt(static_cast<double>(k)); };
}

RunTrace subgradient(const std::vector<NodeProblem>& problems, const Graph& g,
                     const Eigen::MatrixXd& weights, const StepSchedule& schedule,
                     const StopRule& stop, const SubgradientOptions& opts) {
  validate_problems(problems, g);
  if (!schedule) throw std::invalid_argument("step schedule missing");
  if (stop.max_steps < 1) throw std::invalid_argument("max_steps must be >= 1");
  for (const auto& np : problems)
    if (!np.subgradient || !np.project)
      throw std::invalid_argument("subgradient baseline needs subgradient and projection oracles");
  if (weights.rows() != g.node_count || weights.cols() != g.node_count)
    throw std::invalid_argument("weight matrix size mismatch");
  for (int i = 0; i < g.node_count; ++i) {
    double row = weights.row(i).sum();
    double colsum = weights.col(i).sum();
    if (std::abs(row - 1.0) > 1e-9 || std::abs(colsum - 1.0) > 1e-9)
      throw std::invalid_argument("weights are not doubly stochastic");
    for (int j = 0; j < g.node_count; ++j) {
      if (weights(i, j) < 0.0) throw std::invalid_argument("weights must be nonnegative");
      bool allowed = i == j || std::binary_search(g.neighbors[i].begin(),
                                                  g.neighbors[i].end(), j);
      if (!allowed && weights(i, j) != 0.0)
        throw std::invalid_argument("weights present outside the graph sparsity");
    }
  }

  const int n = problems.front().dim;
  const auto nodes = all_nodes(g.node_count);
  std::vector<VectorXd> x = opts.start;
  if (x.empty()) x.assign(g.node_count, VectorXd::Zero(n));
  if (static_cast<int>(x.size()) != g.node_count)
    throw std::invalid_argument("start estimates size mismatch");
  std::vector<VectorXd> x_next = x;

  RunTrace trace;
  for (int k = 1; k <= stop.max_steps; ++k) {
    double alpha = schedule(k);
    run_nodes(opts.exec, nodes, k, [&](int p) {
      VectorXd mixed = weights(p, p) * x[p];
      for (int j : g.neighbors[p]) mixed += weights(p, j) * x[j];
      VectorXd step = mixed;
      if (alpha != 0.0) step -= alpha * problems[p].subgradient(mixed);
      x_next[p] = problems[p].project(step);
    });
    std::swap(x, x_next);

    double err = stop.rel_error(x);
    trace.records.push_back({k, err});
    if (opts.observer) opts.observer({k, x, {}});
    if (err <= stop.tol) {
      trace.termination = Termination::reached_tol;
      break;
    }
  }
  trace.final_stacked = stack(x);
  return trace;
}

Eigen::MatrixXd metropolis_weights(const Graph& g) {
  if (!is_connected(g)) throw std::invalid_argument("metropolis weights need a connected graph");
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(g.node_count, g.node_count);
  for (auto [i, j] : g.edges) {
    double value = 1.0 / (1.0 + std::max(g.degree(i), g.degree(j)));
    w(i, j) = value;
    w(j, i) = value;
  }
  for (int i = 0; i < g.node_count; ++i) w(i, i) = 1.0 - w.row(i).sum();
  return w;
}

RunTrace mm_gauss_seidel(const std::vector<NodeProblem>& problems, const Graph& g,
                         const Coloring& col, double rho, const InnerRule& inner,
                         const StopRule& stop, const RunOptions& opts) {
  validate_problems(problems, g);
  validate_coloring(g, col);
  if (rho <= 0.0) throw std::invalid_argument("rho must be positive");
  if (inner.max_sweeps < 1) throw std::invalid_argument("inner sweep cap must be >= 1");
  if (stop.max_steps < 1) throw std::invalid_argument("max_steps must be >= 1");

  const int n = problems.front().dim;
  const auto adj = edge_adjacency(g);
  std::vector<VectorXd> x(g.node_count, VectorXd::Zero(n));
  std::vector<VectorXd> lambda(g.edge_count(), VectorXd::Zero(n));
  std::vector<VectorXd> gamma(g.node_count, VectorXd::Zero(n));

  auto refresh_gamma = [&]() {
    for (int p = 0; p < g.node_count; ++p) {
      gamma[p].setZero();
      for (const auto& ref : adj[p])
        gamma[p] += ref.neighbor > p ? lambda[ref.edge] : -lambda[ref.edge];
    }
  };

  RunTrace trace;
  int step = 0;
  bool done = false;
  while (!done) {
    refresh_gamma();
    std::vector<VectorXd> sweep_start = x;
    for (int sweep = 0; sweep < inner.max_sweeps && !done; ++sweep) {
      for (const auto& members : col.classes) {
        run_nodes(opts.exec, members, step + 1, [&](int p) {
          VectorXd mixed = VectorXd::Zero(n);
          for (int j : g.neighbors[p]) mixed += x[j];  // latest values in place
          VectorXd v = gamma[p] - rho * mixed;
          x[p] = problems[p].solve(v, g.degree(p) * rho / 2.0);
        });
      }
      ++step;
      double err = stop.rel_error(x);
      trace.records.push_back({step, err});
      if (opts.observer) opts.observer({step, x, gamma});
      if (err <= stop.tol) {
        trace.termination = Termination::reached_tol;
        done = true;
        break;
      }
      if (step >= stop.max_steps) {
        done = true;
        break;
      }
      double change = 0.0, scale = 0.0;
      for (int p = 0; p < g.node_count; ++p) {
        change += (x[p] - sweep_start[p]).squaredNorm();
        scale += sweep_start[p].squaredNorm();
      }
      if (std::sqrt(change) <= inner.tol * (1.0 + std::sqrt(scale))) break;
      sweep_start = x;
    }
    if (done) break;
    // dual ascent with step rho on every edge
    for (int e = 0; e < g.edge_count(); ++e) {
      auto [i, j] = g.edges[e];
      lambda[e] += rho * (x[i] - x[j]);
    }
  }
  trace.final_stacked = stack(x);
  return trace;
}

long long comm_steps_total(const RunTrace& trace, const Graph& g) {
  return 2LL * g.edge_count() * trace.comm_steps();
}

void write_trace_csv(const RunTrace& trace, std::ostream& out) {
  out << "step,rel_error\n";
  char line[64];
  for (const auto& rec : trace.records) {
    std::snprintf(line, sizeof line, "%d,%.8e\n", rec.comm_step, rec.rel_error);
    out << line;
  }
}

}  // namespace dadmm
