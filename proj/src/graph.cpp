#include "dadmm/graph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <queue>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

namespace dadmm {

namespace {

constexpr int kConnectivityRetries = 100;

std::pair<int, int> ordered(int i, int j) {
  return i < j ? std::pair{i, j} : std::pair{j, i};
}

}  // namespace

Graph make_graph(int node_count, std::vector<std::pair<int, int>> edges) {
  if (node_count < 1) throw std::invalid_argument("graph needs at least one node");
  for (auto& e : edges) {
    e = ordered(e.first, e.second);
    if (e.first == e.second) throw std::invalid_argument("self-loop");
    if (e.first < 0 || e.second >= node_count)
      throw std::invalid_argument("edge endpoint out of range");
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  Graph g;
  g.node_count = node_count;
  g.edges = std::move(edges);
  g.neighbors.assign(node_count, {});
  for (auto [i, j] : g.edges) {
    g.neighbors[i].push_back(j);
    g.neighbors[j].push_back(i);
  }
  for (auto& adj : g.neighbors) std::sort(adj.begin(), adj.end());
  return g;
}

bool is_connected(const Graph& g) {
  if (g.node_count == 0) return false;
  std::vector<char> seen(g.node_count, 0);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = 1;
  int count = 1;
  while (!frontier.empty()) {
    int p = frontier.front();
    frontier.pop();
    for (int j : g.neighbors[p]) {
      if (!seen[j]) {
        seen[j] = 1;
        ++count;
        frontier.push(j);
      }
    }
  }
  return count == g.node_count;
}

Graph gen_erdos_renyi(int node_count, double p, std::uint64_t seed) {
  if (node_count < 2) throw std::invalid_argument("erdos-renyi needs >= 2 nodes");
  if (p <= 0.0 || p > 1.0) throw std::invalid_argument("edge probability in (0,1]");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  double prob = p;
  for (int attempt = 0; attempt < kConnectivityRetries; ++attempt) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < node_count; ++i)
      for (int j = i + 1; j < node_count; ++j)
        if (coin(rng) < prob) edges.emplace_back(i, j);
    Graph g = make_graph(node_count, std::move(edges));
    if (is_connected(g)) return g;
    prob = std::min(1.0, 1.05 * prob);
  }
  throw std::runtime_error("erdos-renyi: no connected graph after retries");
}

Graph gen_watts_strogatz(int node_count, int n, double p, std::uint64_t seed) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("watts-strogatz: n must be even and >= 2");
  if (node_count <= n) throw std::invalid_argument("watts-strogatz: need node_count > n");
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("rewire probability in [0,1]");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> any_node(0, node_count - 1);

  for (int attempt = 0; attempt < kConnectivityRetries; ++attempt) {
    // Ring lattice: each node linked to its n/2 nearest neighbors per side.
    std::set<std::pair<int, int>> edge_set;
    for (int i = 0; i < node_count; ++i)
      for (int step = 1; step <= n / 2; ++step)
        edge_set.insert(ordered(i, (i + step) % node_count));

    // Rewire each lattice edge with probability p: one endpoint keeps the
    // link and gets a fresh partner; duplicates and self-loops are redrawn.
    std::vector<std::pair<int, int>> original(edge_set.begin(), edge_set.end());
    for (auto edge : original) {
      if (coin(rng) >= p) continue;
      int keep = coin(rng) < 0.5 ? edge.first : edge.second;
      int partner = -1;
      for (int tries = 0; tries < 4 * node_count; ++tries) {
        int candidate = any_node(rng);
        if (candidate == keep) continue;
        if (edge_set.count(ordered(keep, candidate))) continue;
        partner = candidate;
        break;
      }
      if (partner < 0) continue;  // node saturated, leave the edge alone
      edge_set.erase(edge);
      edge_set.insert(ordered(keep, partner));
    }

    Graph g = make_graph(node_count, {edge_set.begin(), edge_set.end()});
    if (is_connected(g)) return g;
    // retry with fresh randomness only; parameters stay fixed
  }
  throw std::runtime_error("watts-strogatz: no connected graph after retries");
}

Graph gen_barabasi_albert(int node_count, std::uint64_t seed) {
  if (node_count < 3) throw std::invalid_argument("barabasi-albert needs >= 3 nodes");
  std::mt19937_64 rng(seed);
  // Start from a single edge {0,1}; each new node attaches to 2 distinct
  // existing nodes drawn proportionally to degree (without replacement).
  std::vector<std::pair<int, int>> edges = {{0, 1}};
  std::vector<int> endpoint_pool = {0, 1};  // each node repeated deg times
  for (int v = 2; v < node_count; ++v) {
    std::uniform_int_distribution<std::size_t> pick(0, endpoint_pool.size() - 1);
    int first = endpoint_pool[pick(rng)];
    int second = first;
    while (second == first) second = endpoint_pool[pick(rng)];
    edges.emplace_back(first, v);
    edges.emplace_back(second, v);
    endpoint_pool.push_back(first);
    endpoint_pool.push_back(second);
    endpoint_pool.push_back(v);
    endpoint_pool.push_back(v);
  }
  return make_graph(node_count, std::move(edges));
}

Graph gen_geometric(int node_count, double d, std::uint64_t seed) {
  if (node_count < 2) throw std::invalid_argument("geometric needs >= 2 nodes");
  if (d <= 0.0) throw std::invalid_argument("geometric: d must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double radius = d;
  for (int attempt = 0; attempt < kConnectivityRetries; ++attempt) {
    std::vector<double> x(node_count), y(node_count);
    for (int i = 0; i < node_count; ++i) {
      x[i] = unit(rng);
      y[i] = unit(rng);
    }
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < node_count; ++i)
      for (int j = i + 1; j < node_count; ++j)
        if (std::hypot(x[i] - x[j], y[i] - y[j]) < radius) edges.emplace_back(i, j);
    Graph g = make_graph(node_count, std::move(edges));
    if (is_connected(g)) return g;
    radius *= 1.05;
  }
  throw std::runtime_error("geometric: no connected graph after retries");
}

Graph gen_lattice(int node_count) {
  if (node_count < 2) throw std::invalid_argument("lattice needs >= 2 nodes");
  int rows = 1;
  for (int m = 1; m * m <= node_count; ++m)
    if (node_count % m == 0) rows = m;
  int cols = node_count / rows;
  auto id = [cols](int r, int c) { return r * cols + c; };
  std::vector<std::pair<int, int>> edges;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 < rows) edges.emplace_back(id(r, c), id(r + 1, c));
    }
  return make_graph(node_count, std::move(edges));
}

Coloring greedy_color(const Graph& g) {
  std::vector<int> order(g.node_count);
  for (int i = 0; i < g.node_count; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return g.degree(a) > g.degree(b); });

  Coloring col;
  col.colors.assign(g.node_count, 0);
  for (int p : order) {
    std::vector<char> used(g.degree(p) + 2, 0);
    for (int j : g.neighbors[p]) {
      int cj = col.colors[j];
      if (cj > 0 && cj < static_cast<int>(used.size())) used[cj] = 1;
    }
    int c = 1;
    while (used[c]) ++c;
    col.colors[p] = c;
    col.color_count = std::max(col.color_count, c);
  }
  col.classes.assign(col.color_count, {});
  for (int p = 0; p < g.node_count; ++p) col.classes[col.colors[p] - 1].push_back(p);
  return col;
}

Eigen::MatrixXd incidence_matrix(const Graph& g) {
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(g.node_count, g.edge_count());
  for (int e = 0; e < g.edge_count(); ++e) {
    b(g.edges[e].first, e) = 1.0;
    b(g.edges[e].second, e) = -1.0;
  }
  return b;
}

Eigen::MatrixXd incidence_rows(const Eigen::MatrixXd& b, const Coloring& col,
                               int color) {
  const auto& members = col.classes.at(color - 1);
  Eigen::MatrixXd block(members.size(), b.cols());
  for (std::size_t i = 0; i < members.size(); ++i) block.row(i) = b.row(members[i]);
  return block;
}

void write_edge_list(const Graph& g, std::ostream& out) {
  out << g.node_count << ' ' << g.edge_count() << '\n';
  for (auto [i, j] : g.edges) out << i + 1 << ' ' << j + 1 << '\n';
}

Graph read_edge_list(std::istream& in) {
  int node_count = 0, edge_count = 0;
  if (!(in >> node_count >> edge_count)) throw std::runtime_error("bad edge-list header");
  std::vector<std::pair<int, int>> edges(edge_count);
  for (auto& [i, j] : edges) {
    if (!(in >> i >> j)) throw std::runtime_error("truncated edge list");
    --i;
    --j;
  }
  return make_graph(node_count, std::move(edges));
}

}  // namespace dadmm
