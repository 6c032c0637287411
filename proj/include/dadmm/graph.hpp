#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

namespace dadmm {

// Undirected connected network. Nodes are 0-indexed internally; the edge-list
// file format is 1-indexed. Edges are stored as (i,j) with i < j, sorted.
struct Graph {
  int node_count = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> neighbors;

  int edge_count() const { return static_cast<int>(edges.size()); }
  int degree(int p) const { return static_cast<int>(neighbors[p].size()); }
};

// Proper node coloring with colors 1..color_count, every color used.
// classes[c-1] lists the nodes of color c in ascending order; iterating
// classes in order gives the color-sorted node ordering the solvers assume.
struct Coloring {
  std::vector<int> colors;
  int color_count = 0;
  std::vector<std::vector<int>> classes;
};

// Builds a graph from an edge set: validates, dedups, sorts, fills adjacency.
Graph make_graph(int node_count, std::vector<std::pair<int, int>> edges);

bool is_connected(const Graph& g);

// Random models. All are deterministic given the seed and retry toward
// density when a draw comes out disconnected (p and d grow by 5% per retry,
// Watts-Strogatz redraws with fresh randomness), up to 100 attempts.
Graph gen_erdos_renyi(int node_count, double p, std::uint64_t seed);
Graph gen_watts_strogatz(int node_count, int n, double p, std::uint64_t seed);
Graph gen_barabasi_albert(int node_count, std::uint64_t seed);
Graph gen_geometric(int node_count, double d, std::uint64_t seed);

// m-by-n grid with m*n = node_count and |m-n| minimized. Deterministic.
Graph gen_lattice(int node_count);

// Greedy coloring, largest degree first. Colors come out contiguous from 1.
Coloring greedy_color(const Graph& g);

// Node-arc incidence matrix, one column per edge (sorted order), +1 at the
// smaller endpoint and -1 at the larger.
Eigen::MatrixXd incidence_matrix(const Graph& g);

// Rows of the incidence matrix belonging to one color class (1-based color).
Eigen::MatrixXd incidence_rows(const Eigen::MatrixXd& b, const Coloring& col,
                               int color);

// Edge-list text format: "P E" then one "i j" line per edge, 1-indexed,
// ascending. Round-trips bit-exactly.
void write_edge_list(const Graph& g, std::ostream& out);
Graph read_edge_list(std::istream& in);

}  // namespace dadmm
