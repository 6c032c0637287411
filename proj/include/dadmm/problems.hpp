#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "dadmm/algorithms.hpp"

namespace dadmm {

// ---- instances ------------------------------------------------------------

struct ConsensusInstance {
  Eigen::VectorXd theta;   // one measurement per node
};

// min ||Ax-b||^2 + beta ||x||_1, rows split across `parts` nodes.
struct BpdnInstance {
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  double beta = 1.0;
  int parts = 1;
  std::vector<Eigen::MatrixXd> a_blocks;
  std::vector<Eigen::VectorXd> b_blocks;
};

// min ||x||_1 + (delta/2)||x||^2 s.t. ||Ax-b|| <= sigma, columns split
// across `parts` nodes; solved through its dual, so the shared node variable
// is the m-dimensional multiplier.
struct LassoInstance {
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  double sigma = 0.1;
  double delta = 1e-3;
  int parts = 1;
  std::vector<Eigen::MatrixXd> a_blocks;  // m x n_p
};

// Hard-margin separator: min ||s||^2 s.t. D(As - 1r) >= 1, rows split.
struct SvmInstance {
  Eigen::MatrixXd a;
  Eigen::VectorXd labels;  // +-1
  int parts = 1;
  std::vector<Eigen::MatrixXd> a_blocks;
  std::vector<Eigen::VectorXd> label_blocks;
};

using ProblemInstance =
    std::variant<ConsensusInstance, BpdnInstance, LassoInstance, SvmInstance>;

ConsensusInstance make_consensus_instance(const Eigen::VectorXd& theta);
BpdnInstance make_bpdn_instance(Eigen::MatrixXd a, Eigen::VectorXd b, double beta,
                                int parts);
LassoInstance make_lasso_instance(Eigen::MatrixXd a, Eigen::VectorXd b, double sigma,
                                  double delta, int parts);
SvmInstance make_svm_instance(Eigen::MatrixXd a, Eigen::VectorXd labels, int parts);

// ---- per-node solves -------------------------------------------------------

// argmin (x - theta_p)^2 + v x + c x^2 = (2 theta_p - v) / (2 (1 + c)).
double consensus_node_solve(double theta_p, double v, double c);

// argmin ||A_p x - b_p||^2 + (beta/parts)||x||_1 + v'x + c||x||^2 via the
// accelerated proximal solver. Throws on budget exhaustion.
Eigen::VectorXd bpdn_node_solve(const Eigen::MatrixXd& a_p, const Eigen::VectorXd& b_p,
                                double beta, int parts, const Eigen::VectorXd& v,
                                double c, const Eigen::VectorXd& start = {});

struct LassoNodeResult {
  Eigen::VectorXd lambda;
  bool converged = true;  // false: iteration cap hit, best iterate returned
};

// Dual node solve on the epigraph form: minimizes phi_p(lambda) +
// (b/parts + v)' lambda + (sigma/parts) t + c||lambda||^2 over ||lambda|| <= t
// and returns the lambda part.
LassoNodeResult lasso_node_solve(const Eigen::MatrixXd& a_p, const Eigen::VectorXd& b,
                                 double sigma, double delta, int parts,
                                 const Eigen::VectorXd& v, double c);

// argmin ||s||^2 + v'(s;r) + c||(s;r)||^2 s.t. D_p(A_p s - 1 r) >= 1.
// Needs c > 0 so the quadratic is strictly convex in r.
Eigen::VectorXd svm_node_solve(const Eigen::MatrixXd& a_p, const Eigen::VectorXd& d_p,
                               const Eigen::VectorXd& v, double c);

// Node problem set for any instance, ready for the distributed solvers.
// Lasso node solves warm-start from their previous call, so build a fresh
// set for every concurrent run; a set stays deterministic within one run.
std::vector<NodeProblem> make_node_problems(const ProblemInstance& instance);

// ---- centralized references -------------------------------------------------

double reference_consensus(const Eigen::VectorXd& theta);
Eigen::VectorXd reference_bpdn(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                               double beta);

struct LassoReference {
  Eigen::VectorXd lambda;  // dual solution, the distributed target
  Eigen::VectorXd x;       // primal recovered through the closed-form map
};
LassoReference reference_lasso(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                               double sigma, double delta);

Eigen::VectorXd reference_svm(const Eigen::MatrixXd& a, const Eigen::VectorXd& labels);

// Reference in the node-copy space (what StopRule compares against).
Eigen::VectorXd reference_solution(const ProblemInstance& instance);

// Primal estimate for a converged distributed lasso run: node p contributes
// the block x_p(lambda_p).
Eigen::VectorXd lasso_recover_primal(const LassoInstance& instance,
                                     const std::vector<Eigen::VectorXd>& lambdas);

// ---- synthetic data ----------------------------------------------------------

struct CsInstance {
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  Eigen::VectorXd x_true;
};

CsInstance gen_gaussian_cs(int m, int n, int sparsity, double noise_std,
                           std::uint64_t seed);
CsInstance gen_partial_dct_cs(int m, int n, int sparsity, double noise_std,
                              std::uint64_t seed);
SvmInstance gen_separable_svm(int m, int n, double margin, std::uint64_t seed,
                              int parts);

// ---- partitioning -------------------------------------------------------------

// Contiguous balanced ranges (start, length), sizes differing by at most one,
// larger blocks first.
std::vector<std::pair<int, int>> partition_ranges(int total, int parts);

struct RowPartition {
  std::vector<Eigen::MatrixXd> a_blocks;
  std::vector<Eigen::VectorXd> b_blocks;
};
RowPartition partition_rows(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                            int parts, const std::string& pattern = "contiguous");
std::vector<Eigen::MatrixXd> partition_cols(const Eigen::MatrixXd& a, int parts,
                                            const std::string& pattern = "contiguous");

// ---- serialization --------------------------------------------------------------

// Text format: a small header (kind, dims, parameters) followed by dense
// matrices, one row per line, 17 significant digits. Round-trips exactly.
void save_instance(const ProblemInstance& instance, std::ostream& out);
ProblemInstance load_instance(std::istream& in);

}  // namespace dadmm
