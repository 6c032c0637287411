#include "dadmm/problems.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <memory>
#include <random>
#include <stdexcept>

#include "dadmm/solvers.hpp"

namespace dadmm {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

VectorXd sign_vector(const VectorXd& x) {
  VectorXd s(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i)
    s[i] = x[i] > 0.0 ? 1.0 : (x[i] < 0.0 ? -1.0 : 0.0);
  return s;
}

// Shared core of the BPDN solves: smooth part ||A x - b||^2 + v'x + c||x||^2
// with the l1 weight handled by the prox.
FistaResult bpdn_fista(const MatrixXd& a, const VectorXd& b, double tau,
                       const VectorXd& v, double c, double a_norm_sq,
                       const VectorXd& start, double tol, int max_iters) {
  ProxProblem prob;
  prob.grad = [&a, &b, &v, c](const VectorXd& x) -> VectorXd {
    return 2.0 * (a.transpose() * (a * x - b)) + v + 2.0 * c * x;
  };
  prob.lipschitz = 2.0 * a_norm_sq + 2.0 * c;
  prob.prox = [tau](const VectorXd& eta, double step) {
    return soft_threshold(eta, tau * step);
  };
  prob.objective = [&a, &b, tau, &v, c](const VectorXd& x) {
    return (a * x - b).squaredNorm() + tau * x.lpNorm<1>() + v.dot(x) +
           c * x.squaredNorm();
  };
  prob.start = start.size() ? start : VectorXd::Zero(a.cols());
  prob.tol = tol;
  prob.max_iters = max_iters;
  return fista(prob);
}

// Dual lasso solve over z = (lambda; t). Returns the full epigraph point.
FistaResult lasso_fista(const MatrixXd& a_p, const VectorXd& b, double sigma,
                        double delta, int parts, const VectorXd& v, double c,
                        double a_norm_sq, double tol, int max_iters,
                        const VectorXd& start = {}) {
  const Eigen::Index m = b.size();
  VectorXd linear = b / parts + v;
  ProxProblem prob;
  prob.grad = [&a_p, linear, sigma, delta, parts, c, m](const VectorXd& z) -> VectorXd {
    VectorXd lambda = z.head(m);
    VectorXd g(m + 1);
    g.head(m) = phi_gradient(a_p, lambda, delta) + linear + 2.0 * c * lambda;
    g[m] = sigma / parts;
    return g;
  };
  prob.lipschitz = a_norm_sq / delta + 2.0 * c;
  if (prob.lipschitz <= 0.0) prob.lipschitz = 1.0;  // zero block, any step works
  prob.prox = [m](const VectorXd& z, double) -> VectorXd {
    SocPoint projected = project_soc({z.head(m), z[m]});
    VectorXd out(m + 1);
    out.head(m) = projected.lambda;
    out[m] = projected.t;
    return out;
  };
  prob.objective = [&a_p, linear, sigma, delta, parts, c, m](const VectorXd& z) {
    VectorXd lambda = z.head(m);
    return phi_value(a_p, lambda, delta) + linear.dot(lambda) +
           c * lambda.squaredNorm() + sigma / parts * z[m];
  };
  prob.start = start.size() ? start : VectorXd::Zero(m + 1);
  prob.tol = tol;
  prob.max_iters = max_iters;
  return fista(prob);
}

}  // namespace

// ---- instances ------------------------------------------------------------

ConsensusInstance make_consensus_instance(const VectorXd& theta) {
  if (theta.size() < 1) throw std::invalid_argument("consensus needs at least one node");
  return {theta};
}

BpdnInstance make_bpdn_instance(MatrixXd a, VectorXd b, double beta, int parts) {
  if (beta <= 0.0) throw std::invalid_argument("beta must be positive");
  if (a.rows() != b.size()) throw std::invalid_argument("A and b row mismatch");
  BpdnInstance inst{std::move(a), std::move(b), beta, parts, {}, {}};
  auto part = partition_rows(inst.a, inst.b, parts);
  inst.a_blocks = std::move(part.a_blocks);
  inst.b_blocks = std::move(part.b_blocks);
  return inst;
}

LassoInstance make_lasso_instance(MatrixXd a, VectorXd b, double sigma, double delta,
                                  int parts) {
  if (sigma <= 0.0 || delta <= 0.0)
    throw std::invalid_argument("sigma and delta must be positive");
  if (a.rows() != b.size()) throw std::invalid_argument("A and b row mismatch");
  LassoInstance inst{std::move(a), std::move(b), sigma, delta, parts, {}};
  inst.a_blocks = partition_cols(inst.a, parts);
  return inst;
}

SvmInstance make_svm_instance(MatrixXd a, VectorXd labels, int parts) {
  if (a.rows() != labels.size()) throw std::invalid_argument("data and label mismatch");
  for (Eigen::Index i = 0; i < labels.size(); ++i)
    if (labels[i] != 1.0 && labels[i] != -1.0)
      throw std::invalid_argument("labels must be +-1");
  SvmInstance inst{std::move(a), std::move(labels), parts, {}, {}};
  auto part = partition_rows(inst.a, inst.labels, parts);
  inst.a_blocks = std::move(part.a_blocks);
  inst.label_blocks = std::move(part.b_blocks);
  return inst;
}

// ---- per-node solves --------------------------------------------------------

double consensus_node_solve(double theta_p, double v, double c) {
  if (c < 0.0) throw std::invalid_argument("c must be nonnegative");
  return (2.0 * theta_p - v) / (2.0 * (1.0 + c));
}

VectorXd bpdn_node_solve(const MatrixXd& a_p, const VectorXd& b_p, double beta,
                         int parts, const VectorXd& v, double c,
                         const VectorXd& start) {
  if (c < 0.0) throw std::invalid_argument("c must be nonnegative");
  auto res = bpdn_fista(a_p, b_p, beta / parts, v, c, spectral_norm_sq(a_p), start,
                        1e-8, 500);
  if (!res.converged) {
    VectorXd grad = 2.0 * (a_p.transpose() * (a_p * res.x - b_p)) + v + 2.0 * c * res.x;
    throw std::runtime_error("bpdn node solve: iteration budget exhausted, residual " +
                             std::to_string(grad.norm()));
  }
  return res.x;
}

LassoNodeResult lasso_node_solve(const MatrixXd& a_p, const VectorXd& b, double sigma,
                                 double delta, int parts, const VectorXd& v, double c) {
  if (delta <= 0.0) throw std::invalid_argument("delta must be positive");
  if (c < 0.0) throw std::invalid_argument("c must be nonnegative");
  auto res = lasso_fista(a_p, b, sigma, delta, parts, v, c, spectral_norm_sq(a_p),
                         1e-8, 500);
  return {res.x.head(b.size()), res.converged};
}

VectorXd svm_node_solve(const MatrixXd& a_p, const VectorXd& d_p, const VectorXd& v,
                        double c) {
  if (c <= 0.0) throw std::invalid_argument("svm node solve needs c > 0");
  const Eigen::Index n = a_p.cols();
  VectorXd q_diag(n + 1);
  q_diag.head(n).setConstant(2.0 * (1.0 + c));
  q_diag[n] = 2.0 * c;
  MatrixXd g(a_p.rows(), n + 1);
  g.leftCols(n) = d_p.asDiagonal() * a_p;
  g.col(n) = -d_p;
  VectorXd h = VectorXd::Ones(a_p.rows());
  return qp_solve(q_diag, v, g, h, 1e-9).z;
}

std::vector<NodeProblem> make_node_problems(const ProblemInstance& instance) {
  std::vector<NodeProblem> problems;

  if (const auto* cons = std::get_if<ConsensusInstance>(&instance)) {
    for (Eigen::Index p = 0; p < cons->theta.size(); ++p) {
      double theta = cons->theta[p];
      NodeProblem np;
      np.dim = 1;
      np.solve = [theta](const VectorXd& v, double c) {
        VectorXd x(1);
        x[0] = consensus_node_solve(theta, v[0], c);
        return x;
      };
      np.subgradient = [theta](const VectorXd& x) {
        VectorXd g(1);
        g[0] = 2.0 * (x[0] - theta);
        return g;
      };
      np.project = [](const VectorXd& x) { return x; };
      problems.push_back(std::move(np));
    }
    return problems;
  }

  if (const auto* bpdn = std::get_if<BpdnInstance>(&instance)) {
    double tau = bpdn->beta / bpdn->parts;
    for (int p = 0; p < bpdn->parts; ++p) {
      MatrixXd a_p = bpdn->a_blocks[p];
      VectorXd b_p = bpdn->b_blocks[p];
      double norm_sq = spectral_norm_sq(a_p);
      NodeProblem np;
      np.dim = static_cast<int>(bpdn->a.cols());
      np.solve = [a_p, b_p, tau, norm_sq](const VectorXd& v, double c) {
        auto res = bpdn_fista(a_p, b_p, tau, v, c, norm_sq, {}, 1e-8, 500);
        if (!res.converged)
          throw std::runtime_error("bpdn node solve: iteration budget exhausted");
        return res.x;
      };
      np.subgradient = [a_p, b_p, tau](const VectorXd& x) -> VectorXd {
        return 2.0 * (a_p.transpose() * (a_p * x - b_p)) + tau * sign_vector(x);
      };
      np.project = [](const VectorXd& x) { return x; };
      problems.push_back(std::move(np));
    }
    return problems;
  }

  if (const auto* lasso = std::get_if<LassoInstance>(&instance)) {
    for (int p = 0; p < lasso->parts; ++p) {
      MatrixXd a_p = lasso->a_blocks[p];
      VectorXd b = lasso->b;
      double sigma = lasso->sigma, delta = lasso->delta;
      int parts = lasso->parts;
      double norm_sq = spectral_norm_sq(a_p);
      NodeProblem np;
      np.dim = static_cast<int>(lasso->b.size());
      // Warm-started across calls: successive subproblems differ only in v,
      // and the 1/delta curvature makes cold 500-iteration solves too coarse
      // for the outer loop to pass through. One cache per node, so a problem
      // set must not be shared between concurrent runs.
      auto cache = std::make_shared<VectorXd>();
      np.solve = [a_p, b, sigma, delta, parts, norm_sq, cache](const VectorXd& v,
                                                               double c) {
        auto res =
            lasso_fista(a_p, b, sigma, delta, parts, v, c, norm_sq, 1e-8, 500, *cache);
        *cache = res.x;
        return VectorXd(res.x.head(b.size()));
      };
      np.subgradient = [a_p, b, sigma, delta, parts](const VectorXd& lambda) -> VectorXd {
        VectorXd g = phi_gradient(a_p, lambda, delta) + b / parts;
        double norm = lambda.norm();
        if (norm > 0.0) g += (sigma / parts / norm) * lambda;
        return g;
      };
      np.project = [](const VectorXd& x) { return x; };
      problems.push_back(std::move(np));
    }
    return problems;
  }

  const auto& svm = std::get<SvmInstance>(instance);
  const Eigen::Index n = svm.a.cols();
  for (int p = 0; p < svm.parts; ++p) {
    MatrixXd a_p = svm.a_blocks[p];
    VectorXd d_p = svm.label_blocks[p];
    NodeProblem np;
    np.dim = static_cast<int>(n) + 1;
    np.solve = [a_p, d_p](const VectorXd& v, double c) {
      return svm_node_solve(a_p, d_p, v, c);
    };
    np.subgradient = [n](const VectorXd& x) {
      VectorXd g = VectorXd::Zero(n + 1);
      g.head(n) = 2.0 * x.head(n);
      return g;
    };
    np.project = [a_p, d_p, n](const VectorXd& y) {
      MatrixXd g(a_p.rows(), n + 1);
      g.leftCols(n) = d_p.asDiagonal() * a_p;
      g.col(n) = -d_p;
      return qp_solve(VectorXd::Constant(n + 1, 2.0), VectorXd(-2.0 * y), g,
                      VectorXd::Ones(a_p.rows()), 1e-9)
          .z;
    };
    problems.push_back(std::move(np));
  }
  return problems;
}

// ---- centralized references ----------------------------------------------------

double reference_consensus(const VectorXd& theta) { return theta.mean(); }

VectorXd reference_bpdn(const MatrixXd& a, const VectorXd& b, double beta) {
  auto res = bpdn_fista(a, b, beta, VectorXd::Zero(a.cols()), 0.0,
                        spectral_norm_sq(a), {}, 1e-10, 100000);
  if (!res.converged) throw std::runtime_error("bpdn reference: budget exhausted");
  return res.x;
}

LassoReference reference_lasso(const MatrixXd& a, const VectorXd& b, double sigma,
                               double delta) {
  auto res = lasso_fista(a, b, sigma, delta, 1, VectorXd::Zero(b.size()), 0.0,
                         spectral_norm_sq(a), 1e-10, 100000);
  if (!res.converged) throw std::runtime_error("lasso reference: budget exhausted");
  VectorXd lambda = res.x.head(b.size());
  return {lambda, x_of_lambda(a, lambda, delta)};
}

VectorXd reference_svm(const MatrixXd& a, const VectorXd& labels) {
  const Eigen::Index n = a.cols();
  MatrixXd g(a.rows(), n + 1);
  g.leftCols(n) = labels.asDiagonal() * a;
  g.col(n) = -labels;
  VectorXd h = VectorXd::Ones(a.rows());
  VectorXd q_diag = VectorXd::Constant(n + 1, 2.0);

  // The intercept carries no quadratic term of its own, which the dual-ascent
  // solver cannot take directly; proximal rounds on the intercept converge to
  // the exact separator because its optimum is unique.
  double anchor = 0.0;
  VectorXd z;
  for (int round = 0; round < 200; ++round) {
    VectorXd q_lin = VectorXd::Zero(n + 1);
    q_lin[n] = -2.0 * anchor;
    z = qp_solve(q_diag, q_lin, g, h, 1e-12).z;
    if (std::abs(z[n] - anchor) <= 1e-12 * (1.0 + std::abs(z[n]))) return z;
    anchor = z[n];
  }
  throw std::runtime_error("svm reference: proximal rounds did not settle");
}

VectorXd reference_solution(const ProblemInstance& instance) {
  if (const auto* cons = std::get_if<ConsensusInstance>(&instance)) {
    VectorXd ref(1);
    ref[0] = reference_consensus(cons->theta);
    return ref;
  }
  if (const auto* bpdn = std::get_if<BpdnInstance>(&instance))
    return reference_bpdn(bpdn->a, bpdn->b, bpdn->beta);
  if (const auto* lasso = std::get_if<LassoInstance>(&instance))
    return reference_lasso(lasso->a, lasso->b, lasso->sigma, lasso->delta).lambda;
  const auto& svm = std::get<SvmInstance>(instance);
  return reference_svm(svm.a, svm.labels);
}

VectorXd lasso_recover_primal(const LassoInstance& instance,
                              const std::vector<VectorXd>& lambdas) {
  if (static_cast<int>(lambdas.size()) != instance.parts)
    throw std::invalid_argument("need one lambda per node");
  VectorXd x(instance.a.cols());
  Eigen::Index offset = 0;
  for (int p = 0; p < instance.parts; ++p) {
    Eigen::Index width = instance.a_blocks[p].cols();
    x.segment(offset, width) =
        x_of_lambda(instance.a_blocks[p], lambdas[p], instance.delta);
    offset += width;
  }
  return x;
}

// ---- synthetic data ---------------------------------------------------------------

namespace {

VectorXd sparse_spike_train(int n, int sparsity, std::mt19937_64& rng) {
  std::vector<int> positions(n);
  for (int i = 0; i < n; ++i) positions[i] = i;
  for (int i = 0; i < sparsity; ++i) {
    std::uniform_int_distribution<int> pick(i, n - 1);
    std::swap(positions[i], positions[pick(rng)]);
  }
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  VectorXd x = VectorXd::Zero(n);
  for (int i = 0; i < sparsity; ++i) x[positions[i]] = coin(rng) < 0.5 ? 1.0 : -1.0;
  return x;
}

VectorXd noisy_measurement(const MatrixXd& a, const VectorXd& x, double noise_std,
                           std::mt19937_64& rng) {
  VectorXd b = a * x;
  if (noise_std > 0.0) {
    std::normal_distribution<double> noise(0.0, noise_std);
    for (Eigen::Index i = 0; i < b.size(); ++i) b[i] += noise(rng);
  }
  return b;
}

}  // namespace

CsInstance gen_gaussian_cs(int m, int n, int sparsity, double noise_std,
                           std::uint64_t seed) {
  if (!(sparsity < m && m < n)) throw std::invalid_argument("need sparsity < m < n");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  MatrixXd a(m, n);
  double scale = 1.0 / std::sqrt(static_cast<double>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = gauss(rng) * scale;
  VectorXd x = sparse_spike_train(n, sparsity, rng);
  return {a, noisy_measurement(a, x, noise_std, rng), x};
}

CsInstance gen_partial_dct_cs(int m, int n, int sparsity, double noise_std,
                              std::uint64_t seed) {
  if (!(sparsity < m && m < n)) throw std::invalid_argument("need sparsity < m < n");
  std::mt19937_64 rng(seed);

  // m distinct rows of the orthonormal DCT-II matrix, chosen uniformly
  std::vector<int> rows(n);
  for (int i = 0; i < n; ++i) rows[i] = i;
  for (int i = 0; i < m; ++i) {
    std::uniform_int_distribution<int> pick(i, n - 1);
    std::swap(rows[i], rows[pick(rng)]);
  }
  std::sort(rows.begin(), rows.begin() + m);

  MatrixXd a(m, n);
  for (int i = 0; i < m; ++i) {
    int j = rows[i];
    double amp = j == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
    for (int col = 0; col < n; ++col)
      a(i, col) = amp * std::cos(std::numbers::pi * (2.0 * col + 1.0) * j / (2.0 * n));
  }
  VectorXd x = sparse_spike_train(n, sparsity, rng);
  return {a, noisy_measurement(a, x, noise_std, rng), x};
}

SvmInstance gen_separable_svm(int m, int n, double margin, std::uint64_t seed,
                              int parts) {
  if (margin <= 0.0) throw std::invalid_argument("margin must be positive");
  if (m < 2) throw std::invalid_argument("need at least two points");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  VectorXd direction(n);
  do {
    for (int i = 0; i < n; ++i) direction[i] = gauss(rng);
  } while (direction.norm() == 0.0);
  direction.normalize();

  MatrixXd a(m, n);
  VectorXd labels(m);
  int positives = (m + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double label = i < positives ? 1.0 : -1.0;
    VectorXd center = label * (margin + 1.0) * direction;
    VectorXd point(n);
    do {
      for (int j = 0; j < n; ++j) point[j] = center[j] + gauss(rng);
    } while (label * direction.dot(point) < margin);
    a.row(i) = point;
    labels[i] = label;
  }
  return make_svm_instance(std::move(a), std::move(labels), parts);
}

// ---- partitioning --------------------------------------------------------------------

std::vector<std::pair<int, int>> partition_ranges(int total, int parts) {
  if (parts < 1 || parts > total)
    throw std::invalid_argument("parts must be in [1, total]");
  std::vector<std::pair<int, int>> ranges;
  int base = total / parts, extra = total % parts;
  int start = 0;
  for (int p = 0; p < parts; ++p) {
    int len = base + (p < extra ? 1 : 0);
    ranges.emplace_back(start, len);
    start += len;
  }
  return ranges;
}

RowPartition partition_rows(const MatrixXd& a, const VectorXd& b, int parts,
                            const std::string& pattern) {
  if (pattern != "contiguous")
    throw std::invalid_argument("unsupported partition pattern: " + pattern);
  RowPartition out;
  for (auto [start, len] : partition_ranges(static_cast<int>(a.rows()), parts)) {
    out.a_blocks.emplace_back(a.middleRows(start, len));
    out.b_blocks.emplace_back(b.segment(start, len));
  }
  return out;
}

std::vector<MatrixXd> partition_cols(const MatrixXd& a, int parts,
                                     const std::string& pattern) {
  if (pattern != "contiguous")
    throw std::invalid_argument("unsupported partition pattern: " + pattern);
  std::vector<MatrixXd> blocks;
  for (auto [start, len] : partition_ranges(static_cast<int>(a.cols()), parts))
    blocks.emplace_back(a.middleCols(start, len));
  return blocks;
}

// ---- serialization ------------------------------------------------------------------------

namespace {

void write_matrix(std::ostream& out, const char* name, const MatrixXd& m) {
  out << name << ' ' << m.rows() << ' ' << m.cols() << '\n';
  char buf[32];
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
      out << buf << (j + 1 == m.cols() ? '\n' : ' ');
    }
  }
}

void write_vector(std::ostream& out, const char* name, const VectorXd& v) {
  write_matrix(out, name, v.transpose());
}

MatrixXd read_matrix(std::istream& in, const std::string& expect) {
  std::string name;
  Eigen::Index rows = 0, cols = 0;
  if (!(in >> name >> rows >> cols) || name != expect)
    throw std::runtime_error("instance file: expected matrix " + expect);
  MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j)
      if (!(in >> m(i, j))) throw std::runtime_error("instance file: truncated matrix");
  return m;
}

VectorXd read_vector(std::istream& in, const std::string& expect) {
  return read_matrix(in, expect).transpose();
}

double read_param(std::istream& in, const std::string& expect) {
  std::string name;
  double value = 0.0;
  if (!(in >> name >> value) || name != expect)
    throw std::runtime_error("instance file: expected parameter " + expect);
  return value;
}

void write_param(std::ostream& out, const char* name, double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  out << name << ' ' << buf << '\n';
}

}  // namespace

void save_instance(const ProblemInstance& instance, std::ostream& out) {
  if (const auto* cons = std::get_if<ConsensusInstance>(&instance)) {
    out << "kind consensus\n";
    write_vector(out, "theta", cons->theta);
    return;
  }
  if (const auto* bpdn = std::get_if<BpdnInstance>(&instance)) {
    out << "kind bpdn\n";
    write_param(out, "beta", bpdn->beta);
    write_param(out, "parts", bpdn->parts);
    write_matrix(out, "A", bpdn->a);
    write_vector(out, "b", bpdn->b);
    return;
  }
  if (const auto* lasso = std::get_if<LassoInstance>(&instance)) {
    out << "kind lasso\n";
    write_param(out, "sigma", lasso->sigma);
    write_param(out, "delta", lasso->delta);
    write_param(out, "parts", lasso->parts);
    write_matrix(out, "A", lasso->a);
    write_vector(out, "b", lasso->b);
    return;
  }
  const auto& svm = std::get<SvmInstance>(instance);
  out << "kind svm\n";
  write_param(out, "parts", svm.parts);
  write_matrix(out, "A", svm.a);
  write_vector(out, "labels", svm.labels);
}

ProblemInstance load_instance(std::istream& in) {
  std::string tag, kind;
  if (!(in >> tag >> kind) || tag != "kind")
    throw std::runtime_error("instance file: missing kind header");
  if (kind == "consensus") {
    return make_consensus_instance(read_vector(in, "theta"));
  }
  if (kind == "bpdn") {
    double beta = read_param(in, "beta");
    int parts = static_cast<int>(read_param(in, "parts"));
    MatrixXd a = read_matrix(in, "A");
    VectorXd b = read_vector(in, "b");
    return make_bpdn_instance(std::move(a), std::move(b), beta, parts);
  }
  if (kind == "lasso") {
    double sigma = read_param(in, "sigma");
    double delta = read_param(in, "delta");
    int parts = static_cast<int>(read_param(in, "parts"));
    MatrixXd a = read_matrix(in, "A");
    VectorXd b = read_vector(in, "b");
    return make_lasso_instance(std::move(a), std::move(b), sigma, delta, parts);
  }
  if (kind == "svm") {
    int parts = static_cast<int>(read_param(in, "parts"));
    MatrixXd a = read_matrix(in, "A");
    VectorXd labels = read_vector(in, "labels");
    return make_svm_instance(std::move(a), std::move(labels), parts);
  }
  throw std::runtime_error("instance file: unknown kind " + kind);
}

}  // namespace dadmm
