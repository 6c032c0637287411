#pragma once

#include <Eigen/Dense>
#include <functional>
#include <stdexcept>

namespace dadmm {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Composite problem min f(x) + g(x) with f smooth (gradient Lipschitz with
// constant `lipschitz`) and g handled through its prox map.
struct ProxProblem {
  std::function<Vector(const Vector&)> grad;      // gradient of f
  double lipschitz = 0.0;
  // prox(eta, step) = argmin_z g(z) + (1/(2*step)) ||z - eta||^2, called with
  // step = 1/L. Leave empty for g = 0. Must be idempotent when g is an
  // indicator (a projection).
  std::function<Vector(const Vector&, double)> prox;
  Vector start;
  int max_iters = 500;
  double tol = 1e-8;      // stop when ||x^{k+1} - x^k|| <= tol * (1 + ||x^k||)
  bool accelerated = true;
  // Optional composite objective f+g; enables restart on objective increase
  // for the accelerated variant.
  std::function<double(const Vector&)> objective;
};

struct FistaResult {
  Vector x;
  int iterations = 0;
  bool converged = false;
};

// Accelerated proximal gradient with the t_k momentum sequence
// t_{k+1} = (1 + sqrt(1 + 4 t_k^2))/2; plain proximal gradient when
// accelerated = false. Throws on non-finite oracle output.
FistaResult fista(const ProxProblem& p);

// Componentwise sign(x_i) * max(|x_i| - tau, 0); the prox of tau*||.||_1.
Vector soft_threshold(const Vector& x, double tau);

// Point (lambda, t); membership in the cone is ||lambda|| <= t.
struct SocPoint {
  Vector lambda;
  double t = 0.0;
};

// Euclidean projection onto {(lambda, t) : ||lambda|| <= t}.
SocPoint project_soc(const SocPoint& q);

// Minimizer of ||x||_1 + (A' lambda)' x + (delta/2) ||x||^2, componentwise:
// with r = A' lambda, x_i = -(r_i + 1)/delta if r_i < -1,
// -(r_i - 1)/delta if r_i > 1, and 0 otherwise.
Vector x_of_lambda(const Matrix& a, const Vector& lambda, double delta);

// Value of the corresponding conjugate-style term
// phi(lambda) = -inf_x ||x||_1 + (A' lambda)' x + (delta/2)||x||^2.
double phi_value(const Matrix& a, const Vector& lambda, double delta);

// Gradient of phi: -A x(lambda).
Vector phi_gradient(const Matrix& a, const Vector& lambda, double delta);

// Largest singular value by power iteration on A'A (200 iterations or
// relative change < 1e-10, all-ones start).
double spectral_norm_sq(const Matrix& a);

// sigma_max(A)^2 / delta + 2c.
double lipschitz_bound(const Matrix& a, double delta, double c);

struct QpResult {
  Vector z;
  Vector mu;             // multipliers of Gz >= h
  double kkt_residual = 0.0;
  int iterations = 0;
};

// Thrown when the dual ascent exhausts its budget; carries the best iterate.
struct QpBudgetError : std::runtime_error {
  QpBudgetError(Vector best, double residual)
      : std::runtime_error("qp_solve: iteration budget exceeded"),
        best_iterate(std::move(best)),
        kkt_residual(residual) {}
  Vector best_iterate;
  double kkt_residual;
};

// min (1/2) z' diag(q_diag) z + q_lin' z  s.t.  G z >= h, by projected
// gradient ascent on the dual (mu >= 0, step 1/||G Q^{-1} G'||, mu^0 = 0),
// recovering z = Q^{-1}(G' mu - q_lin). Stops when both the primal
// infeasibility and the complementary-slackness residual fall below tol.
QpResult qp_solve(const Vector& q_diag, const Vector& q_lin, const Matrix& g,
                  const Vector& h, double tol, int max_iters = 2000000);

}  // namespace dadmm
