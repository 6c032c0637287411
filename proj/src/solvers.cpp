#include "dadmm/solvers.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace dadmm {

namespace {

void check_finite(const Vector& x, const char* where) {
  if (!x.allFinite())
    throw std::runtime_error(std::string("fista: non-finite value from ") + where);
}

}  // namespace

FistaResult fista(const ProxProblem& p) {
  if (p.lipschitz <= 0.0) throw std::invalid_argument("fista: Lipschitz constant must be positive");
  if (!p.grad) throw std::invalid_argument("fista: gradient oracle missing");

  const double step = 1.0 / p.lipschitz;
  auto apply_prox = [&](const Vector& eta) {
    return p.prox ? p.prox(eta, step) : eta;
  };

  Vector x = p.start;
  Vector y = x;
  double t = 1.0;
  double prev_objective = p.objective ? p.objective(x) : 0.0;

  FistaResult res;
  for (int k = 0; k < p.max_iters; ++k) {
    Vector gradient = p.grad(y);
    check_finite(gradient, "gradient oracle");
    Vector x_next = apply_prox(y - step * gradient);
    check_finite(x_next, "prox oracle");

    if (p.accelerated) {
      bool restart = false;
      if (p.objective) {
        double objective = p.objective(x_next);
        if (!std::isfinite(objective))
          throw std::runtime_error("fista: non-finite objective");
        restart = objective > prev_objective;
        if (!restart) prev_objective = objective;
      }
      if (restart) {
        // drop momentum and redo the step from the last accepted point
        t = 1.0;
        y = x;
        gradient = p.grad(y);
        check_finite(gradient, "gradient oracle");
        x_next = apply_prox(y - step * gradient);
        check_finite(x_next, "prox oracle");
        if (p.objective) prev_objective = p.objective(x_next);
      }
      double t_next = (1.0 + std::sqrt(1.0 + 4.0 * t * t)) / 2.0;
      y = x_next + ((t - 1.0) / t_next) * (x_next - x);
      t = t_next;
    } else {
      y = x_next;
    }

    double change = (x_next - x).norm();
    double scale = 1.0 + x.norm();
    x = std::move(x_next);
    res.iterations = k + 1;
    if (change <= p.tol * scale) {
      res.converged = true;
      break;
    }
  }
  res.x = std::move(x);
  return res;
}

Vector soft_threshold(const Vector& x, double tau) {
  if (tau < 0.0) throw std::invalid_argument("soft_threshold: tau must be nonnegative");
  Vector out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    double mag = std::abs(x[i]) - tau;
    out[i] = mag > 0.0 ? (x[i] > 0.0 ? mag : -mag) : 0.0;
  }
  return out;
}

SocPoint project_soc(const SocPoint& q) {
  double norm = q.lambda.norm();
  if (q.t >= norm) return q;
  if (q.t <= -norm) return {Vector::Zero(q.lambda.size()), 0.0};
  double scale = (q.t + norm) / 2.0;
  Vector lambda = (scale / norm) * q.lambda;
  // boundary point: take t as the recomputed norm so reprojection is a no-op
  return {lambda, lambda.norm()};
}

Vector x_of_lambda(const Matrix& a, const Vector& lambda, double delta) {
  if (delta <= 0.0) throw std::invalid_argument("x_of_lambda: delta must be positive");
  Vector r = a.transpose() * lambda;
  Vector x(r.size());
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    if (r[i] < -1.0)
      x[i] = -(r[i] + 1.0) / delta;
    else if (r[i] > 1.0)
      x[i] = -(r[i] - 1.0) / delta;
    else
      x[i] = 0.0;
  }
  return x;
}

double phi_value(const Matrix& a, const Vector& lambda, double delta) {
  Vector r = a.transpose() * lambda;
  double total = 0.0;
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    double excess = std::abs(r[i]) - 1.0;
    if (excess > 0.0) total += excess * excess / (2.0 * delta);
  }
  return total;
}

Vector phi_gradient(const Matrix& a, const Vector& lambda, double delta) {
  return -(a * x_of_lambda(a, lambda, delta));
}

double spectral_norm_sq(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  // power iteration on the smaller Gram matrix
  bool tall = a.rows() >= a.cols();
  Matrix gram = tall ? Matrix(a.transpose() * a) : Matrix(a * a.transpose());
  Vector v = Vector::Ones(gram.rows());
  double value = 0.0;
  for (int k = 0; k < 200; ++k) {
    Vector w = gram * v;
    double norm = w.norm();
    if (norm == 0.0) return 0.0;
    double next = v.dot(w) / v.squaredNorm();
    v = w / norm;
    if (k > 0 && std::abs(next - value) <= 1e-10 * std::max(1.0, std::abs(next))) {
      value = next;
      break;
    }
    value = next;
  }
  return value;
}

double lipschitz_bound(const Matrix& a, double delta, double c) {
  if (delta <= 0.0) throw std::invalid_argument("lipschitz_bound: delta must be positive");
  if (c < 0.0) throw std::invalid_argument("lipschitz_bound: c must be nonnegative");
  return spectral_norm_sq(a) / delta + 2.0 * c;
}

QpResult qp_solve(const Vector& q_diag, const Vector& q_lin, const Matrix& g,
                  const Vector& h, double tol, int max_iters) {
  if ((q_diag.array() <= 0.0).any())
    throw std::invalid_argument("qp_solve: Q must have strictly positive diagonal");
  if (g.cols() != q_diag.size() || g.rows() != h.size())
    throw std::invalid_argument("qp_solve: inconsistent dimensions");

  Vector inv_q = q_diag.cwiseInverse();
  if (g.rows() == 0) {
    return {Vector(-inv_q.cwiseProduct(q_lin)), Vector(), 0.0, 0};
  }
  // ||G Q^{-1} G'||_2 = sigma_max(G Q^{-1/2})^2
  double dual_lipschitz =
      spectral_norm_sq(Matrix(g * inv_q.cwiseSqrt().asDiagonal()));
  double step = dual_lipschitz > 0.0 ? 1.0 / dual_lipschitz : 1.0;

  Vector mu = Vector::Zero(g.rows());
  Vector z = inv_q.asDiagonal() * (g.transpose() * mu - q_lin);
  double best_residual = std::numeric_limits<double>::infinity();
  Vector best_z = z;

  QpResult res;
  for (int k = 0; k < max_iters; ++k) {
    Vector slack = g * z - h;
    double primal_inf = (-slack.cwiseMin(0.0)).lpNorm<Eigen::Infinity>();
    double comp_slack = (mu.array() * slack.array()).abs().maxCoeff();
    double residual = std::max(primal_inf, comp_slack);
    if (residual < best_residual) {
      best_residual = residual;
      best_z = z;
    }
    if (residual <= tol) {
      res.z = std::move(z);
      res.mu = std::move(mu);
      res.kkt_residual = residual;
      res.iterations = k;
      return res;
    }
    mu = (mu - step * slack).cwiseMax(0.0);
    z = inv_q.asDiagonal() * (g.transpose() * mu - q_lin);
  }
  throw QpBudgetError(std::move(best_z), best_residual);
}

}  // namespace dadmm
