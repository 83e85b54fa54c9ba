#include "sdnn/krylov.hpp"

#include <chrono>
#include <cmath>

namespace sdnn {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void require_finite(double value, const std::string& method) {
  if (!std::isfinite(value)) throw KrylovError(method + ": non-finite residual");
}

Eigen::VectorXd initial_guess(const KrylovOptions& options, Eigen::Index n, SolveReport& report) {
  if (options.x0.size() == 0) return Eigen::VectorXd::Zero(n);
  if (options.x0.size() != n) throw std::invalid_argument("initial guess has the wrong size");
  report.initial_guess = "user";
  return options.x0;
}

KrylovResult preconditioned_cg(const LinearOperator& apply_a, const LinearOperator* apply_p,
                               const Eigen::VectorXd& b, const KrylovOptions& options,
                               const std::string& method) {
  const auto start = Clock::now();
  KrylovResult out;
  out.report.method = method;
  out.report.tolerance = options.tol;
  out.x = initial_guess(options, b.size(), out.report);
  if (options.observer) options.observer(out.x);

  const double b_norm = b.norm();
  if (b_norm == 0.0) {
    out.x.setZero();
    out.report.residual_history = {0.0};
    out.report.converged = true;
    out.report.wall_time_s = seconds_since(start);
    return out;
  }

  Eigen::VectorXd r = b - (out.x.isZero(0.0) ? Eigen::VectorXd::Zero(b.size()) : apply_a(out.x));
  double rel = r.norm() / b_norm;
  require_finite(rel, method);
  out.report.residual_history.push_back(rel);
  Eigen::VectorXd z = apply_p ? (*apply_p)(r) : r;
  Eigen::VectorXd p = z;
  double rz = r.dot(z);

  while (rel > options.tol && out.report.iterations < options.max_iter) {
    const Eigen::VectorXd ap = apply_a(p);
    const double curvature = p.dot(ap);
    if (!(curvature > 0.0))
      throw KrylovError(method + ": operator A is not positive definite (p^T A p = " +
                        std::to_string(curvature) + ")");
    if (apply_p && !(rz > 0.0))
      throw KrylovError(method + ": preconditioner P is not positive definite (r^T P r = " +
                        std::to_string(rz) + ")");
    const double alpha = rz / curvature;
    out.x += alpha * p;
    r -= alpha * ap;
    ++out.report.iterations;
    rel = r.norm() / b_norm;
    require_finite(rel, method);
    out.report.residual_history.push_back(rel);
    if (options.observer) options.observer(out.x);
    if (rel <= options.tol) break;
    z = apply_p ? (*apply_p)(r) : r;
    const double rz_next = r.dot(z);
    p = z + (rz_next / rz) * p;
    rz = rz_next;
  }
  out.report.converged = rel <= options.tol;
  out.report.wall_time_s = seconds_since(start);
  return out;
}

}  // namespace

KrylovResult cg(const LinearOperator& apply_a, const Eigen::VectorXd& b, const KrylovOptions& options) {
  return preconditioned_cg(apply_a, nullptr, b, options, "cg");
}

KrylovResult pcg(const LinearOperator& apply_a, const LinearOperator& apply_p,
                 const Eigen::VectorXd& b, const KrylovOptions& options) {
  return preconditioned_cg(apply_a, &apply_p, b, options, "pcg");
}

KrylovResult richardson(const LinearOperator& apply_a, const LinearOperator& apply_p,
                        const Eigen::VectorXd& b, const KrylovOptions& options, double relaxation) {
  const auto start = Clock::now();
  KrylovResult out;
  out.report.method = "richardson";
  out.report.tolerance = options.tol;
  out.x = initial_guess(options, b.size(), out.report);
  if (options.observer) options.observer(out.x);
  const double b_norm = b.norm();
  if (b_norm == 0.0) {
    out.x.setZero();
    out.report.residual_history = {0.0};
    out.report.converged = true;
    out.report.wall_time_s = seconds_since(start);
    return out;
  }
  Eigen::VectorXd r = apply_a(out.x) - b;
  double rel = r.norm() / b_norm;
  require_finite(rel, "richardson");
  out.report.residual_history.push_back(rel);
  while (rel > options.tol && out.report.iterations < options.max_iter) {
    out.x -= relaxation * apply_p(r);
    ++out.report.iterations;
    if (options.observer) options.observer(out.x);
    r = apply_a(out.x) - b;
    rel = r.norm() / b_norm;
    require_finite(rel, "richardson");
    out.report.residual_history.push_back(rel);
  }
  out.report.converged = rel <= options.tol;
  out.report.wall_time_s = seconds_since(start);
  return out;
}

}  // namespace sdnn
