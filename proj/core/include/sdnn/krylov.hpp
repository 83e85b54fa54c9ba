#pragma once

#include <Eigen/Core>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sdnn/weight_pair.hpp"

namespace sdnn {

using LinearOperator = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

class KrylovError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SolveReport {
  std::string method;
  int iterations = 0;
  std::vector<double> residual_history;  // ||r_k|| / ||b||, k = 0..iterations
  bool converged = false;
  double tolerance = 1e-9;
  std::optional<WeightPair> weights;
  double wall_time_s = 0.0;
  std::string initial_guess = "zero";

  double final_residual() const { return residual_history.empty() ? 0.0 : residual_history.back(); }
};

struct KrylovOptions {
  double tol = 1e-9;
  int max_iter = 500;
  /// Empty means a zero initial guess.
  Eigen::VectorXd x0;
  /// Called with each iterate, starting from x0.
  std::function<void(const Eigen::VectorXd&)> observer;
};

struct KrylovResult {
  Eigen::VectorXd x;
  SolveReport report;
};

/// Conjugate gradients; stops when ||b - A x_k|| <= tol ||b||.
KrylovResult cg(const LinearOperator& apply_a, const Eigen::VectorXd& b, const KrylovOptions& options = {});

/// Preconditioned CG with the same stopping rule on the unpreconditioned residual.
/// Throws KrylovError naming the operator when a non-positive curvature is met.
KrylovResult pcg(const LinearOperator& apply_a, const LinearOperator& apply_p,
                 const Eigen::VectorXd& b, const KrylovOptions& options = {});

/// x_{k+1} = x_k - relaxation P (A x_k - b).
KrylovResult richardson(const LinearOperator& apply_a, const LinearOperator& apply_p,
                        const Eigen::VectorXd& b, const KrylovOptions& options = {},
                        double relaxation = 1.0);

}  // namespace sdnn
