#pragma once

#include <Eigen/Dense>
#include <memory>

#include "sdnn/assembly.hpp"
#include "sdnn/krylov.hpp"
#include "sdnn/subdomain.hpp"
#include "sdnn/weight_pair.hpp"

namespace sdnn {

using InterfaceVector = Eigen::VectorXd;

/// Interface (Schur complement) view of a coupled system whose unknown is
/// the normal velocity lambda = u_f . n on the interface:
///   (Sigma_f + Sigma_p) lambda = b.
/// Sigma_f and Sigma_p are applied through subdomain solves; no dense matrix
/// is formed except through the dense_* helpers.
///
/// Sign convention: Sigma_f lambda is the tested normal stress n.T.n of the
/// Stokes extension, Sigma_p lambda = C tr(p_p) is the tested porous pressure
/// of the Darcy problem with inflow lambda. Both are SPD, so their sum is.
class InterfaceProblem {
 public:
  explicit InterfaceProblem(std::shared_ptr<const CoupledSystem> system);
  explicit InterfaceProblem(CoupledSystem system);

  const CoupledSystem& system() const { return solvers_.system(); }
  const SubdomainSolvers& solvers() const { return solvers_; }
  Eigen::Index size() const { return system().num_interface(); }

  InterfaceVector apply_sigma_f(const InterfaceVector& lambda) const;
  InterfaceVector apply_sigma_p(const InterfaceVector& lambda) const;
  InterfaceVector apply_sigma(const InterfaceVector& lambda) const;

  /// P r = alpha_f Sigma_f^{-1} r + alpha_p Sigma_p^{-1} r.
  InterfaceVector apply_precond(const InterfaceVector& r, const WeightPair& w) const;
  InterfaceVector apply_sigma_f_inverse(const InterfaceVector& r) const;
  InterfaceVector apply_sigma_p_inverse(const InterfaceVector& r) const;

  /// Right-hand side from the actual loads and boundary lifts.
  const InterfaceVector& reduced_rhs() const { return rhs_; }

  /// (Sigma_f + Sigma_p) lambda - b computed by the two loaded subdomain solves.
  InterfaceVector schur_residual(const InterfaceVector& lambda) const;

  /// One sweep of the six-step Neumann-Neumann iteration executed through the
  /// four subdomain solves.
  InterfaceVector nn_step(const InterfaceVector& lambda, const WeightPair& w) const;

  LinearOperator sigma_operator() const;
  LinearOperator precond_operator(const WeightPair& w) const;

  /// Interior unknowns consistent with lambda and the loads.
  CoupledSolution recover_full_solution(const InterfaceVector& lambda) const;

  /// Direct solve of the full block system.
  CoupledSolution monolithic_solve() const;

  // Dense operators assembled column by column through the operator
  // applications. Meant for small interfaces.
  Eigen::MatrixXd dense_sigma_f() const;
  Eigen::MatrixXd dense_sigma_p() const;
  Eigen::MatrixXd dense_precond(const WeightPair& w) const;

 private:
  static constexpr Eigen::Index kDenseLimit = 200;
  Eigen::MatrixXd dense_from(const LinearOperator& op) const;

  SubdomainSolvers solvers_;
  InterfaceVector rhs_;
};

/// Sparse matrix of the full 5x5 block system in the unknown order
/// (u_I, u_G, p_f, pp_I, pp_G) and its right-hand side.
Eigen::SparseMatrix<double> monolithic_matrix(const CoupledSystem& system);
Eigen::VectorXd monolithic_rhs(const CoupledSystem& system);

}  // namespace sdnn
