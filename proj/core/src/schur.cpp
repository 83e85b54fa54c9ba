#include "sdnn/schur.hpp"

#include <Eigen/SparseLU>
#include <stdexcept>
#include <vector>

namespace sdnn {

InterfaceProblem::InterfaceProblem(std::shared_ptr<const CoupledSystem> system)
    : solvers_(std::move(system)) {
  // b = -(residual of the loaded subdomain problems at lambda = 0).
  rhs_ = -schur_residual(InterfaceVector::Zero(size()));
}

InterfaceProblem::InterfaceProblem(CoupledSystem system)
    : InterfaceProblem(std::make_shared<const CoupledSystem>(std::move(system))) {}

InterfaceVector InterfaceProblem::apply_sigma_f(const InterfaceVector& lambda) const {
  return solvers_.stokes_solve_essential(lambda, Loads::none).normal_stress;
}

InterfaceVector InterfaceProblem::apply_sigma_p(const InterfaceVector& lambda) const {
  return system().C * solvers_.darcy_solve_natural(lambda, Loads::none).trace;
}

InterfaceVector InterfaceProblem::apply_sigma(const InterfaceVector& lambda) const {
  return apply_sigma_f(lambda) + apply_sigma_p(lambda);
}

InterfaceVector InterfaceProblem::apply_sigma_f_inverse(const InterfaceVector& r) const {
  return solvers_.stokes_solve_natural(r).normal_velocity;
}

InterfaceVector InterfaceProblem::apply_sigma_p_inverse(const InterfaceVector& r) const {
  return solvers_.darcy_solve_essential(r).flux;
}

InterfaceVector InterfaceProblem::apply_precond(const InterfaceVector& r, const WeightPair& w) const {
  w.validate();
  return w.alpha_f * apply_sigma_f_inverse(r) + w.alpha_p * apply_sigma_p_inverse(r);
}

InterfaceVector InterfaceProblem::schur_residual(const InterfaceVector& lambda) const {
  const auto fluid = solvers_.stokes_solve_essential(lambda, Loads::problem);
  const auto porous = solvers_.darcy_solve_natural(lambda, Loads::problem);
  return fluid.normal_stress + system().C * porous.trace;
}

InterfaceVector InterfaceProblem::nn_step(const InterfaceVector& lambda, const WeightPair& w) const {
  w.validate();
  // Steps 1-2: loaded Stokes with u.n = lambda, loaded Darcy with inflow lambda.
  const auto fluid = solvers_.stokes_solve_essential(lambda, Loads::problem);
  const auto porous = solvers_.darcy_solve_natural(lambda, Loads::problem);
  // Step 3: sigma = -n.T.n - p_p, tested against the trace basis.
  const InterfaceVector sigma = -(fluid.normal_stress + system().C * porous.trace);
  // Step 4: -n.T(v).n = sigma enters the Stokes Gamma rows as the load -sigma.
  const InterfaceVector v_normal = solvers_.stokes_solve_natural(-sigma).normal_velocity;
  // Step 5: q_p = sigma on the interface. The solver returns the flux along the
  // porous outward normal n_p = -n; (eta grad q).n is its negative. This is the
  // single place where the two normals meet.
  const InterfaceVector q_flux_n = -solvers_.darcy_solve_essential(sigma).flux;
  // Step 6.
  return lambda - (w.alpha_f * v_normal + w.alpha_p * q_flux_n);
}

LinearOperator InterfaceProblem::sigma_operator() const {
  return [this](const Eigen::VectorXd& x) { return apply_sigma(x); };
}

LinearOperator InterfaceProblem::precond_operator(const WeightPair& w) const {
  w.validate();
  return [this, w](const Eigen::VectorXd& r) { return apply_precond(r, w); };
}

CoupledSolution InterfaceProblem::recover_full_solution(const InterfaceVector& lambda) const {
  const auto fluid = solvers_.stokes_solve_essential(lambda, Loads::problem);
  const auto porous = solvers_.darcy_solve_natural(lambda, Loads::problem);
  return scatter_solution(system(), fluid.u_I, lambda, fluid.p, porous.p_I, porous.trace);
}

Eigen::SparseMatrix<double> monolithic_matrix(const CoupledSystem& s) {
  const Eigen::Index nI = s.A_II.rows();
  const Eigen::Index nG = s.A_GG.rows();
  const Eigen::Index np = s.G_I.cols();
  const Eigen::Index mI = s.Ap_II.rows();
  const Eigen::Index mG = s.Ap_GG.rows();
  const Eigen::Index oG = nI, oP = nI + nG, oPI = oP + np, oPG = oPI + mI;
  std::vector<Eigen::Triplet<double>> t;
  auto put = [&t](const SparseMatrix& m, Eigen::Index r0, Eigen::Index c0, double scale, bool transpose) {
    for (Eigen::Index r = 0; r < m.outerSize(); ++r)
      for (SparseMatrix::InnerIterator it(m, r); it; ++it) {
        if (transpose) t.emplace_back(r0 + it.col(), c0 + it.row(), scale * it.value());
        else t.emplace_back(r0 + it.row(), c0 + it.col(), scale * it.value());
      }
  };
  put(s.A_II, 0, 0, 1.0, false);
  put(s.A_IG, 0, oG, 1.0, false);
  put(s.G_I, 0, oP, 1.0, false);
  put(s.A_GI, oG, 0, 1.0, false);
  put(s.A_GG, oG, oG, 1.0, false);
  put(s.G_G, oG, oP, 1.0, false);
  put(s.C, oG, oPG, 1.0, false);
  put(s.G_I, oP, 0, 1.0, true);
  put(s.G_G, oP, oG, 1.0, true);
  put(s.Ap_II, oPI, oPI, 1.0, false);
  put(s.Ap_IG, oPI, oPG, 1.0, false);
  put(s.C, oPG, oG, -1.0, true);
  put(s.Ap_GI, oPG, oPI, 1.0, false);
  put(s.Ap_GG, oPG, oPG, 1.0, false);
  Eigen::SparseMatrix<double> k(oPG + mG, oPG + mG);
  k.setFromTriplets(t.begin(), t.end());
  return k;
}

Eigen::VectorXd monolithic_rhs(const CoupledSystem& s) {
  Eigen::VectorXd b(s.total_unknowns());
  b << s.f_I, s.f_G, s.g_f, s.fp_I, s.fp_G;
  return b;
}

namespace {
constexpr int kRefinementSteps = 3;
}  // namespace

CoupledSolution InterfaceProblem::monolithic_solve() const {
  const CoupledSystem& s = system();
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  const Eigen::SparseMatrix<double> K = monolithic_matrix(s);
  lu.compute(K);
  if (lu.info() != Eigen::Success) throw SolverError("monolithic system is singular");
  const Eigen::VectorXd b = monolithic_rhs(s);
  Eigen::VectorXd x = lu.solve(b);
  // The blocks differ in scale by up to 1 / eta, so a few refinement steps
  // recover the accuracy the plain LU solve loses.
  for (int step = 0; step < kRefinementSteps; ++step) x += lu.solve(b - K * x);
  const Eigen::Index nI = s.A_II.rows();
  const Eigen::Index nG = s.A_GG.rows();
  const Eigen::Index np = s.G_I.cols();
  const Eigen::Index mI = s.Ap_II.rows();
  const Eigen::Index mG = s.Ap_GG.rows();
  return scatter_solution(s, x.head(nI), x.segment(nI, nG), x.segment(nI + nG, np),
                          x.segment(nI + nG + np, mI), x.tail(mG));
}

Eigen::MatrixXd InterfaceProblem::dense_from(const LinearOperator& op) const {
  const Eigen::Index n = size();
  if (n > kDenseLimit) throw std::invalid_argument("dense interface operators limited to small interfaces");
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index j = 0; j < n; ++j) m.col(j) = op(Eigen::VectorXd::Unit(n, j));
  return m;
}

Eigen::MatrixXd InterfaceProblem::dense_sigma_f() const {
  return dense_from([this](const Eigen::VectorXd& x) { return apply_sigma_f(x); });
}

Eigen::MatrixXd InterfaceProblem::dense_sigma_p() const {
  return dense_from([this](const Eigen::VectorXd& x) { return apply_sigma_p(x); });
}

Eigen::MatrixXd InterfaceProblem::dense_precond(const WeightPair& w) const {
  return dense_from(precond_operator(w));
}

}  // namespace sdnn
