#include "sdnn/subdomain.hpp"

#include <string>
#include <vector>

namespace sdnn {
namespace {

using ColMatrix = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

void append_block(std::vector<Triplet>& out, const SparseMatrix& block, Eigen::Index row0,
                  Eigen::Index col0, double scale = 1.0) {
  for (Eigen::Index r = 0; r < block.outerSize(); ++r)
    for (SparseMatrix::InnerIterator it(block, r); it; ++it)
      out.emplace_back(row0 + it.row(), col0 + it.col(), scale * it.value());
}

void append_transpose(std::vector<Triplet>& out, const SparseMatrix& block, Eigen::Index row0,
                      Eigen::Index col0) {
  for (Eigen::Index r = 0; r < block.outerSize(); ++r)
    for (SparseMatrix::InnerIterator it(block, r); it; ++it)
      out.emplace_back(row0 + it.col(), col0 + it.row(), it.value());
}

template <typename Solver>
void check(const Solver& solver, const std::string& what) {
  if (solver.info() != Eigen::Success)
    throw SolverError(what + ": factorization failed (singular configuration?)");
}

// Subdomain blocks mix scales up to 1 / eta, so two refinement steps keep the
// solves accurate to near machine precision.
template <typename Factor>
Vector refined_solve(const Factor& f, const Eigen::SparseMatrix<double>& k, const Vector& rhs) {
  Vector x = f.solve(rhs);
  for (int step = 0; step < 2; ++step) x += f.solve(Vector(rhs - k * x));
  return x;
}

}  // namespace

SubdomainSolvers::SubdomainSolvers(std::shared_ptr<const CoupledSystem> system)
    : system_(std::move(system)) {
  if (!system_) throw std::invalid_argument("SubdomainSolvers: null system");
}

const SubdomainSolvers::LU& SubdomainSolvers::stokes_essential() const {
  std::call_once(stokes_essential_once_, [this] {
    const CoupledSystem& s = *system_;
    const Eigen::Index nI = s.A_II.rows();
    const Eigen::Index np = s.G_I.cols();
    std::vector<Triplet> t;
    append_block(t, s.A_II, 0, 0);
    append_block(t, s.G_I, 0, nI);
    append_transpose(t, s.G_I, nI, 0);
    ColMatrix k(nI + np, nI + np);
    k.setFromTriplets(t.begin(), t.end());
    stokes_essential_k_ = k;
    auto lu = std::make_unique<LU>();
    lu->compute(k);
    check(*lu, "Stokes (essential interface) subproblem");
    stokes_essential_ = std::move(lu);
  });
  return *stokes_essential_;
}

const SubdomainSolvers::LU& SubdomainSolvers::stokes_natural() const {
  std::call_once(stokes_natural_once_, [this] {
    const CoupledSystem& s = *system_;
    const Eigen::Index nI = s.A_II.rows();
    const Eigen::Index nG = s.A_GG.rows();
    const Eigen::Index np = s.G_I.cols();
    std::vector<Triplet> t;
    append_block(t, s.A_II, 0, 0);
    append_block(t, s.A_IG, 0, nI);
    append_block(t, s.G_I, 0, nI + nG);
    append_block(t, s.A_GI, nI, 0);
    append_block(t, s.A_GG, nI, nI);
    append_block(t, s.G_G, nI, nI + nG);
    append_transpose(t, s.G_I, nI + nG, 0);
    append_transpose(t, s.G_G, nI + nG, nI);
    ColMatrix k(nI + nG + np, nI + nG + np);
    k.setFromTriplets(t.begin(), t.end());
    stokes_natural_k_ = k;
    auto lu = std::make_unique<LU>();
    lu->compute(k);
    check(*lu, "Stokes (natural interface) subproblem");
    stokes_natural_ = std::move(lu);
  });
  return *stokes_natural_;
}

const SubdomainSolvers::LDLT& SubdomainSolvers::darcy_natural() const {
  std::call_once(darcy_natural_once_, [this] {
    const CoupledSystem& s = *system_;
    const Eigen::Index mI = s.Ap_II.rows();
    const Eigen::Index mG = s.Ap_GG.rows();
    std::vector<Triplet> t;
    append_block(t, s.Ap_II, 0, 0);
    append_block(t, s.Ap_IG, 0, mI);
    append_block(t, s.Ap_GI, mI, 0);
    append_block(t, s.Ap_GG, mI, mI);
    ColMatrix k(mI + mG, mI + mG);
    k.setFromTriplets(t.begin(), t.end());
    darcy_natural_k_ = k;
    auto f = std::make_unique<LDLT>();
    f->compute(k);
    check(*f, "Darcy (natural interface) subproblem");
    darcy_natural_ = std::move(f);
  });
  return *darcy_natural_;
}

const SubdomainSolvers::LDLT& SubdomainSolvers::darcy_essential() const {
  std::call_once(darcy_essential_once_, [this] {
    auto f = std::make_unique<LDLT>();
    darcy_essential_k_ = ColMatrix(system_->Ap_II);
    f->compute(darcy_essential_k_);
    check(*f, "Darcy (essential interface) subproblem");
    darcy_essential_ = std::move(f);
  });
  return *darcy_essential_;
}

const Eigen::LLT<Eigen::MatrixXd>& SubdomainSolvers::interface_mass() const {
  std::call_once(mass_once_, [this] {
    auto f = std::make_unique<Eigen::LLT<Eigen::MatrixXd>>(Eigen::MatrixXd(system_->C));
    check(*f, "interface mass matrix");
    mass_ = std::move(f);
  });
  return *mass_;
}

int SubdomainSolvers::factorizations_built() const {
  return (stokes_essential_ ? 1 : 0) + (stokes_natural_ ? 1 : 0) + (darcy_natural_ ? 1 : 0) +
         (darcy_essential_ ? 1 : 0);
}

StokesEssentialResult SubdomainSolvers::stokes_solve_essential(const Vector& lambda,
                                                               Loads loads) const {
  const CoupledSystem& s = *system_;
  const Eigen::Index nI = s.A_II.rows();
  const Eigen::Index np = s.G_I.cols();
  Vector rhs(nI + np);
  rhs.head(nI) = -(s.A_IG * lambda);
  rhs.tail(np) = -(s.G_G.transpose() * lambda);
  if (loads == Loads::problem) {
    rhs.head(nI) += s.f_I;
    rhs.tail(np) += s.g_f;
  }
  const Vector x = refined_solve(stokes_essential(), stokes_essential_k_, rhs);
  StokesEssentialResult r;
  r.u_I = x.head(nI);
  r.p = x.tail(np);
  r.normal_stress = s.A_GI * r.u_I + s.A_GG * lambda + s.G_G * r.p;
  if (loads == Loads::problem) r.normal_stress -= s.f_G;
  return r;
}

DarcyNaturalResult SubdomainSolvers::darcy_solve_natural(const Vector& lambda, Loads loads) const {
  const CoupledSystem& s = *system_;
  const Eigen::Index mI = s.Ap_II.rows();
  const Eigen::Index mG = s.Ap_GG.rows();
  Vector rhs = Vector::Zero(mI + mG);
  rhs.tail(mG) = s.C.transpose() * lambda;
  if (loads == Loads::problem) {
    rhs.head(mI) += s.fp_I;
    rhs.tail(mG) += s.fp_G;
  }
  const Vector x = refined_solve(darcy_natural(), darcy_natural_k_, rhs);
  return {x.head(mI), x.tail(mG)};
}

StokesNaturalResult SubdomainSolvers::stokes_solve_natural(const Vector& sigma) const {
  const CoupledSystem& s = *system_;
  const Eigen::Index nI = s.A_II.rows();
  const Eigen::Index nG = s.A_GG.rows();
  const Eigen::Index np = s.G_I.cols();
  Vector rhs = Vector::Zero(nI + nG + np);
  rhs.segment(nI, nG) = sigma;
  const Vector x = refined_solve(stokes_natural(), stokes_natural_k_, rhs);
  return {x.head(nI), x.tail(np), x.segment(nI, nG)};
}

DarcyEssentialResult SubdomainSolvers::darcy_solve_essential(const Vector& sigma) const {
  const CoupledSystem& s = *system_;
  DarcyEssentialResult r;
  r.trace = interface_mass().solve(sigma);
  r.p_I = refined_solve(darcy_essential(), darcy_essential_k_, Vector(-(s.Ap_IG * r.trace)));
  r.residual = s.Ap_GI * r.p_I + s.Ap_GG * r.trace;
  r.flux = interface_mass().solve(r.residual);
  return r;
}

}  // namespace sdnn
