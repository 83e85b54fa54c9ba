#pragma once

#include <Eigen/Dense>
#include <random>

#include "sdnn/assembly.hpp"
#include "sdnn/manufactured.hpp"

namespace sdnn::testing {

struct Partitioned {
  Vector u_I, u_G, p_f, pp_I, pp_G;
};

/// Inverse of scatter_solution: restricts full nodal fields to the partitions.
inline Partitioned partition(const CoupledSystem& s, const CoupledSolution& sol) {
  Partitioned out{Vector::Zero(s.fluid_dofs.num_interior), Vector::Zero(s.fluid_dofs.num_interface),
                  sol.fluid.pressure, Vector::Zero(s.porous_dofs.num_interior),
                  Vector::Zero(s.porous_dofs.num_interface)};
  for (std::size_t k = 0; k < s.fluid_dofs.velocity.size(); ++k) {
    const auto& slot = s.fluid_dofs.velocity[k];
    const double v = sol.fluid.velocity[static_cast<Eigen::Index>(k)];
    if (slot.kind == DofKind::interior) out.u_I[slot.index] = v;
    if (slot.kind == DofKind::interface) out.u_G[slot.index] = slot.sign * v;
  }
  for (std::size_t k = 0; k < s.porous_dofs.pressure.size(); ++k) {
    const auto& slot = s.porous_dofs.pressure[k];
    const double v = sol.porous.pressure[static_cast<Eigen::Index>(k)];
    if (slot.kind == DofKind::interior) out.pp_I[slot.index] = v;
    if (slot.kind == DofKind::interface) out.pp_G[slot.index] = v;
  }
  return out;
}

/// Stokes Schur complement from the blocks by dense elimination of
/// (u_I, p_f). Written independently of the operator code.
inline Eigen::MatrixXd dense_schur_fluid(const CoupledSystem& s) {
  const Eigen::Index nI = s.A_II.rows(), np = s.G_I.cols(), nG = s.A_GG.rows();
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(nI + np, nI + np);
  K.topLeftCorner(nI, nI) = Eigen::MatrixXd(s.A_II);
  K.topRightCorner(nI, np) = Eigen::MatrixXd(s.G_I);
  K.bottomLeftCorner(np, nI) = Eigen::MatrixXd(s.G_I).transpose();
  Eigen::MatrixXd B(nI + np, nG);
  B.topRows(nI) = Eigen::MatrixXd(s.A_IG);
  B.bottomRows(np) = Eigen::MatrixXd(s.G_G).transpose();
  Eigen::MatrixXd R(nG, nI + np);
  R.leftCols(nI) = Eigen::MatrixXd(s.A_GI);
  R.rightCols(np) = Eigen::MatrixXd(s.G_G);
  return Eigen::MatrixXd(s.A_GG) - R * K.fullPivLu().solve(B);
}

/// C S_p^{-1} C^T with S_p the porous Schur complement on the interface trace.
inline Eigen::MatrixXd dense_schur_porous(const CoupledSystem& s) {
  const Eigen::MatrixXd AII(s.Ap_II), AIG(s.Ap_IG), AGI(s.Ap_GI), AGG(s.Ap_GG), C(s.C);
  const Eigen::MatrixXd S = AGG - AGI * AII.ldlt().solve(AIG);
  return C * S.ldlt().solve(C.transpose());
}

inline Eigen::VectorXd random_vector(Eigen::Index n, std::mt19937& rng) {
  std::normal_distribution<double> d;
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = d(rng);
  return v;
}

inline double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace sdnn::testing
