#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "sdnn/assembly.hpp"

namespace sdnn {

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Loads { none, problem };

struct StokesEssentialResult {
  Vector u_I;
  Vector p;
  /// Gamma-row residual A_GI u_I + A_GG lambda + G_G p - f_G, i.e. the
  /// interface normal stress tested against the trace basis.
  Vector normal_stress;
};

struct DarcyNaturalResult {
  Vector p_I;
  Vector trace;  // porous pressure at the interface nodes
};

struct StokesNaturalResult {
  Vector u_I;
  Vector p;
  Vector normal_velocity;  // u . n at the interface nodes
};

struct DarcyEssentialResult {
  Vector p_I;
  Vector trace;     // nodal interface pressure, M^{-1} sigma
  Vector residual;  // Gamma-row residual, tested outward flux (eta grad q) . n_p
  /// Nodal outward porous flux M^{-1} residual; equals Sigma_p^{-1} sigma.
  Vector flux;
};

/// Direct factorizations of the two subdomain operators under essential and
/// natural interface conditions, built on first use and shared afterwards.
/// Solves on a built factorization are const and may run concurrently.
class SubdomainSolvers {
 public:
  explicit SubdomainSolvers(std::shared_ptr<const CoupledSystem> system);

  const CoupledSystem& system() const { return *system_; }

  /// Stokes with u . n = lambda on the interface and BJS tangential law.
  StokesEssentialResult stokes_solve_essential(const Vector& lambda, Loads loads) const;
  /// Darcy with prescribed interface flux: solves A_p p = f_p + [0; C^T lambda].
  DarcyNaturalResult darcy_solve_natural(const Vector& lambda, Loads loads) const;
  /// Load-free Stokes driven by an interface load sigma (tested normal traction);
  /// normal_velocity = Sigma_f^{-1} sigma.
  StokesNaturalResult stokes_solve_natural(const Vector& sigma) const;
  /// Load-free Darcy with interface pressure M^{-1} sigma; flux = Sigma_p^{-1} sigma.
  DarcyEssentialResult darcy_solve_essential(const Vector& sigma) const;

  /// Number of factorizations built so far (0..4).
  int factorizations_built() const;

 private:
  using ColMatrix = Eigen::SparseMatrix<double>;
  using LU = Eigen::SparseLU<ColMatrix, Eigen::COLAMDOrdering<int>>;
  using LDLT = Eigen::SimplicialLDLT<ColMatrix>;

  const LU& stokes_essential() const;
  const LU& stokes_natural() const;
  const LDLT& darcy_natural() const;
  const LDLT& darcy_essential() const;
  const Eigen::LLT<Eigen::MatrixXd>& interface_mass() const;

  std::shared_ptr<const CoupledSystem> system_;

  mutable std::once_flag stokes_essential_once_, stokes_natural_once_;
  mutable std::once_flag darcy_natural_once_, darcy_essential_once_, mass_once_;
  mutable std::unique_ptr<LU> stokes_essential_, stokes_natural_;
  mutable std::unique_ptr<LDLT> darcy_natural_, darcy_essential_;
  // Assembled matrices kept for iterative refinement of the solves.
  mutable ColMatrix stokes_essential_k_, stokes_natural_k_, darcy_natural_k_, darcy_essential_k_;
  mutable std::unique_ptr<Eigen::LLT<Eigen::MatrixXd>> mass_;
};

}  // namespace sdnn
