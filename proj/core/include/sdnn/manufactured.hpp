#pragma once

#include <functional>

#include "sdnn/assembly.hpp"
#include "sdnn/params.hpp"

namespace sdnn {

/// Closed-form coupled solution
///   u_f = (sqrt(eta_p), alpha_BJ x),
///   p_f = 2 mu_f (x + y - 1) + 1 / (3 eta_p),
///   p_p = (-alpha_BJ x (y - 1) + y^3/3 - y^2 + y) / eta_p + 2 mu_f x,
/// on the interface y = 1 with fluid above. All data of the benchmark is
/// derived from these evaluators.
class ExactSolution {
 public:
  explicit ExactSolution(const ProblemParams& params);

  const ProblemParams& params() const { return params_; }

  Vec2 velocity(const Point& x) const;
  /// Row i holds the gradient of component i.
  Eigen::Matrix2d velocity_gradient(const Point& x) const;
  /// Laplacian of each velocity component.
  Vec2 velocity_laplacian(const Point& x) const;
  /// Gradient of the divergence.
  Vec2 grad_divergence(const Point& x) const;
  double divergence(const Point& x) const;

  double fluid_pressure(const Point& x) const;
  Vec2 fluid_pressure_gradient(const Point& x) const;

  double porous_pressure(const Point& x) const;
  Vec2 porous_pressure_gradient(const Point& x) const;
  /// (d2p/dx2, d2p/dy2)
  Vec2 porous_pressure_second(const Point& x) const;

  /// Cauchy stress 2 mu eps(u) - p I.
  Eigen::Matrix2d fluid_stress(const Point& x) const;

  double interface_height() const { return 1.0; }

 private:
  ProblemParams params_;
};

struct Forcing {
  std::function<Vec2(const Point&)> fluid;
  std::function<double(const Point&)> porous;
};

/// f_f = -div(2 mu eps(u) - p I), f_p = -div(eta grad p_p), from the exact fields.
Forcing forcing_terms(const ExactSolution& exact);
Forcing forcing_terms(const ProblemParams& params);

/// Defects of the interface laws under the exact solution:
///   g_n   = -n.T.n - p_p               (normal stress balance, expected 0)
///   g_tau = -(T n)_tau - xi_f u_tau    (tangential BJS law)
///   g_flux = u.n + (eta grad p_p).n    (mass balance, expected 0)
struct InterfaceResiduals {
  std::function<double(const Point&)> normal;
  std::function<double(const Point&)> tangential;
  std::function<double(const Point&)> flux;
};

InterfaceResiduals interface_residuals(const ExactSolution& exact);
InterfaceResiduals interface_residuals(const ProblemParams& params);

/// Forcing, outer boundary data and the tangential interface defect for the
/// boundary split of the benchmark, all derived from one ExactSolution.
ProblemData make_problem_data(const ExactSolution& exact);

struct FieldErrors {
  double velocity_l2 = 0.0;
  double velocity_h1 = 0.0;  // seminorm
  double fluid_pressure_l2 = 0.0;
  double fluid_pressure_h1 = 0.0;
  double porous_pressure_l2 = 0.0;
  double porous_pressure_h1 = 0.0;
};

/// L2 and H1-seminorm errors by Gauss quadrature (quadrature_points per direction).
FieldErrors error_norms(const StructuredMesh& fluid_mesh, const StructuredMesh& porous_mesh,
                        const CoupledSolution& solution, const ExactSolution& exact,
                        int quadrature_points = 3);

/// Nodal interpolant of the exact fields.
CoupledSolution interpolate_exact(const StructuredMesh& fluid_mesh,
                                  const StructuredMesh& porous_mesh, const ExactSolution& exact);

}  // namespace sdnn
