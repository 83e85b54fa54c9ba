#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <functional>
#include <string>
#include <vector>

#include "sdnn/mesh.hpp"
#include "sdnn/params.hpp"

namespace sdnn {

using Vector = Eigen::VectorXd;
using Vec2 = Eigen::Vector2d;
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Data entering the coupled problem: volume forces, boundary data on the
/// outer edges and the tangential interface defect. All callbacks may be
/// empty, meaning zero data.
///
/// Outer boundary split used throughout:
///   fluid  - Dirichlet velocity on x = x_min and x = x_max, traction on the top edge;
///   porous - Dirichlet pressure on the bottom edge, prescribed flux on x = x_min, x_max.
struct ProblemData {
  std::function<Vec2(const Point&)> fluid_force;
  std::function<double(const Point&)> porous_force;
  std::function<Vec2(const Point&)> fluid_dirichlet;
  /// Traction (2 mu eps(u) - p I) n on the fluid top edge, n = (0, 1).
  std::function<Vec2(const Point&)> fluid_top_traction;
  /// Traction on the Dirichlet side walls for the outward normal passed in.
  /// Only the interface corner rows keep it, their normal velocity being free.
  std::function<Vec2(const Point&, const Vec2&)> fluid_side_traction;
  /// g such that -((T n)_tau) = xi_f u_tau + g on the interface.
  std::function<double(const Point&)> tangential_defect;
  std::function<double(const Point&)> porous_dirichlet;
  /// Outward flux (eta grad p) . n_p on the porous side edges; the outward normal is passed in.
  std::function<double(const Point&, const Vec2&)> porous_side_flux;

  static ProblemData zero() { return {}; }
};

struct AssemblyOptions {
  int quadrature_points = 3;  // Gauss points per direction, 2..5
  /// Pressure instead of flux data on the porous side edges. The interface
  /// corners stay interface unknowns either way.
  bool porous_side_dirichlet = false;
};

inline const char* boundary_split_description() {
  return "fluid: Dirichlet velocity on left/right, traction on top, BJS + normal-velocity "
         "coupling on interface; porous: Dirichlet pressure on bottom, flux on left/right, "
         "pressure/flux coupling on interface";
}

/// Raw (pre-boundary-condition) Taylor-Hood Stokes operators on the full
/// node numbering. Velocity dof of Q2 node n, component c is 2n + c; pressure
/// dofs are Q1 nodes.
struct StokesBlocks {
  SparseMatrix A;  // viscous form plus BJS friction on the interface
  SparseMatrix G;  // -(p, div v); rows velocity, columns pressure
  Vector load;     // forcing, top traction, interface defect
};

StokesBlocks assemble_stokes(const StructuredMesh& mesh, const ProblemParams& params,
                             const InterfaceTrace& interface, const ProblemData& data = {},
                             const AssemblyOptions& options = {});

struct DarcyBlocks {
  SparseMatrix A;  // (eta1 dx p dx q + eta2 dy p dy q)
  Vector load;     // forcing and side fluxes
};

DarcyBlocks assemble_darcy(const StructuredMesh& mesh, const ProblemParams& params,
                           const ProblemData& data = {}, const AssemblyOptions& options = {});

/// Interface mass matrix pairing porous pressure traces (columns) with fluid
/// normal-velocity tests (rows). Throws if the traces have different sizes.
SparseMatrix assemble_coupling(const InterfaceTrace& interface);
SparseMatrix assemble_coupling(const InterfaceTrace& fluid_side, const InterfaceTrace& porous_side);

enum class DofKind { interior, interface, dirichlet };

struct DofSlot {
  DofKind kind = DofKind::interior;
  Eigen::Index index = -1;  // position inside its partition
  double sign = 1.0;        // interface basis sign (lambda = u . n = -u_y)
};

/// Velocity dofs split into interior, interface-normal and Dirichlet sets.
struct FluidDofMap {
  std::vector<DofSlot> velocity;  // 2 per Q2 node
  Eigen::Index num_interior = 0;
  Eigen::Index num_interface = 0;
  Eigen::Index num_dirichlet = 0;
  Eigen::Index num_pressure = 0;
};

struct PorousDofMap {
  std::vector<DofSlot> pressure;  // 1 per Q2 node
  Eigen::Index num_interior = 0;
  Eigen::Index num_interface = 0;
  Eigen::Index num_dirichlet = 0;
};

/// Block system
///   [ A_II   A_IG   G_I  0     0    ] [u_I ]   [f_I ]
///   [ A_GI   A_GG   G_G  0     C    ] [u_G ]   [f_G ]
///   [ G_I^T  G_G^T  0    0     0    ] [p_f ] = [g_f ]
///   [ 0      0      0    Ap_II Ap_IG] [pp_I]   [fp_I]
///   [ 0     -C^T    0    Ap_GI Ap_GG] [pp_G]   [fp_G]
/// with u_G the interface normal velocity. g_f carries the Dirichlet lift of
/// the divergence constraint.
struct CoupledSystem {
  StructuredMesh fluid_mesh;
  StructuredMesh porous_mesh;
  InterfaceTrace interface;
  ProblemParams params;
  FluidDofMap fluid_dofs;
  PorousDofMap porous_dofs;

  SparseMatrix A_II, A_IG, A_GI, A_GG, G_I, G_G;
  SparseMatrix Ap_II, Ap_IG, Ap_GI, Ap_GG;
  SparseMatrix C;

  Vector f_I, f_G, g_f;
  Vector fp_I, fp_G;

  Vector fluid_dirichlet_values;   // full velocity vector, nonzero only on Dirichlet dofs
  Vector porous_dirichlet_values;  // full pressure vector, nonzero only on Dirichlet dofs

  Eigen::Index num_interface() const { return C.rows(); }
  Eigen::Index total_unknowns() const;
};

/// Assembles everything and eliminates Dirichlet dofs symmetrically.
CoupledSystem assemble_coupled_system(const StructuredMesh& fluid_mesh,
                                      const StructuredMesh& porous_mesh,
                                      const ProblemParams& params, const ProblemData& data,
                                      const AssemblyOptions& options = {});

CoupledSystem assemble_case(const CaseConfig& config, const ProblemData& data,
                            const AssemblyOptions& options = {});

/// Nodal fields on the full meshes (Dirichlet values included).
struct FluidField {
  Vector velocity;  // 2 per Q2 node
  Vector pressure;  // 1 per Q1 node
};

struct PorousField {
  Vector pressure;  // 1 per Q2 node
};

struct CoupledSolution {
  FluidField fluid;
  PorousField porous;
  Vector interface_velocity;  // u . n at interface nodes
};

/// Packs partitioned vectors back onto the meshes.
CoupledSolution scatter_solution(const CoupledSystem& system, const Vector& u_I,
                                 const Vector& u_G, const Vector& p_f, const Vector& pp_I,
                                 const Vector& pp_G);

}  // namespace sdnn
