#include "sdnn/assembly.hpp"

#include <array>
#include <stdexcept>

#include "sdnn/basis.hpp"

namespace sdnn {
namespace {

using Triplet = Eigen::Triplet<double>;

SparseMatrix from_triplets(Eigen::Index rows, Eigen::Index cols,
                           const std::vector<Triplet>& triplets) {
  SparseMatrix m(rows, cols);
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.makeCompressed();
  return m;
}

// Quadrature along a horizontal or vertical element edge, parameter s in [0, 1].
template <typename Fn>
void integrate_edge(const basis::GaussRule& rule, double h, Fn&& fn) {
  for (int q = 0; q < rule.size; ++q) fn(rule.points[q], rule.weights[q] * h);
}

SparseMatrix extract_block(const SparseMatrix& m, const std::vector<DofSlot>& row_slots,
                           DofKind row_kind, Eigen::Index rows,
                           const std::vector<DofSlot>* col_slots, DofKind col_kind,
                           Eigen::Index cols) {
  std::vector<Triplet> triplets;
  for (Eigen::Index r = 0; r < m.outerSize(); ++r) {
    const DofSlot& rs = row_slots[static_cast<std::size_t>(r)];
    if (rs.kind != row_kind) continue;
    for (SparseMatrix::InnerIterator it(m, r); it; ++it) {
      if (col_slots == nullptr) {
        triplets.emplace_back(rs.index, it.col(), rs.sign * it.value());
        continue;
      }
      const DofSlot& cs = (*col_slots)[static_cast<std::size_t>(it.col())];
      if (cs.kind != col_kind) continue;
      triplets.emplace_back(rs.index, cs.index, rs.sign * cs.sign * it.value());
    }
  }
  return from_triplets(rows, cols, triplets);
}

Vector restrict_vector(const Vector& full, const std::vector<DofSlot>& slots, DofKind kind,
                       Eigen::Index size) {
  Vector out = Vector::Zero(size);
  for (std::size_t k = 0; k < slots.size(); ++k)
    if (slots[k].kind == kind) out[slots[k].index] = slots[k].sign * full[static_cast<Eigen::Index>(k)];
  return out;
}

void require_interface_matches(const StructuredMesh& mesh, const InterfaceTrace& interface) {
  if (interface.fluid_side_nodes != mesh.q2_side_nodes(Side::bottom))
    throw MeshError("interface trace does not belong to this fluid mesh");
}

}  // namespace

StokesBlocks assemble_stokes(const StructuredMesh& mesh, const ProblemParams& params,
                             const InterfaceTrace& interface, const ProblemData& data,
                             const AssemblyOptions& options) {
  params.validate();
  require_interface_matches(mesh, interface);
  const auto rule = basis::gauss_rule(options.quadrature_points);
  const double h = mesh.h();
  const double mu = params.mu_f;
  const auto n_vel = static_cast<Eigen::Index>(2 * mesh.num_q2_nodes());
  const auto n_pre = static_cast<Eigen::Index>(mesh.num_q1_nodes());

  std::vector<Triplet> a_trip;
  std::vector<Triplet> g_trip;
  a_trip.reserve(mesh.num_elements() * 18 * 18);
  g_trip.reserve(mesh.num_elements() * 18 * 4);
  Vector load = Vector::Zero(n_vel);

  for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
    const auto q2 = mesh.q2_element_nodes(e);
    const auto q1 = mesh.q1_element_nodes(e);
    const Point origin = mesh.element_origin(e);
    Eigen::Matrix<double, 18, 18> ke = Eigen::Matrix<double, 18, 18>::Zero();
    Eigen::Matrix<double, 18, 4> ge = Eigen::Matrix<double, 18, 4>::Zero();
    Eigen::Matrix<double, 18, 1> fe = Eigen::Matrix<double, 18, 1>::Zero();

    for (int qy = 0; qy < rule.size; ++qy)
      for (int qx = 0; qx < rule.size; ++qx) {
        const double s = rule.points[qx];
        const double t = rule.points[qy];
        const double w = rule.weights[qx] * rule.weights[qy] * h * h;
        const auto sv = basis::evaluate_shapes(s, t, h);
        const std::array<const std::array<double, 9>*, 2> grad{&sv.q2_dx, &sv.q2_dy};
        for (int b = 0; b < 9; ++b)
          for (int d = 0; d < 2; ++d) {
            const int row = 2 * b + d;
            for (int a = 0; a < 9; ++a)
              for (int c = 0; c < 2; ++c) {
                double v = (*grad[d])[a] * (*grad[c])[b];
                if (c == d) v += sv.q2_dx[a] * sv.q2_dx[b] + sv.q2_dy[a] * sv.q2_dy[b];
                ke(row, 2 * a + c) += mu * v * w;
              }
            for (int q = 0; q < 4; ++q) ge(row, q) -= sv.q1[q] * (*grad[d])[b] * w;
          }
        if (data.fluid_force) {
          const Vec2 f = data.fluid_force({origin.x + h * s, origin.y + h * t});
          for (int b = 0; b < 9; ++b) {
            fe(2 * b) += f[0] * sv.q2[b] * w;
            fe(2 * b + 1) += f[1] * sv.q2[b] * w;
          }
        }
      }

    const std::size_t ey = e / mesh.nx();
    if (ey == 0) {
      // Interface edge: BJS friction on the tangential component and the
      // tangential defect as load.
      const double xi = params.xi_f();
      integrate_edge(rule, h, [&](double s, double w) {
        for (int b = 0; b < 3; ++b) {
          for (int a = 0; a < 3; ++a)
            ke(2 * b, 2 * a) += xi * basis::quad(a, s) * basis::quad(b, s) * w;
          if (data.tangential_defect)
            fe(2 * b) -= data.tangential_defect({origin.x + h * s, origin.y}) * basis::quad(b, s) * w;
        }
      });
    }
    if (ey + 1 == mesh.ny() && data.fluid_top_traction) {
      integrate_edge(rule, h, [&](double s, double w) {
        const Vec2 tr = data.fluid_top_traction({origin.x + h * s, origin.y + h});
        for (int a = 0; a < 3; ++a) {
          const int local = 3 * 2 + a;
          fe(2 * local) += tr[0] * basis::quad(a, s) * w;
          fe(2 * local + 1) += tr[1] * basis::quad(a, s) * w;
        }
      });
    }

    const std::size_t ex = e % mesh.nx();
    for (const bool left : {true, false}) {
      if (!data.fluid_side_traction || (left ? ex != 0 : ex + 1 != mesh.nx())) continue;
      const int col = left ? 0 : 2;
      const Vec2 normal(left ? -1.0 : 1.0, 0.0);
      const double x = origin.x + (left ? 0.0 : h);
      integrate_edge(rule, h, [&](double t, double w) {
        const Vec2 tr = data.fluid_side_traction({x, origin.y + h * t}, normal);
        for (int a = 0; a < 3; ++a) {
          const int local = 3 * a + col;
          fe(2 * local) += tr[0] * basis::quad(a, t) * w;
          fe(2 * local + 1) += tr[1] * basis::quad(a, t) * w;
        }
      });
    }

    for (int r = 0; r < 18; ++r) {
      const auto gr = static_cast<Eigen::Index>(2 * q2[r / 2] + r % 2);
      load[gr] += fe(r);
      for (int c = 0; c < 18; ++c) {
        const auto gc = static_cast<Eigen::Index>(2 * q2[c / 2] + c % 2);
        a_trip.emplace_back(gr, gc, ke(r, c));
      }
      for (int q = 0; q < 4; ++q)
        g_trip.emplace_back(gr, static_cast<Eigen::Index>(q1[q]), ge(r, q));
    }
  }
  return {from_triplets(n_vel, n_vel, a_trip), from_triplets(n_vel, n_pre, g_trip), load};
}

DarcyBlocks assemble_darcy(const StructuredMesh& mesh, const ProblemParams& params,
                           const ProblemData& data, const AssemblyOptions& options) {
  params.validate();
  const auto rule = basis::gauss_rule(options.quadrature_points);
  const double h = mesh.h();
  const auto n = static_cast<Eigen::Index>(mesh.num_q2_nodes());
  std::vector<Triplet> trip;
  trip.reserve(mesh.num_elements() * 81);
  Vector load = Vector::Zero(n);

  for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
    const auto nodes = mesh.q2_element_nodes(e);
    const Point origin = mesh.element_origin(e);
    Eigen::Matrix<double, 9, 9> ke = Eigen::Matrix<double, 9, 9>::Zero();
    Eigen::Matrix<double, 9, 1> fe = Eigen::Matrix<double, 9, 1>::Zero();
    for (int qy = 0; qy < rule.size; ++qy)
      for (int qx = 0; qx < rule.size; ++qx) {
        const double s = rule.points[qx];
        const double t = rule.points[qy];
        const double w = rule.weights[qx] * rule.weights[qy] * h * h;
        const auto sv = basis::evaluate_shapes(s, t, h);
        for (int b = 0; b < 9; ++b)
          for (int a = 0; a < 9; ++a)
            ke(b, a) += (params.eta1 * sv.q2_dx[a] * sv.q2_dx[b] +
                         params.eta2 * sv.q2_dy[a] * sv.q2_dy[b]) * w;
        if (data.porous_force) {
          const double f = data.porous_force({origin.x + h * s, origin.y + h * t});
          for (int b = 0; b < 9; ++b) fe(b) += f * sv.q2[b] * w;
        }
      }

    if (data.porous_side_flux && !options.porous_side_dirichlet) {
      const std::size_t ex = e % mesh.nx();
      auto side = [&](int a_col, double x, const Vec2& normal) {
        integrate_edge(rule, h, [&](double t, double w) {
          const double g = data.porous_side_flux({x, origin.y + h * t}, normal);
          for (int b = 0; b < 3; ++b) fe(3 * b + a_col) += g * basis::quad(b, t) * w;
        });
      };
      if (ex == 0) side(0, origin.x, Vec2(-1.0, 0.0));
      if (ex + 1 == mesh.nx()) side(2, origin.x + h, Vec2(1.0, 0.0));
    }

    for (int r = 0; r < 9; ++r) {
      const auto gr = static_cast<Eigen::Index>(nodes[r]);
      load[gr] += fe(r);
      for (int c = 0; c < 9; ++c) trip.emplace_back(gr, static_cast<Eigen::Index>(nodes[c]), ke(r, c));
    }
  }
  return {from_triplets(n, n, trip), load};
}

SparseMatrix assemble_coupling(const InterfaceTrace& fluid_side, const InterfaceTrace& porous_side) {
  if (fluid_side.size() != porous_side.size())
    throw MeshError("assemble_coupling: interface traces have different sizes");
  return assemble_coupling(fluid_side);
}

SparseMatrix assemble_coupling(const InterfaceTrace& interface) {
  const auto n = static_cast<Eigen::Index>(interface.size());
  if (n < 3 || n % 2 == 0) throw MeshError("assemble_coupling: interface needs 2m+1 nodes");
  const auto rule = basis::gauss_rule(3);
  std::vector<Triplet> trip;
  for (std::size_t edge = 0; edge < interface.num_edges(); ++edge) {
    const double len = interface.x[2 * edge + 2] - interface.x[2 * edge];
    for (int b = 0; b < 3; ++b)
      for (int a = 0; a < 3; ++a) {
        double m = 0.0;
        for (int q = 0; q < rule.size; ++q)
          m += basis::quad(a, rule.points[q]) * basis::quad(b, rule.points[q]) * rule.weights[q];
        trip.emplace_back(static_cast<Eigen::Index>(2 * edge + b),
                          static_cast<Eigen::Index>(2 * edge + a), m * len);
      }
  }
  return from_triplets(n, n, trip);
}

Eigen::Index CoupledSystem::total_unknowns() const {
  return fluid_dofs.num_interior + fluid_dofs.num_interface + fluid_dofs.num_pressure +
         porous_dofs.num_interior + porous_dofs.num_interface;
}

CoupledSystem assemble_coupled_system(const StructuredMesh& fluid_mesh,
                                      const StructuredMesh& porous_mesh,
                                      const ProblemParams& params, const ProblemData& data,
                                      const AssemblyOptions& options) {
  InterfaceTrace interface = extract_interface(fluid_mesh, porous_mesh);
  CoupledSystem sys{fluid_mesh, porous_mesh, interface, params, {}, {}, {}, {}, {}, {}, {}, {},
                    {}, {}, {}, {}, {}, {}, {}, {}, {}, {}, {}, {}};

  // Fluid partition. Side dofs are Dirichlet except the normal component at
  // the two interface corners, which stays an interface unknown.
  FluidDofMap& fd = sys.fluid_dofs;
  fd.velocity.resize(2 * fluid_mesh.num_q2_nodes());
  for (std::size_t node = 0; node < fluid_mesh.num_q2_nodes(); ++node) {
    const bool side = fluid_mesh.q2_on_side(node, Side::left) || fluid_mesh.q2_on_side(node, Side::right);
    const bool bottom = fluid_mesh.q2_on_side(node, Side::bottom);
    for (int c = 0; c < 2; ++c) {
      DofSlot& slot = fd.velocity[2 * node + c];
      if (bottom && c == 1) {
        slot = {DofKind::interface, static_cast<Eigen::Index>(node % fluid_mesh.q2_cols()), -1.0};
        ++fd.num_interface;
      } else if (side) {
        slot = {DofKind::dirichlet, fd.num_dirichlet++, 1.0};
      } else {
        slot = {DofKind::interior, fd.num_interior++, 1.0};
      }
    }
  }
  fd.num_pressure = static_cast<Eigen::Index>(fluid_mesh.num_q1_nodes());

  PorousDofMap& pd = sys.porous_dofs;
  pd.pressure.resize(porous_mesh.num_q2_nodes());
  for (std::size_t node = 0; node < porous_mesh.num_q2_nodes(); ++node) {
    DofSlot& slot = pd.pressure[node];
    const bool side = porous_mesh.q2_on_side(node, Side::left) || porous_mesh.q2_on_side(node, Side::right);
    if (porous_mesh.q2_on_side(node, Side::top)) {
      slot = {DofKind::interface, static_cast<Eigen::Index>(node % porous_mesh.q2_cols()), 1.0};
      ++pd.num_interface;
    } else if (porous_mesh.q2_on_side(node, Side::bottom) || (side && options.porous_side_dirichlet)) {
      slot = {DofKind::dirichlet, pd.num_dirichlet++, 1.0};
    } else {
      slot = {DofKind::interior, pd.num_interior++, 1.0};
    }
  }

  const StokesBlocks stokes = assemble_stokes(fluid_mesh, params, interface, data, options);
  const DarcyBlocks darcy = assemble_darcy(porous_mesh, params, data, options);

  // Dirichlet lifts.
  sys.fluid_dirichlet_values = Vector::Zero(stokes.A.rows());
  if (data.fluid_dirichlet) {
    for (std::size_t node = 0; node < fluid_mesh.num_q2_nodes(); ++node) {
      if (fd.velocity[2 * node].kind != DofKind::dirichlet &&
          fd.velocity[2 * node + 1].kind != DofKind::dirichlet)
        continue;
      const Vec2 u = data.fluid_dirichlet(fluid_mesh.q2_point(node));
      for (int c = 0; c < 2; ++c)
        if (fd.velocity[2 * node + c].kind == DofKind::dirichlet)
          sys.fluid_dirichlet_values[static_cast<Eigen::Index>(2 * node + c)] = u[c];
    }
  }
  sys.porous_dirichlet_values = Vector::Zero(darcy.A.rows());
  if (data.porous_dirichlet) {
    for (std::size_t node = 0; node < porous_mesh.num_q2_nodes(); ++node)
      if (pd.pressure[node].kind == DofKind::dirichlet)
        sys.porous_dirichlet_values[static_cast<Eigen::Index>(node)] =
            data.porous_dirichlet(porous_mesh.q2_point(node));
  }

  const auto nI = fd.num_interior;
  const auto nG = fd.num_interface;
  sys.A_II = extract_block(stokes.A, fd.velocity, DofKind::interior, nI, &fd.velocity, DofKind::interior, nI);
  sys.A_IG = extract_block(stokes.A, fd.velocity, DofKind::interior, nI, &fd.velocity, DofKind::interface, nG);
  sys.A_GI = extract_block(stokes.A, fd.velocity, DofKind::interface, nG, &fd.velocity, DofKind::interior, nI);
  sys.A_GG = extract_block(stokes.A, fd.velocity, DofKind::interface, nG, &fd.velocity, DofKind::interface, nG);
  sys.G_I = extract_block(stokes.G, fd.velocity, DofKind::interior, nI, nullptr, DofKind::interior, fd.num_pressure);
  sys.G_G = extract_block(stokes.G, fd.velocity, DofKind::interface, nG, nullptr, DofKind::interior, fd.num_pressure);

  const Vector fluid_rhs = stokes.load - stokes.A * sys.fluid_dirichlet_values;
  sys.f_I = restrict_vector(fluid_rhs, fd.velocity, DofKind::interior, nI);
  sys.f_G = restrict_vector(fluid_rhs, fd.velocity, DofKind::interface, nG);
  sys.g_f = -(stokes.G.transpose() * sys.fluid_dirichlet_values);

  const auto mI = pd.num_interior;
  const auto mG = pd.num_interface;
  sys.Ap_II = extract_block(darcy.A, pd.pressure, DofKind::interior, mI, &pd.pressure, DofKind::interior, mI);
  sys.Ap_IG = extract_block(darcy.A, pd.pressure, DofKind::interior, mI, &pd.pressure, DofKind::interface, mG);
  sys.Ap_GI = extract_block(darcy.A, pd.pressure, DofKind::interface, mG, &pd.pressure, DofKind::interior, mI);
  sys.Ap_GG = extract_block(darcy.A, pd.pressure, DofKind::interface, mG, &pd.pressure, DofKind::interface, mG);
  const Vector porous_rhs = darcy.load - darcy.A * sys.porous_dirichlet_values;
  sys.fp_I = restrict_vector(porous_rhs, pd.pressure, DofKind::interior, mI);
  sys.fp_G = restrict_vector(porous_rhs, pd.pressure, DofKind::interface, mG);

  sys.C = assemble_coupling(interface);
  return sys;
}

CoupledSystem assemble_case(const CaseConfig& config, const ProblemData& data,
                            const AssemblyOptions& options) {
  const std::size_t n = config.elements_per_side();
  const StructuredMesh fluid = build_mesh(config.fluid_domain(), n, n);
  const StructuredMesh porous = build_mesh(config.porous_domain(), n, n);
  return assemble_coupled_system(fluid, porous, config.params, data, options);
}

CoupledSolution scatter_solution(const CoupledSystem& system, const Vector& u_I,
                                 const Vector& u_G, const Vector& p_f, const Vector& pp_I,
                                 const Vector& pp_G) {
  CoupledSolution sol;
  sol.fluid.velocity = system.fluid_dirichlet_values;
  const auto& fd = system.fluid_dofs.velocity;
  for (std::size_t k = 0; k < fd.size(); ++k) {
    const auto gk = static_cast<Eigen::Index>(k);
    if (fd[k].kind == DofKind::interior) sol.fluid.velocity[gk] = u_I[fd[k].index];
    if (fd[k].kind == DofKind::interface) sol.fluid.velocity[gk] = fd[k].sign * u_G[fd[k].index];
  }
  sol.fluid.pressure = p_f;
  sol.porous.pressure = system.porous_dirichlet_values;
  const auto& pd = system.porous_dofs.pressure;
  for (std::size_t k = 0; k < pd.size(); ++k) {
    const auto gk = static_cast<Eigen::Index>(k);
    if (pd[k].kind == DofKind::interior) sol.porous.pressure[gk] = pp_I[pd[k].index];
    if (pd[k].kind == DofKind::interface) sol.porous.pressure[gk] = pp_G[pd[k].index];
  }
  sol.interface_velocity = u_G;
  return sol;
}

}  // namespace sdnn
