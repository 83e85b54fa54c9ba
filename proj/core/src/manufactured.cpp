#include "sdnn/manufactured.hpp"

#include <cmath>

#include "sdnn/basis.hpp"

namespace sdnn {

ExactSolution::ExactSolution(const ProblemParams& params) : params_(params) { params_.validate(); }

Vec2 ExactSolution::velocity(const Point& x) const {
  return {std::sqrt(params_.eta_p()), params_.alpha_bj * x.x};
}

Eigen::Matrix2d ExactSolution::velocity_gradient(const Point&) const {
  Eigen::Matrix2d g;
  g << 0.0, 0.0, params_.alpha_bj, 0.0;
  return g;
}

Vec2 ExactSolution::velocity_laplacian(const Point&) const { return Vec2::Zero(); }
Vec2 ExactSolution::grad_divergence(const Point&) const { return Vec2::Zero(); }

double ExactSolution::divergence(const Point& x) const {
  const Eigen::Matrix2d g = velocity_gradient(x);
  return g(0, 0) + g(1, 1);
}

double ExactSolution::fluid_pressure(const Point& x) const {
  return 2.0 * params_.mu_f * (x.x + x.y - 1.0) + 1.0 / (3.0 * params_.eta_p());
}

Vec2 ExactSolution::fluid_pressure_gradient(const Point&) const {
  return {2.0 * params_.mu_f, 2.0 * params_.mu_f};
}

double ExactSolution::porous_pressure(const Point& x) const {
  const double y = x.y;
  return (-params_.alpha_bj * x.x * (y - 1.0) + y * y * y / 3.0 - y * y + y) / params_.eta_p() +
         2.0 * params_.mu_f * x.x;
}

Vec2 ExactSolution::porous_pressure_gradient(const Point& x) const {
  const double y = x.y;
  const double eta = params_.eta_p();
  return {-params_.alpha_bj * (y - 1.0) / eta + 2.0 * params_.mu_f,
          (-params_.alpha_bj * x.x + y * y - 2.0 * y + 1.0) / eta};
}

Vec2 ExactSolution::porous_pressure_second(const Point& x) const {
  return {0.0, (2.0 * x.y - 2.0) / params_.eta_p()};
}

Eigen::Matrix2d ExactSolution::fluid_stress(const Point& x) const {
  const Eigen::Matrix2d g = velocity_gradient(x);
  return params_.mu_f * (g + g.transpose()) - fluid_pressure(x) * Eigen::Matrix2d::Identity();
}

Forcing forcing_terms(const ExactSolution& exact) {
  Forcing f;
  f.fluid = [exact](const Point& x) -> Vec2 {
    const double mu = exact.params().mu_f;
    return -mu * (exact.velocity_laplacian(x) + exact.grad_divergence(x)) +
           exact.fluid_pressure_gradient(x);
  };
  f.porous = [exact](const Point& x) {
    const Vec2 d2 = exact.porous_pressure_second(x);
    return -(exact.params().eta1 * d2[0] + exact.params().eta2 * d2[1]);
  };
  return f;
}

Forcing forcing_terms(const ProblemParams& params) { return forcing_terms(ExactSolution(params)); }

InterfaceResiduals interface_residuals(const ExactSolution& exact) {
  // Fluid outward normal on the interface and the tangent.
  const Vec2 n(0.0, -1.0);
  const Vec2 tau(1.0, 0.0);
  InterfaceResiduals r;
  r.normal = [exact, n](const Point& x) {
    return -n.dot(exact.fluid_stress(x) * n) - exact.porous_pressure(x);
  };
  r.tangential = [exact, n, tau](const Point& x) {
    return -tau.dot(exact.fluid_stress(x) * n) - exact.params().xi_f() * tau.dot(exact.velocity(x));
  };
  r.flux = [exact, n](const Point& x) {
    const ProblemParams& p = exact.params();
    const Vec2 g = exact.porous_pressure_gradient(x);
    const Vec2 flux(p.eta1 * g[0], p.eta2 * g[1]);
    return exact.velocity(x).dot(n) + flux.dot(n);
  };
  return r;
}

InterfaceResiduals interface_residuals(const ProblemParams& params) {
  return interface_residuals(ExactSolution(params));
}

ProblemData make_problem_data(const ExactSolution& exact) {
  const Forcing forcing = forcing_terms(exact);
  const InterfaceResiduals residuals = interface_residuals(exact);
  ProblemData data;
  data.fluid_force = forcing.fluid;
  data.porous_force = forcing.porous;
  data.fluid_dirichlet = [exact](const Point& x) { return exact.velocity(x); };
  data.fluid_top_traction = [exact](const Point& x) -> Vec2 {
    return exact.fluid_stress(x) * Vec2(0.0, 1.0);
  };
  data.fluid_side_traction = [exact](const Point& x, const Vec2& normal) -> Vec2 {
    return exact.fluid_stress(x) * normal;
  };
  data.tangential_defect = residuals.tangential;
  data.porous_dirichlet = [exact](const Point& x) { return exact.porous_pressure(x); };
  data.porous_side_flux = [exact](const Point& x, const Vec2& normal) {
    const ProblemParams& p = exact.params();
    const Vec2 g = exact.porous_pressure_gradient(x);
    return p.eta1 * g[0] * normal[0] + p.eta2 * g[1] * normal[1];
  };
  return data;
}

namespace {

template <typename Fn>
void for_each_quadrature_point(const StructuredMesh& mesh, int n, Fn&& fn) {
  const auto rule = basis::gauss_rule(n);
  const double h = mesh.h();
  for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
    const Point o = mesh.element_origin(e);
    for (int qy = 0; qy < rule.size; ++qy)
      for (int qx = 0; qx < rule.size; ++qx) {
        const double s = rule.points[qx];
        const double t = rule.points[qy];
        fn(e, Point{o.x + h * s, o.y + h * t}, basis::evaluate_shapes(s, t, h),
           rule.weights[qx] * rule.weights[qy] * h * h);
      }
  }
}

}  // namespace

FieldErrors error_norms(const StructuredMesh& fluid_mesh, const StructuredMesh& porous_mesh,
                        const CoupledSolution& solution, const ExactSolution& exact,
                        int quadrature_points) {
  FieldErrors err;
  for_each_quadrature_point(fluid_mesh, quadrature_points,
                            [&](std::size_t e, const Point& x, const basis::ShapeValues& sv, double w) {
    const auto q2 = fluid_mesh.q2_element_nodes(e);
    const auto q1 = fluid_mesh.q1_element_nodes(e);
    Vec2 u = Vec2::Zero();
    Eigen::Matrix2d gu = Eigen::Matrix2d::Zero();
    for (int a = 0; a < 9; ++a)
      for (int c = 0; c < 2; ++c) {
        const double coef = solution.fluid.velocity[static_cast<Eigen::Index>(2 * q2[a] + c)];
        u[c] += coef * sv.q2[a];
        gu(c, 0) += coef * sv.q2_dx[a];
        gu(c, 1) += coef * sv.q2_dy[a];
      }
    double p = 0.0;
    Vec2 gp = Vec2::Zero();
    for (int a = 0; a < 4; ++a) {
      const double coef = solution.fluid.pressure[static_cast<Eigen::Index>(q1[a])];
      p += coef * sv.q1[a];
      gp += coef * Vec2(sv.q1_dx[a], sv.q1_dy[a]);
    }
    err.velocity_l2 += (u - exact.velocity(x)).squaredNorm() * w;
    err.velocity_h1 += (gu - exact.velocity_gradient(x)).squaredNorm() * w;
    err.fluid_pressure_l2 += std::pow(p - exact.fluid_pressure(x), 2) * w;
    err.fluid_pressure_h1 += (gp - exact.fluid_pressure_gradient(x)).squaredNorm() * w;
  });
  for_each_quadrature_point(porous_mesh, quadrature_points,
                            [&](std::size_t e, const Point& x, const basis::ShapeValues& sv, double w) {
    const auto q2 = porous_mesh.q2_element_nodes(e);
    double p = 0.0;
    Vec2 gp = Vec2::Zero();
    for (int a = 0; a < 9; ++a) {
      const double coef = solution.porous.pressure[static_cast<Eigen::Index>(q2[a])];
      p += coef * sv.q2[a];
      gp += coef * Vec2(sv.q2_dx[a], sv.q2_dy[a]);
    }
    err.porous_pressure_l2 += std::pow(p - exact.porous_pressure(x), 2) * w;
    err.porous_pressure_h1 += (gp - exact.porous_pressure_gradient(x)).squaredNorm() * w;
  });
  for (double* v : {&err.velocity_l2, &err.velocity_h1, &err.fluid_pressure_l2,
                    &err.fluid_pressure_h1, &err.porous_pressure_l2, &err.porous_pressure_h1})
    *v = std::sqrt(*v);
  return err;
}

CoupledSolution interpolate_exact(const StructuredMesh& fluid_mesh,
                                  const StructuredMesh& porous_mesh, const ExactSolution& exact) {
  CoupledSolution sol;
  sol.fluid.velocity.resize(static_cast<Eigen::Index>(2 * fluid_mesh.num_q2_nodes()));
  for (std::size_t n = 0; n < fluid_mesh.num_q2_nodes(); ++n) {
    const Vec2 u = exact.velocity(fluid_mesh.q2_point(n));
    sol.fluid.velocity[static_cast<Eigen::Index>(2 * n)] = u[0];
    sol.fluid.velocity[static_cast<Eigen::Index>(2 * n + 1)] = u[1];
  }
  sol.fluid.pressure.resize(static_cast<Eigen::Index>(fluid_mesh.num_q1_nodes()));
  for (std::size_t n = 0; n < fluid_mesh.num_q1_nodes(); ++n)
    sol.fluid.pressure[static_cast<Eigen::Index>(n)] = exact.fluid_pressure(fluid_mesh.q1_point(n));
  sol.porous.pressure.resize(static_cast<Eigen::Index>(porous_mesh.num_q2_nodes()));
  for (std::size_t n = 0; n < porous_mesh.num_q2_nodes(); ++n)
    sol.porous.pressure[static_cast<Eigen::Index>(n)] = exact.porous_pressure(porous_mesh.q2_point(n));
  const auto bottom = fluid_mesh.q2_side_nodes(Side::bottom);
  sol.interface_velocity.resize(static_cast<Eigen::Index>(bottom.size()));
  for (std::size_t k = 0; k < bottom.size(); ++k)
    sol.interface_velocity[static_cast<Eigen::Index>(k)] = -exact.velocity(fluid_mesh.q2_point(bottom[k]))[1];
  return sol;
}

}  // namespace sdnn
