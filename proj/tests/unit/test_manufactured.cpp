#include <doctest.h>

#include <cmath>

#include "sdnn/manufactured.hpp"
#include "sdnn/schur.hpp"

using namespace sdnn;

TEST_CASE("forcing terms") {
  const auto fb = forcing_terms(make_case(CaseLabel::b, 1).params);
  for (const Point x : {Point{0.1, 1.2}, Point{0.4, 1.45}}) {
    const Vec2 f = fb.fluid(x);
    CHECK(f[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(f[1] == doctest::Approx(2.0).epsilon(1e-12));
  }
  const auto fa = forcing_terms(make_case(CaseLabel::a, 1).params);
  CHECK(fa.fluid({0.2, 1.3})[0] == doctest::Approx(20.0).epsilon(1e-12));
  CHECK(std::abs(fb.porous({0.3, 1.0})) < 1e-9);
  CHECK(fb.porous({0.3, 0.5}) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(fa.porous({0.1, 0.75}) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("exact velocity is divergence free") {
  const ExactSolution ex(make_case(CaseLabel::c, 1).params);
  for (double x : {0.0, 0.17, 0.5})
    for (double y : {1.0, 1.3, 1.5}) CHECK(ex.divergence({x, y}) == 0.0);
}

TEST_CASE("interface residuals") {
  const auto rb = interface_residuals(make_case(CaseLabel::b, 1).params);
  CHECK(std::abs(rb.tangential({0.2, 1.0})) < 1e-12);

  const auto ra = interface_residuals(make_case(CaseLabel::a, 1).params);
  for (double x : {0.0, 0.25, 0.5}) {
    CHECK(ra.tangential({x, 1.0}) == doctest::Approx(10.0 - std::sqrt(10.0)).epsilon(1e-12));
    CHECK(std::abs(ra.normal({x, 1.0})) < 1e-12 * 1e9);  // stress scale is 1/(3 eta) ~ 1e9
    CHECK(std::abs(ra.flux({x, 1.0})) < 1e-12);
  }

  ProblemParams p = make_case(CaseLabel::a, 1).params;
  p.alpha_bj = 0.5;
  const auto rh = interface_residuals(p);
  CHECK(rh.tangential({0.3, 1.0}) == doctest::Approx(10.0 * 0.5 - 0.5 * std::sqrt(10.0)).epsilon(1e-12));
}

TEST_CASE("normal stress balance and flux balance at the interface") {
  const auto params = make_case(CaseLabel::d, 1).params;
  const ExactSolution ex(params);
  for (double x : {0.0, 0.2, 0.5}) {
    const Point q{x, 1.0};
    // n = (0, -1): n.T.n = T_yy.
    const double normal_stress = ex.fluid_stress(q)(1, 1);
    CHECK(-normal_stress == doctest::Approx(2 * params.mu_f * x + 1.0 / (3 * params.eta_p())));
    CHECK(ex.porous_pressure(q) == doctest::Approx(-normal_stress));
    const double un = -ex.velocity(q)[1];
    CHECK(un == doctest::Approx(-x));
    CHECK(params.eta_p() * -ex.porous_pressure_gradient(q)[1] == doctest::Approx(-un));
  }
}

TEST_CASE("error norms: interpolant, zero field") {
  const auto c = make_case(CaseLabel::b, 1);
  const ExactSolution ex(c.params);
  const InterfaceProblem ip(assemble_case(c, make_problem_data(ex)));
  const auto& s = ip.system();
  const auto interp = interpolate_exact(s.fluid_mesh, s.porous_mesh, ex);
  const auto e = error_norms(s.fluid_mesh, s.porous_mesh, interp, ex);
  CHECK(e.velocity_l2 < 1e-13);
  // The pressure carries a 1 / (3 eta) offset, so compare relative to it.
  CHECK(e.fluid_pressure_l2 < 1e-15 / c.params.eta_p());
  // Cubic in y: the Q2 interpolation error is O(h^3) but not zero.
  CHECK(e.porous_pressure_l2 > 0.0);
  CHECK(e.porous_pressure_l2 < 1e-3 / c.params.eta_p());

  CoupledSolution zero = interp;
  zero.fluid.velocity.setZero();
  zero.fluid.pressure.setZero();
  zero.porous.pressure.setZero();
  const auto z = error_norms(s.fluid_mesh, s.porous_mesh, zero, ex);
  // ||u||^2 over the fluid box: int eta + x^2 = 0.25 eta + 0.5 * 0.5^3 / 3.
  const double u_norm = std::sqrt(0.25 * c.params.eta_p() + 0.5 * 0.125 / 3.0);
  CHECK(z.velocity_l2 == doctest::Approx(u_norm).epsilon(1e-12));
  CHECK(z.velocity_h1 == doctest::Approx(0.5).epsilon(1e-12));  // |grad u|^2 = 1 on area 0.25
}

TEST_CASE("problem data derives from one exact solution") {
  auto params = make_case(CaseLabel::a, 1).params;
  params.alpha_bj = 2.0;
  const ExactSolution ex(params);
  const auto data = make_problem_data(ex);
  const Point top{0.3, 1.5};
  const Eigen::Matrix2d T = ex.fluid_stress(top);
  CHECK(data.fluid_top_traction(top)[0] == doctest::Approx(T(0, 1)));
  CHECK(data.fluid_top_traction(top)[1] == doctest::Approx(T(1, 1)));
  CHECK(data.tangential_defect({0.1, 1.0}) ==
        doctest::Approx(interface_residuals(ex).tangential({0.1, 1.0})));
  CHECK(data.fluid_dirichlet({0.0, 1.2})[1] == doctest::Approx(0.0));
  CHECK(data.fluid_dirichlet({0.5, 1.2})[1] == doctest::Approx(1.0));  // alpha_BJ = 2
  CHECK(data.porous_dirichlet({0.25, 0.5}) == doctest::Approx(ex.porous_pressure({0.25, 0.5})));
}
