#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "sdnn/assembly.hpp"
#include "sdnn/manufactured.hpp"

using namespace sdnn;

namespace {

const RectDomain kFluid{0.0, 0.5, 1.0, 1.5};
const RectDomain kPorous{0.0, 0.5, 0.5, 1.0};

Vector nodal(const StructuredMesh& m, double (*f)(const Point&)) {
  Vector v(m.num_q2_nodes());
  for (std::size_t n = 0; n < m.num_q2_nodes(); ++n) v[static_cast<Eigen::Index>(n)] = f(m.q2_point(n));
  return v;
}

double dense_diff(const SparseMatrix& a, const SparseMatrix& b) {
  return (Eigen::MatrixXd(a) - Eigen::MatrixXd(b)).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("vertical translation lies in the kernel of the viscous operator") {
  // A horizontal translation would feel the interface friction; the vertical
  // one only sees the strain term.
  const auto f = build_mesh(kFluid, 1, 1);
  const auto p = build_mesh(kPorous, 1, 1);
  const auto blocks = assemble_stokes(f, ProblemParams{}, extract_interface(f, p));
  Vector u = Vector::Zero(2 * static_cast<Eigen::Index>(f.num_q2_nodes()));
  for (Eigen::Index n = 0; n < static_cast<Eigen::Index>(f.num_q2_nodes()); ++n) u[2 * n + 1] = 1.0;
  CHECK((blocks.A * u).norm() < 1e-13);
}

TEST_CASE("constant pressure is orthogonal to the divergence of interior velocities") {
  const auto f = build_mesh(kFluid, 4, 4);
  const auto p = build_mesh(kPorous, 4, 4);
  const auto blocks = assemble_stokes(f, ProblemParams{}, extract_interface(f, p));
  const Vector ones = Vector::Ones(static_cast<Eigen::Index>(f.num_q1_nodes()));
  const Vector g = blocks.G * ones;
  for (std::size_t n = 0; n < f.num_q2_nodes(); ++n) {
    bool boundary = false;
    for (Side s : {Side::bottom, Side::right, Side::top, Side::left}) boundary |= f.q2_on_side(n, s);
    if (boundary) continue;
    CHECK(std::abs(g[2 * static_cast<Eigen::Index>(n)]) < 1e-14);
    CHECK(std::abs(g[2 * static_cast<Eigen::Index>(n) + 1]) < 1e-14);
  }
}

TEST_CASE("Stokes interior rows reproduce the manufactured solution") {
  // u_f and p_f lie in the discrete spaces, so the interior equations hold
  // up to round-off.
  const auto c = make_case(CaseLabel::b, 1);
  const ExactSolution exact(c.params);
  const auto s = assemble_case(c, make_problem_data(exact));
  const auto x = testing::partition(s, interpolate_exact(s.fluid_mesh, s.porous_mesh, exact));
  const Vector r = s.A_II * x.u_I + s.A_IG * x.u_G + s.G_I * x.p_f - s.f_I;
  CHECK(r.norm() / s.f_I.norm() < 1e-12);
  const Vector div = Vector(s.G_I.transpose() * x.u_I) + s.G_G.transpose() * x.u_G - s.g_f;
  CHECK(div.norm() < 1e-12);
}

TEST_CASE("Darcy operator: kernel and energies") {
  const auto unit = build_mesh(RectDomain{0.0, 1.0, 0.0, 1.0}, 4, 4);
  const auto iso = assemble_darcy(unit, ProblemParams{});
  const Vector one = Vector::Ones(static_cast<Eigen::Index>(unit.num_q2_nodes()));
  CHECK((iso.A * one).norm() < 1e-13);
  const Vector px = nodal(unit, [](const Point& q) { return q.x; });
  CHECK(px.dot(iso.A * px) == doctest::Approx(1.0).epsilon(1e-13));

  ProblemParams aniso;
  aniso.eta1 = 2.0;
  aniso.eta2 = 0.5;
  const auto pm = build_mesh(kPorous, 5, 5);
  const auto a = assemble_darcy(pm, aniso);
  const Vector pxy = nodal(pm, [](const Point& q) { return q.x + q.y; });
  CHECK(pxy.dot(a.A * pxy) == doctest::Approx(2.5 * 0.25).epsilon(1e-13));
}

TEST_CASE("interface mass matrix") {
  const auto f = build_mesh(kFluid, 5, 5);
  const auto p = build_mesh(kPorous, 5, 5);
  const auto trace = extract_interface(f, p);
  const SparseMatrix C = assemble_coupling(trace);
  const Vector one = Vector::Ones(static_cast<Eigen::Index>(trace.size()));
  CHECK(one.dot(C * one) == doctest::Approx(0.5).epsilon(1e-14));
  // Row sums are the Simpson weights h/6 (vertices, doubled inside) and 2h/3.
  const Vector rows = C * one;
  const double h = 0.1;
  for (Eigen::Index i = 0; i < rows.size(); ++i) {
    const bool end = i == 0 || i == rows.size() - 1;
    const double expected = i % 2 == 1 ? 2.0 * h / 3.0 : (end ? h / 6.0 : h / 3.0);
    CHECK(rows[i] == doctest::Approx(expected).epsilon(1e-13));
  }
  CHECK(dense_diff(C, SparseMatrix(C.transpose())) < 1e-16);

  const auto f2 = build_mesh(kFluid, 10, 10);
  const auto p2 = build_mesh(kPorous, 10, 10);
  CHECK_THROWS(assemble_coupling(trace, extract_interface(f2, p2)));
}

TEST_CASE("higher quadrature does not change the operators") {
  const auto c = make_case(CaseLabel::c, 1);
  const ExactSolution exact(c.params);
  const auto data = make_problem_data(exact);
  const auto s3 = assemble_case(c, data, AssemblyOptions{3, false});
  const auto s5 = assemble_case(c, data, AssemblyOptions{5, false});
  CHECK(dense_diff(s3.A_II, s5.A_II) < 1e-12 * Eigen::MatrixXd(s3.A_II).cwiseAbs().maxCoeff());
  CHECK(dense_diff(s3.G_I, s5.G_I) < 1e-14);
  CHECK(dense_diff(s3.Ap_II, s5.Ap_II) < 1e-12 * Eigen::MatrixXd(s3.Ap_II).cwiseAbs().maxCoeff());
  CHECK(dense_diff(s3.C, s5.C) < 1e-16);
  CHECK_THROWS(assemble_case(c, data, AssemblyOptions{1, false}));
}

TEST_CASE("assembly is deterministic") {
  const auto c = make_case(CaseLabel::a, 1);
  const ExactSolution exact(c.params);
  const auto s1 = assemble_case(c, make_problem_data(exact));
  const auto s2 = assemble_case(c, make_problem_data(exact));
  CHECK(dense_diff(s1.A_II, s2.A_II) == 0.0);
  CHECK((s1.f_I - s2.f_I).norm() == 0.0);
  CHECK((s1.fp_I - s2.fp_I).norm() == 0.0);
}

TEST_CASE("dof partition bookkeeping on case (a) level 1") {
  const auto c = make_case(CaseLabel::a, 1);
  const auto s = assemble_case(c, make_problem_data(ExactSolution(c.params)));
  // Left and right sides carry 11 Q2 nodes each, two components, except the
  // normal component at the two interface corners, which is an interface unknown.
  CHECK(s.fluid_dofs.num_dirichlet == 2 * 2 * 11 - 2);
  CHECK(s.fluid_dofs.num_interface == 11);
  CHECK(s.fluid_dofs.num_interior == 242 - 42 - 11);
  CHECK(s.fluid_dofs.num_pressure == 36);
  CHECK(s.porous_dofs.num_dirichlet == 11);
  CHECK(s.porous_dofs.num_interface == 11);
  CHECK(s.porous_dofs.num_interior == 121 - 22);
  CHECK(s.num_interface() == 11);
  CHECK(s.total_unknowns() == 189 + 11 + 36 + 99 + 11);
  CHECK(s.A_II.rows() == 189);
  CHECK(s.C.rows() == 11);
  CHECK(s.C.cols() == 11);
}

TEST_CASE("zero data gives zero loads") {
  const auto c = make_case(CaseLabel::b, 1);
  const auto s = assemble_case(c, ProblemData::zero());
  CHECK(s.f_I.norm() == 0.0);
  CHECK(s.f_G.norm() == 0.0);
  CHECK(s.g_f.norm() == 0.0);
  CHECK(s.fp_I.norm() == 0.0);
  CHECK(s.fp_G.norm() == 0.0);
}
