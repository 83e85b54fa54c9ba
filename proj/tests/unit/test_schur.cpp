#include <doctest.h>

#include "helpers.hpp"
#include "sdnn/schur.hpp"
#include "sdnn/weights.hpp"

using namespace sdnn;

namespace {

InterfaceProblem make_problem(CaseLabel label, int level) {
  const auto c = make_case(label, level);
  return InterfaceProblem(assemble_case(c, make_problem_data(ExactSolution(c.params))));
}

WeightPair optimal_for(CaseLabel label, int level) {
  const auto c = make_case(label, level);
  return optimal_weights({c.params.mu_f, c.params.eta_p()}, frequency_band(0.5, c.h()));
}

double relative(const Vector& a, const Vector& b) { return (a - b).norm() / b.norm(); }

}  // namespace

TEST_CASE("zero input maps to zero") {
  const auto ip = make_problem(CaseLabel::a, 1);
  const Vector z = Vector::Zero(ip.size());
  CHECK(ip.apply_sigma_f(z).norm() == 0.0);
  CHECK(ip.apply_sigma_p(z).norm() == 0.0);
  CHECK(ip.apply_precond(z, {0.5, 0.5}).norm() == 0.0);
}

TEST_CASE("dense operators match the block formulas on levels 1 and 2") {
  for (int level : {1, 2})
    for (CaseLabel label : {CaseLabel::a, CaseLabel::d}) {
      const auto ip = make_problem(label, level);
      const Eigen::MatrixXd Sf = ip.dense_sigma_f();
      const Eigen::MatrixXd Sp = ip.dense_sigma_p();
      const Eigen::MatrixXd Sf_ref = testing::dense_schur_fluid(ip.system());
      const Eigen::MatrixXd Sp_ref = testing::dense_schur_porous(ip.system());
      CHECK(testing::max_abs(Sf - Sf_ref) < 1e-10 * testing::max_abs(Sf_ref));
      CHECK(testing::max_abs(Sp - Sp_ref) < 1e-10 * testing::max_abs(Sp_ref));
    }
}

TEST_CASE("Sigma_f, Sigma_p, their sum and P are symmetric positive definite") {
  const auto ip = make_problem(CaseLabel::b, 1);
  const auto w = optimal_for(CaseLabel::b, 1);
  const std::vector<std::pair<const char*, LinearOperator>> ops = {
      {"sigma_f", [&](const Vector& x) { return ip.apply_sigma_f(x); }},
      {"sigma_p", [&](const Vector& x) { return ip.apply_sigma_p(x); }},
      {"sigma", ip.sigma_operator()},
      {"precond", ip.precond_operator(w)}};
  std::mt19937 rng(2024);
  for (const auto& [name, op] : ops) {
    CAPTURE(name);
    for (int t = 0; t < 100; ++t) {
      const Vector x = testing::random_vector(ip.size(), rng);
      const Vector y = testing::random_vector(ip.size(), rng);
      const Vector ax = op(x), ay = op(y);
      const double scale = ax.norm() * y.norm() + ay.norm() * x.norm();
      CHECK(std::abs(y.dot(ax) - x.dot(ay)) < 1e-10 * scale);
      CHECK(x.dot(ax) > 0.0);
    }
  }
}

TEST_CASE("preconditioner pieces invert the subdomain operators") {
  const auto ip = make_problem(CaseLabel::c, 1);
  std::mt19937 rng(5);
  const Vector l = testing::random_vector(ip.size(), rng);
  CHECK(relative(ip.apply_precond(ip.apply_sigma_f(l), {1.0, 1e-300}), l) < 1e-10);
  CHECK(relative(ip.apply_sigma_f_inverse(ip.apply_sigma_f(l)), l) < 1e-10);
  CHECK(relative(ip.apply_sigma_p_inverse(ip.apply_sigma_p(l)), l) < 1e-10);
  const Vector r = testing::random_vector(ip.size(), rng);
  const Vector mix = ip.apply_precond(r, {0.3, 0.7});
  CHECK(relative(mix, 0.3 * ip.apply_sigma_f_inverse(r) + 0.7 * ip.apply_sigma_p_inverse(r)) < 1e-14);
}

TEST_CASE("reduced right-hand side") {
  const auto c = make_case(CaseLabel::a, 1);
  const InterfaceProblem zero(assemble_case(c, ProblemData::zero()));
  CHECK(zero.reduced_rhs().norm() == 0.0);

  const auto ip = make_problem(CaseLabel::a, 1);
  const auto mono = ip.monolithic_solve();
  const Vector b = ip.reduced_rhs();
  CHECK(relative(ip.apply_sigma(mono.interface_velocity), b) < 1e-10);
  CHECK(ip.schur_residual(mono.interface_velocity).norm() < 1e-10 * b.norm());

  const auto again = make_problem(CaseLabel::a, 1);
  CHECK((again.reduced_rhs() - b).norm() == 0.0);
}

TEST_CASE("nn_step has the Schur solution as fixed point") {
  for (CaseLabel label : {CaseLabel::a, CaseLabel::b}) {
    const auto ip = make_problem(label, 1);
    const Vector l = ip.monolithic_solve().interface_velocity;
    const Vector next = ip.nn_step(l, optimal_for(label, 1));
    CHECK(relative(next, l) < 1e-10);
  }
}

TEST_CASE("nn_step sequence equals Richardson with P") {
  for (CaseLabel label : {CaseLabel::b, CaseLabel::c})
    for (int level : {1, 2}) {
      const auto ip = make_problem(label, level);
      const auto w = optimal_for(label, level);
      std::mt19937 rng(level);
      Vector nn = testing::random_vector(ip.size(), rng);
      Vector rich = nn;
      const auto P = ip.precond_operator(w);
      for (int step = 0; step < 5; ++step) {
        nn = ip.nn_step(nn, w);
        rich = rich - P(ip.apply_sigma(rich) - ip.reduced_rhs());
        CHECK(relative(nn, rich) < 1e-12);
      }
    }
}

TEST_CASE("homogeneous NN iteration contracts") {
  const auto c = make_case(CaseLabel::c, 2);
  const InterfaceProblem ip(assemble_case(c, ProblemData::zero()));
  const auto w = optimal_for(CaseLabel::c, 2);
  const double predicted = std::abs(rho_at_k_star(w));
  std::mt19937 rng(9);
  Vector l = testing::random_vector(ip.size(), rng);
  double prev = l.norm();
  for (int step = 0; step < 6; ++step) {
    l = ip.nn_step(l, w);
    CHECK(l.norm() / prev <= predicted + 0.1);
    prev = l.norm();
  }
}

TEST_CASE("recovered solution keeps the interface trace and matches the monolithic solve") {
  const auto ip = make_problem(CaseLabel::b, 2);
  const auto mono = ip.monolithic_solve();
  const auto rec = ip.recover_full_solution(mono.interface_velocity);
  CHECK((rec.interface_velocity - mono.interface_velocity).norm() == 0.0);
  CHECK(relative(rec.fluid.velocity, mono.fluid.velocity) < 1e-10);
  CHECK(relative(rec.porous.pressure, mono.porous.pressure) < 1e-10);

  KrylovOptions o;
  o.tol = 1e-9;
  const auto solved = pcg(ip.sigma_operator(), ip.precond_operator(optimal_for(CaseLabel::b, 2)),
                          ip.reduced_rhs(), o);
  const auto from_pcg = ip.recover_full_solution(solved.x);
  CHECK(relative(from_pcg.fluid.velocity, mono.fluid.velocity) < 1e-8);
  CHECK(relative(from_pcg.fluid.pressure, mono.fluid.pressure) < 1e-8);
  CHECK(relative(from_pcg.porous.pressure, mono.porous.pressure) < 1e-8);
}

TEST_CASE("zero data gives the zero solution") {
  const auto c = make_case(CaseLabel::d, 1);
  const InterfaceProblem ip(assemble_case(c, ProblemData::zero()));
  const auto mono = ip.monolithic_solve();
  CHECK(mono.fluid.velocity.norm() == 0.0);
  CHECK(mono.porous.pressure.norm() == 0.0);
  const auto rec = ip.recover_full_solution(Vector::Zero(ip.size()));
  CHECK(rec.fluid.pressure.norm() == 0.0);
}

TEST_CASE("dense helpers accept the finest benchmark interface") {
  const auto c = make_case(CaseLabel::a, 4);
  const InterfaceProblem ip(assemble_case(c, ProblemData::zero()));
  CHECK(ip.size() == 81);
  CHECK_NOTHROW(ip.dense_sigma_p());
}
