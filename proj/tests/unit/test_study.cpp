#include <doctest.h>

#include "sdnn/study.hpp"

using namespace sdnn;

TEST_CASE("name parsing round-trips") {
  for (Method m : {Method::pcg, Method::cg, Method::richardson, Method::nn, Method::monolithic})
    CHECK(parse_method(to_string(m)) == m);
  for (KmaxConvention c : {KmaxConvention::dof, KmaxConvention::element})
    CHECK(parse_kmax_convention(to_string(c)) == c);
  for (WeightSource s : {WeightSource::optimal, WeightSource::asymptotic, WeightSource::manual})
    CHECK(parse_weight_source(to_string(s)) == s);
  CHECK_THROWS_AS(parse_method("gmres"), ConfigError);
}

TEST_CASE("run config validation") {
  RunConfig c;
  CHECK_NOTHROW(c.validate());
  c.tol = 1.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.tol = 1e-9;
  c.weight_source = WeightSource::manual;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.manual_weights = WeightPair{0.0, 1.0};
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.manual_weights = WeightPair{1e-3, 0.9};
  CHECK_NOTHROW(c.validate());
  CHECK(resolve_weights(c).alpha_f == 1e-3);
  c.level = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("three-digit comparison") {
  CHECK(same_three_digits(9.9712e-12, 9.97e-12));
  CHECK(same_three_digits(0.99951, 1.0));
  CHECK_FALSE(same_three_digits(9.9749e-12, 9.98e-12));
  CHECK_FALSE(same_three_digits(2.49e-10, 9.97e-10));
}

TEST_CASE("monolithic run takes zero iterations") {
  RunConfig c;
  c.label = CaseLabel::b;
  c.method = Method::monolithic;
  const auto r = run_case(c);
  CHECK(r.report.iterations == 0);
  CHECK(r.report.converged);
  CHECK(r.errors.porous_pressure_l2 > 0.0);
  CHECK(r.interface_unknowns == 11);
}

TEST_CASE("pcg run on case (b) level 1") {
  RunConfig c;
  c.label = CaseLabel::b;
  const auto r = run_case(c);
  CHECK(r.report.iterations == 3);
  CHECK(r.report.weights.has_value());
  CHECK(r.report.residual_history.back() <= 1e-9);
}

TEST_CASE("nn and richardson runs produce the same report") {
  RunConfig c;
  c.label = CaseLabel::c;
  c.method = Method::nn;
  const auto nn = run_case(c);
  c.method = Method::richardson;
  const auto rich = run_case(c);
  CHECK(nn.report.iterations == rich.report.iterations);
  REQUIRE(nn.report.residual_history.size() == rich.report.residual_history.size());
  for (std::size_t i = 0; i < nn.report.residual_history.size(); ++i) {
    const double a = nn.report.residual_history[i], b = rich.report.residual_history[i];
    // Residuals below ~1e-6 are dominated by cancellation in Sigma lambda - b.
    CHECK(std::abs(a - b) <= 1e-6 * std::max(b, 1e-3));
  }
  CHECK((nn.solution.porous.pressure - rich.solution.porous.pressure).norm() <
        1e-8 * rich.solution.porous.pressure.norm());
}

TEST_CASE("asymptotic weight source uses the expansion") {
  RunConfig c;
  c.label = CaseLabel::a;
  c.level = 2;
  c.weight_source = WeightSource::asymptotic;
  const auto cc = make_case(c.label, c.level);
  const auto e = asymptotic_weights(0.5, cc.h(), {cc.params.mu_f, cc.params.eta_p()});
  const auto w = resolve_weights(c);
  CHECK(w.alpha_f == e.alpha_f);
  CHECK(w.alpha_p == e.alpha_p);
}

TEST_CASE("table rows on the coarse levels") {
  Table1Options o;
  o.levels = {1};
  o.cases = {CaseLabel::a, CaseLabel::b};
  const auto rows = table1(o);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].reference.label == CaseLabel::a);
  CHECK(rows[1].reference.label == CaseLabel::b);
  for (const auto& r : rows) {
    CHECK(r.error.empty());
    CHECK(r.weights_match);
    CHECK(r.pcg_match);
    CHECK(r.cg_match);
  }
  CHECK(reference_table().size() == 16);
}

TEST_CASE("convergence study") {
  const auto s = convergence_study(CaseLabel::b, {1, 2, 3});
  REQUIRE(s.levels.size() == 3);
  CHECK(s.levels[0].h > s.levels[2].h);
  CHECK(s.orders.porous_pressure_l2 >= 2.5);
  CHECK(s.orders.porous_pressure_l2 <= 3.5);
  CHECK(s.monotone);
  // The Stokes part of the exact solution lies in the FE spaces.
  CHECK(s.floor_fields.size() == 4);
  for (const auto& l : s.levels) CHECK(l.errors.velocity_h1 < 1e-6 * l.errors.porous_pressure_l2);
  CHECK_THROWS_AS(convergence_study(CaseLabel::b, {1, 2}), ConfigError);
  CHECK(fitted_order({1.0, 0.5, 0.25}, {1.0, 0.125, 0.015625}) == doctest::Approx(3.0));
}
