#include <doctest.h>

#include <nlohmann/json.hpp>
#include <sstream>

#include "sdnn/report.hpp"

using namespace sdnn;
using nlohmann::json;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::size_t columns(const std::string& line) {
  return static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
}

Table1Row sample_row() {
  Table1Row r;
  r.reference = reference_table()[0];
  r.weights = {9.9712e-12, 0.99999};
  r.pcg_iterations = 2;
  r.cg_iterations = 13;
  r.pcg_converged = r.cg_converged = true;
  r.weights_match = r.pcg_match = r.cg_match = true;
  return r;
}

}  // namespace

TEST_CASE("three significant digits") {
  CHECK(format_sci3(9.9712e-12) == "9.97e-12");
  CHECK(format_sci3(0.99999) == "1.00e+00");
  CHECK(format_sci3(5.7816e-6) == "5.78e-06");
}

TEST_CASE("table CSV layout") {
  std::ostringstream out;
  auto bad = sample_row();
  bad.cg_match = false;
  bad.error = "solver said \"no\"";
  write_table1_csv(out, {sample_row(), bad});
  const auto lines = lines_of(out.str());
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "# table1 schema 1");
  const std::size_t n = columns(lines[1]);
  CHECK(columns(lines[2]) == n);
  CHECK(lines[2].find("9.97e-12,1.00e+00") != std::string::npos);
  CHECK(lines[2].find("out of scope") != std::string::npos);
  CHECK(lines[3].find(",fail,") != std::string::npos);
  CHECK(lines[3].find("'no'") != std::string::npos);
}

TEST_CASE("table JSON") {
  Table1Options o;
  const auto j = json::parse(table1_json({sample_row()}, o));
  CHECK(j["schema_version"] == kReportSchemaVersion);
  CHECK(j["passed"] == true);
  CHECK(j["config"]["kmax_convention"] == "dof");
  CHECK(j["config"]["alpha_bj"] == 1.0);
  CHECK(j["config"]["boundary_split"].get<std::string>().find("porous") != std::string::npos);
  CHECK(j["rows"][0]["robin_robin"] == "out of scope");
  CHECK(j["rows"][0]["reference"]["cg_iterations"] == 12);
}

TEST_CASE("run report embeds the resolved configuration") {
  RunConfig c;
  c.label = CaseLabel::d;
  c.method = Method::pcg;
  const auto r = run_case(c);
  const auto j = json::parse(run_report_json(r));
  CHECK(j["config"]["case"] == "d");
  CHECK(j["config"]["method"] == "pcg");
  CHECK(j["config"]["params"]["mu_f"] == 0.2);
  CHECK(j["config"]["alpha_bj"] == 1.0);
  CHECK(j["report"]["iterations"] == r.report.iterations);
  CHECK(j["report"]["residual_history"].size() == r.report.residual_history.size());
  CHECK(j["report"]["weights"]["alpha_p"].get<double>() == r.weights.alpha_p);
  CHECK(j["errors"].contains("porous_pressure_l2"));

  const auto s = json::parse(solve_report_json(r.report));
  CHECK(s["method"] == "pcg");

  std::ostringstream hist;
  write_history_csv(hist, r.report);
  CHECK(lines_of(hist.str()).size() == r.report.residual_history.size() + 2);
}

TEST_CASE("rho scan outputs") {
  RunConfig c;
  c.label = CaseLabel::b;
  c.level = 3;
  const auto cc = make_case(c.label, c.level);
  const AnalysisParams a{cc.params.mu_f, cc.params.eta_p()};
  const auto band = frequency_band(0.5, cc.h());
  const auto w = resolve_weights(c);
  const auto j = json::parse(rho_scan_json(c, w, band, a));
  CHECK(j["zeros"].size() == 2);
  CHECK(std::abs(j["rho_k_min"].get<double>()) == doctest::Approx(std::abs(j["rho_k_star"].get<double>())));

  std::ostringstream out;
  write_rho_scan_csv(out, rho_scan(w, a, band, 10));
  CHECK(lines_of(out.str()).size() == 12);

  // No point of the map beats the closed-form optimum.
  const auto grid = weight_grid_scan(a, band, 41, -8.0, 0.0, 500);
  const auto best = std::min_element(grid.begin(), grid.end(), [](const auto& x, const auto& y) {
    return x.max_abs_rho < y.max_abs_rho;
  });
  CHECK(best->max_abs_rho >= sampled_max_abs_rho(w, a, band, 500) * (1 - 1e-12));
  std::ostringstream g;
  write_weight_grid_csv(g, grid);
  CHECK(lines_of(g.str()).size() == 41 * 41 + 2);
}

TEST_CASE("convergence outputs") {
  ConvergenceStudy s;
  s.label = CaseLabel::b;
  s.levels = {{1, 0.1, {}}, {2, 0.05, {}}};
  std::ostringstream out;
  write_convergence_csv(out, s);
  const auto lines = lines_of(out.str());
  REQUIRE(lines.size() == 5);
  CHECK(lines.back().rfind("order,", 0) == 0);
  const auto j = json::parse(convergence_json(s));
  CHECK(j["levels"].size() == 2);
}
