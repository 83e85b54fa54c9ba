#include "sdnn/report.hpp"

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <nlohmann/json.hpp>

namespace sdnn {

namespace {

using nlohmann::json;

constexpr const char* kRobinRobin = "out of scope";

std::string case_name(CaseLabel label) { return std::string(1, to_char(label)); }

json weights_json(const WeightPair& w) { return {{"alpha_f", w.alpha_f}, {"alpha_p", w.alpha_p}}; }

json errors_json(const FieldErrors& e) {
  return {{"velocity_l2", e.velocity_l2},
          {"velocity_h1", e.velocity_h1},
          {"fluid_pressure_l2", e.fluid_pressure_l2},
          {"fluid_pressure_h1", e.fluid_pressure_h1},
          {"porous_pressure_l2", e.porous_pressure_l2},
          {"porous_pressure_h1", e.porous_pressure_h1}};
}

json params_json(const ProblemParams& p) {
  return {{"mu_f", p.mu_f}, {"eta1", p.eta1}, {"eta2", p.eta2}, {"eta_p", p.eta_p()},
          {"alpha_bj", p.alpha_bj}, {"xi_f", p.xi_f()}};
}

json config_json(const RunConfig& c) {
  const CaseConfig cc = make_case(c.label, c.level, c.alpha_bj);
  json j = {{"command", c.command},
            {"case", case_name(c.label)},
            {"level", c.level},
            {"h", cc.h()},
            {"method", to_string(c.method)},
            {"weight_source", to_string(c.weight_source)},
            {"tolerance", c.tol},
            {"max_iter", c.max_iter},
            {"kmax_convention", to_string(c.kmax_convention)},
            {"alpha_bj", c.alpha_bj},
            {"boundary_split", boundary_split_description()},
            {"interface_length", cc.fluid_domain().width()},
            {"params", params_json(cc.params)}};
  if (c.manual_weights) j["manual_weights"] = weights_json(*c.manual_weights);
  return j;
}

json report_json(const SolveReport& r) {
  json j = {{"method", r.method},
            {"iterations", r.iterations},
            {"converged", r.converged},
            {"tolerance", r.tolerance},
            {"final_residual", r.final_residual()},
            {"residual_history", r.residual_history},
            {"wall_time_s", r.wall_time_s},
            {"initial_guess", r.initial_guess}};
  j["weights"] = r.weights ? weights_json(*r.weights) : json(nullptr);
  return j;
}

void header(std::ostream& out, const char* table) {
  out << "# " << table << " schema " << kReportSchemaVersion << '\n';
}

std::string full_precision(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string format_sci3(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", value);
  return buf;
}

std::string solve_report_json(const SolveReport& report) {
  json j = report_json(report);
  j["schema_version"] = kReportSchemaVersion;
  return j.dump(2);
}

std::string run_report_json(const RunResult& r) {
  json j = {{"schema_version", kReportSchemaVersion},
            {"config", config_json(r.config)},
            {"weights", weights_json(r.weights)},
            {"interface_unknowns", r.interface_unknowns},
            {"total_unknowns", r.total_unknowns},
            {"report", report_json(r.report)},
            {"errors", errors_json(r.errors)}};
  return j.dump(2);
}

std::string table1_json(const std::vector<Table1Row>& rows, const Table1Options& options) {
  json list = json::array();
  bool all = true;
  for (const auto& row : rows) {
    all = all && row.passed();
    json j = {{"case", case_name(row.reference.label)},
              {"level", row.reference.level},
              {"h", level_mesh_size(row.reference.level)},
              {"alpha_f", row.weights.alpha_f},
              {"alpha_p", row.weights.alpha_p},
              {"pcg_iterations", row.pcg_iterations},
              {"pcg_converged", row.pcg_converged},
              {"cg_iterations", row.cg_iterations},
              {"cg_converged", row.cg_converged},
              {"reference",
               {{"alpha_f", row.reference.alpha_f},
                {"alpha_p", row.reference.alpha_p},
                {"pcg_iterations", row.reference.pcg_iterations},
                {"cg_iterations", row.reference.cg_iterations}}},
              {"weights_match", row.weights_match},
              {"pcg_match", row.pcg_match},
              {"cg_match", row.cg_match},
              {"passed", row.passed()},
              {"robin_robin", kRobinRobin}};
    if (!row.error.empty()) j["error"] = row.error;
    list.push_back(std::move(j));
  }
  json j = {{"schema_version", kReportSchemaVersion},
            {"config",
             {{"command", "table1"},
              {"tolerance", options.tol},
              {"max_iter", options.max_iter},
              {"kmax_convention", to_string(options.kmax_convention)},
              {"alpha_bj", 1.0},
              {"boundary_split", boundary_split_description()},
              {"interface_length", 0.5},
              {"initial_guess", "zero"},
              {"stopping_rule", "||b - A x|| <= tol ||b||"}}},
            {"tolerances",
             {{"alpha_digits", 3},
              {"pcg_iterations", kPcgTolerance},
              {"cg_relative", kCgRelativeTolerance}}},
            {"rows", list},
            {"passed", all}};
  return j.dump(2);
}

std::string convergence_json(const ConvergenceStudy& s) {
  json levels = json::array();
  for (const auto& l : s.levels)
    levels.push_back({{"level", l.level}, {"h", l.h}, {"errors", errors_json(l.errors)}});
  json j = {{"schema_version", kReportSchemaVersion},
            {"config",
             {{"command", "convergence"},
              {"case", case_name(s.label)},
              {"method", "monolithic"},
              {"boundary_split", boundary_split_description()}}},
            {"levels", levels},
            {"orders", errors_json(s.orders)},
            {"roundoff_floor", s.roundoff_floor},
            {"floor_fields", s.floor_fields},
            {"monotone", s.monotone},
            {"monotone_all_fields", s.monotone_all_fields}};
  return j.dump(2);
}

std::string rho_scan_json(const RunConfig& config, const WeightPair& w, const FrequencyBand& band,
                          const AnalysisParams& a) {
  json j = {{"schema_version", kReportSchemaVersion},
            {"config", config_json(config)},
            {"weights", weights_json(w)},
            {"band", {{"k_min", band.k_min}, {"k_max", band.k_max}}},
            {"rho_k_min", reduction_factor(w, band.k_min, a)},
            {"rho_k_max", reduction_factor(w, band.k_max, a)},
            {"k_star", k_star(w, a)},
            {"rho_k_star", rho_at_k_star(w)}};
  if (const auto z = rho_zeros(w, a)) j["zeros"] = {z->k1, z->k2};
  else j["zeros"] = json::array();
  return j.dump(2);
}

void write_table1_csv(std::ostream& out, const std::vector<Table1Row>& rows) {
  header(out, "table1");
  out << "case,level,h,alpha_f,alpha_p,pcg_iter,cg_iter,ref_alpha_f,ref_alpha_p,ref_pcg_iter,"
         "ref_cg_iter,weights_match,pcg_match,cg_match,passed,rr_alpha_f,rr_alpha_p,rr_gmres_iter,"
         "error\n";
  for (const auto& r : rows) {
    out << to_char(r.reference.label) << ',' << r.reference.level << ','
        << full_precision(level_mesh_size(r.reference.level)) << ',' << format_sci3(r.weights.alpha_f)
        << ',' << format_sci3(r.weights.alpha_p) << ',' << r.pcg_iterations << ','
        << r.cg_iterations << ',' << format_sci3(r.reference.alpha_f) << ','
        << format_sci3(r.reference.alpha_p) << ',' << r.reference.pcg_iterations << ','
        << r.reference.cg_iterations << ',' << (r.weights_match ? "pass" : "fail") << ','
        << (r.pcg_match ? "pass" : "fail") << ',' << (r.cg_match ? "pass" : "fail") << ','
        << (r.passed() ? "pass" : "fail") << ',' << kRobinRobin << ',' << kRobinRobin << ','
        << kRobinRobin << ',';
    // Errors are free text; keep them to one quoted field.
    std::string e = r.error;
    for (auto& ch : e)
      if (ch == '"' || ch == '\n') ch = '\'';
    if (!e.empty()) out << '"' << e << '"';
    out << '\n';
  }
}

void write_history_csv(std::ostream& out, const SolveReport& report) {
  header(out, "residual_history");
  out << "iteration,relative_residual\n";
  for (std::size_t i = 0; i < report.residual_history.size(); ++i)
    out << i << ',' << full_precision(report.residual_history[i]) << '\n';
}

void write_convergence_csv(std::ostream& out, const ConvergenceStudy& s) {
  header(out, "convergence");
  out << "level,h,velocity_l2,velocity_h1,fluid_pressure_l2,fluid_pressure_h1,porous_pressure_l2,"
         "porous_pressure_h1\n";
  auto row = [&out](const std::string& level, const std::string& h, const FieldErrors& e) {
    out << level << ',' << h << ',' << full_precision(e.velocity_l2) << ','
        << full_precision(e.velocity_h1) << ',' << full_precision(e.fluid_pressure_l2) << ','
        << full_precision(e.fluid_pressure_h1) << ',' << full_precision(e.porous_pressure_l2) << ','
        << full_precision(e.porous_pressure_h1) << '\n';
  };
  for (const auto& l : s.levels) row(std::to_string(l.level), full_precision(l.h), l.errors);
  row("order", "", s.orders);
}

void write_rho_scan_csv(std::ostream& out, const std::vector<std::pair<double, double>>& samples) {
  header(out, "rho_scan");
  out << "k,rho\n";
  for (const auto& [k, rho] : samples) out << full_precision(k) << ',' << full_precision(rho) << '\n';
}

std::vector<WeightGridPoint> weight_grid_scan(const AnalysisParams& a, const FrequencyBand& band,
                                              int n, double lo, double hi, int k_samples) {
  if (n < 2) throw std::invalid_argument("weight grid needs at least 2 points per axis");
  if (!(hi > lo)) throw std::invalid_argument("weight grid range is empty");
  std::vector<WeightGridPoint> grid;
  grid.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const WeightPair w{std::pow(10.0, lo + (hi - lo) * i / (n - 1)),
                         std::pow(10.0, lo + (hi - lo) * j / (n - 1))};
      grid.push_back({w, sampled_max_abs_rho(w, a, band, k_samples)});
    }
  return grid;
}

void write_weight_grid_csv(std::ostream& out, const std::vector<WeightGridPoint>& grid) {
  header(out, "weight_grid");
  out << "alpha_f,alpha_p,max_abs_rho\n";
  for (const auto& g : grid)
    out << format_sci3(g.weights.alpha_f) << ',' << format_sci3(g.weights.alpha_p) << ','
        << full_precision(g.max_abs_rho) << '\n';
}

void print_table1(std::ostream& out, const std::vector<Table1Row>& rows) {
  out << "case level   alpha_f   (ref)      alpha_p   (ref)      PCG (ref)  CG (ref)   result\n";
  for (const auto& r : rows) {
    out << "(" << to_char(r.reference.label) << ")   h" << r.reference.level << "     "
        << format_sci3(r.weights.alpha_f) << " " << format_sci3(r.reference.alpha_f) << "  "
        << format_sci3(r.weights.alpha_p) << " " << format_sci3(r.reference.alpha_p) << "  "
        << std::setw(3) << r.pcg_iterations << " (" << r.reference.pcg_iterations << ")    "
        << std::setw(3) << r.cg_iterations << " (" << std::setw(2) << r.reference.cg_iterations
        << ")   " << (r.passed() ? "PASS" : "FAIL");
    if (!r.passed()) {
      out << " [";
      const char* sep = "";
      if (!r.weights_match) { out << sep << "alpha"; sep = ","; }
      if (!r.pcg_match) { out << sep << "pcg"; sep = ","; }
      if (!r.cg_match) { out << sep << "cg"; sep = ","; }
      if (!r.error.empty()) out << sep << "error: " << r.error;
      out << "]";
    }
    out << '\n';
  }
  out << "Robin-Robin columns (alpha_f^RR, alpha_p^RR, GMRES): " << kRobinRobin << '\n';
}

}  // namespace sdnn
