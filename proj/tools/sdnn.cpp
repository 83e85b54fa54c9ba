// sdnn: command-line front end for the coupled Stokes-Darcy solver.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>

#include "sdnn/report.hpp"

namespace fs = std::filesystem;
using namespace sdnn;

namespace {

const std::map<std::string, CaseLabel> kCases = {
    {"a", CaseLabel::a}, {"b", CaseLabel::b}, {"c", CaseLabel::c}, {"d", CaseLabel::d}};
const std::map<std::string, Method> kMethods = {{"pcg", Method::pcg},
                                                {"cg", Method::cg},
                                                {"richardson", Method::richardson},
                                                {"nn", Method::nn},
                                                {"monolithic", Method::monolithic}};
const std::map<std::string, KmaxConvention> kConventions = {{"dof", KmaxConvention::dof},
                                                            {"element", KmaxConvention::element}};
const std::map<std::string, WeightSource> kSources = {{"optimal", WeightSource::optimal},
                                                      {"asymptotic", WeightSource::asymptotic},
                                                      {"manual", WeightSource::manual}};

struct Common {
  std::string out_dir;
  double tol = 1e-9;
  KmaxConvention kmax = KmaxConvention::dof;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--out", c.out_dir, "Directory for CSV and JSON outputs");
  cmd->add_option("--tol", c.tol, "Relative residual tolerance")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd->add_option("--kmax-convention", c.kmax, "Largest frequency from dof spacing or element size")
      ->transform(CLI::CheckedTransformer(kConventions, CLI::ignore_case))
      ->capture_default_str();
}

/// Opens <out>/<name> for writing, or returns nothing when no directory was given.
std::optional<std::ofstream> open_output(const std::string& dir, const std::string& name) {
  if (dir.empty()) return std::nullopt;
  fs::create_directories(dir);
  std::ofstream f(fs::path(dir) / name);
  if (!f) throw std::runtime_error("cannot write " + (fs::path(dir) / name).string());
  return f;
}

void write_text(const std::string& dir, const std::string& name, const std::string& text) {
  if (auto f = open_output(dir, name)) *f << text << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coupled Stokes-Darcy solver with the optimized Neumann-Neumann preconditioner"};
  app.require_subcommand(1);

  // table1
  Common t1;
  std::vector<CaseLabel> t1_cases = {CaseLabel::a, CaseLabel::b, CaseLabel::c, CaseLabel::d};
  std::vector<int> t1_levels = {1, 2, 3, 4};
  int threads = 0;
  auto* table = app.add_subcommand("table1", "Recompute the benchmark table and check it; exit code 1 on any failed row");
  add_common(table, t1);
  table->add_option("--case", t1_cases, "Restrict to these cases")
      ->transform(CLI::CheckedTransformer(kCases, CLI::ignore_case));
  table->add_option("--level", t1_levels, "Restrict to these levels")->check(CLI::Range(1, 4));
  table->add_option("--threads", threads, "Worker threads (0 = hardware concurrency)");

  // run
  Common rc;
  RunConfig run_cfg;
  std::optional<double> alpha_f, alpha_p;
  std::optional<WeightSource> source;
  bool write_history = true;
  auto* run = app.add_subcommand("run", "Solve one case with one method");
  add_common(run, rc);
  run->add_option("--case", run_cfg.label, "Parameter set")
      ->transform(CLI::CheckedTransformer(kCases, CLI::ignore_case))
      ->required();
  run->add_option("--level", run_cfg.level, "Mesh level, h = 0.1 * 2^(1-level)")
      ->check(CLI::Range(1, 4))
      ->required();
  run->add_option("--method", run_cfg.method, "Solver")
      ->transform(CLI::CheckedTransformer(kMethods, CLI::ignore_case))
      ->default_str("pcg");
  run->add_option("--weights", source, "Weight source (manual when --alpha-f/--alpha-p are given)")
      ->transform(CLI::CheckedTransformer(kSources, CLI::ignore_case));
  auto* af = run->add_option("--alpha-f", alpha_f, "Manual Stokes weight")->check(CLI::PositiveNumber);
  auto* ap = run->add_option("--alpha-p", alpha_p, "Manual Darcy weight")->check(CLI::PositiveNumber);
  af->needs(ap);
  ap->needs(af);
  run->add_option("--max-iter", run_cfg.max_iter, "Iteration cap")->capture_default_str();
  run->add_option("--alpha-bj", run_cfg.alpha_bj, "Beavers-Joseph constant")->capture_default_str();
  run->add_flag("!--no-history", write_history, "Skip the residual history CSV");

  // rho-scan
  Common rs;
  RunConfig scan_cfg;
  scan_cfg.command = "rho-scan";
  std::optional<double> scan_af, scan_ap;
  int samples = 1000;
  int grid = 0;
  std::pair<double, double> grid_range{-14.0, 0.5};
  auto* scan = app.add_subcommand("rho-scan", "Tabulate the reduction factor over the frequency band");
  add_common(scan, rs);
  scan->add_option("--case", scan_cfg.label, "Parameter set")
      ->transform(CLI::CheckedTransformer(kCases, CLI::ignore_case))
      ->required();
  scan->add_option("--level", scan_cfg.level, "Mesh level")->check(CLI::Range(1, 4))->required();
  auto* saf = scan->add_option("--alpha-f", scan_af, "Weight to scan instead of the optimum")
                  ->check(CLI::PositiveNumber);
  auto* sap = scan->add_option("--alpha-p", scan_ap, "Weight to scan instead of the optimum")
                  ->check(CLI::PositiveNumber);
  saf->needs(sap);
  sap->needs(saf);
  scan->add_option("--samples", samples, "Log-spaced frequency samples")
      ->check(CLI::Range(2, 10000000))
      ->capture_default_str();
  scan->add_option("--grid", grid, "Points per axis of an (alpha_f, alpha_p) max|rho| map (0 = off)")
      ->check(CLI::Range(0, 2000));
  scan->add_option("--grid-range", grid_range, "log10 range of the weight map")
      ->capture_default_str();

  // convergence
  Common cv;
  CaseLabel conv_case = CaseLabel::b;
  std::vector<int> conv_levels = {1, 2, 3, 4};
  double conv_bj = 1.0;
  auto* conv = app.add_subcommand("convergence", "Manufactured-solution error study (monolithic solves)");
  add_common(conv, cv);
  conv->add_option("--case", conv_case, "Parameter set")
      ->transform(CLI::CheckedTransformer(kCases, CLI::ignore_case))
      ->capture_default_str();
  conv->add_option("--level", conv_levels, "Levels (at least 3)")->check(CLI::Range(1, 4));
  conv->add_option("--alpha-bj", conv_bj, "Beavers-Joseph constant");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Usage errors share the configuration-error exit code.
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*table) {
      Table1Options opt;
      opt.tol = t1.tol;
      opt.kmax_convention = t1.kmax;
      opt.cases = t1_cases;
      opt.levels = t1_levels;
      opt.threads = threads;
      const auto rows = sdnn::table1(opt);
      print_table1(std::cout, rows);
      if (auto f = open_output(t1.out_dir, "table1.csv")) write_table1_csv(*f, rows);
      write_text(t1.out_dir, "table1.json", table1_json(rows, opt));
      bool all = true;
      for (const auto& r : rows) all = all && r.passed();
      std::cout << (all ? "table1: all rows pass" : "table1: some rows fail") << '\n';
      return all ? 0 : 1;
    }

    if (*run) {
      run_cfg.tol = rc.tol;
      run_cfg.kmax_convention = rc.kmax;
      run_cfg.out_dir = rc.out_dir;
      if (alpha_f) {
        run_cfg.weight_source = WeightSource::manual;
        run_cfg.manual_weights = WeightPair{*alpha_f, *alpha_p};
      } else if (source) {
        if (*source == WeightSource::manual)
          throw ConfigError("--weights manual needs --alpha-f and --alpha-p");
        run_cfg.weight_source = *source;
      }
      const RunResult r = run_case(run_cfg);
      std::cout << "case " << to_char(r.config.label) << " level " << r.config.level << " method "
                << to_string(r.config.method) << ": " << r.report.iterations << " iterations, "
                << (r.report.converged ? "converged" : "NOT converged") << ", residual "
                << r.report.final_residual() << '\n'
                << "weights alpha_f=" << format_sci3(r.weights.alpha_f)
                << " alpha_p=" << format_sci3(r.weights.alpha_p) << '\n'
                << "porous pressure L2 error " << r.errors.porous_pressure_l2 << ", velocity L2 error "
                << r.errors.velocity_l2 << '\n';
      write_text(rc.out_dir, "run.json", run_report_json(r));
      if (write_history)
        if (auto f = open_output(rc.out_dir, "history.csv")) write_history_csv(*f, r.report);
      return r.report.converged ? 0 : 1;
    }

    if (*scan) {
      scan_cfg.tol = rs.tol;
      scan_cfg.kmax_convention = rs.kmax;
      if (scan_af) {
        scan_cfg.weight_source = WeightSource::manual;
        scan_cfg.manual_weights = WeightPair{*scan_af, *scan_ap};
      }
      scan_cfg.validate();
      const CaseConfig c = make_case(scan_cfg.label, scan_cfg.level);
      const AnalysisParams a{c.params.mu_f, c.params.eta_p()};
      const FrequencyBand band = frequency_band(0.5, c.h(), rs.kmax);
      const WeightPair w = resolve_weights(scan_cfg);
      const auto curve = rho_scan(w, a, band, samples);
      double worst = 0.0;
      for (const auto& s : curve) worst = std::max(worst, std::abs(s.second));
      std::cout << "band [" << band.k_min << ", " << band.k_max << "], alpha_f=" << format_sci3(w.alpha_f)
                << " alpha_p=" << format_sci3(w.alpha_p) << ", max|rho| = " << worst << '\n';
      if (auto f = open_output(rs.out_dir, "rho_scan.csv")) write_rho_scan_csv(*f, curve);
      write_text(rs.out_dir, "rho_scan.json", rho_scan_json(scan_cfg, w, band, a));
      if (grid > 0) {
        const auto map = weight_grid_scan(a, band, grid, grid_range.first, grid_range.second, std::min(samples, 2000));
        if (auto f = open_output(rs.out_dir, "weight_grid.csv")) write_weight_grid_csv(*f, map);
      }
      return 0;
    }

    if (*conv) {
      const auto study = convergence_study(conv_case, conv_levels, conv_bj);
      write_convergence_csv(std::cout, study);
      if (auto f = open_output(cv.out_dir, "convergence.csv")) write_convergence_csv(*f, study);
      write_text(cv.out_dir, "convergence.json", convergence_json(study));
      std::cout << "roundoff floor " << study.roundoff_floor << ", fields at the floor:";
      for (const auto& f : study.floor_fields) std::cout << ' ' << f;
      std::cout << "\nmonotone (resolved fields): " << (study.monotone ? "yes" : "no")
                << ", monotone (all fields): " << (study.monotone_all_fields ? "yes" : "no") << '\n';
      return study.monotone ? 0 : 1;
    }
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
