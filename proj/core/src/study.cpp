#include "sdnn/study.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <thread>

#include "sdnn/schur.hpp"

namespace sdnn {

namespace {

template <class E>
struct NamedValue {
  const char* name;
  E value;
};

constexpr NamedValue<Method> kMethods[] = {{"pcg", Method::pcg},
                                           {"cg", Method::cg},
                                           {"richardson", Method::richardson},
                                           {"nn", Method::nn},
                                           {"monolithic", Method::monolithic}};
constexpr NamedValue<WeightSource> kSources[] = {{"optimal", WeightSource::optimal},
                                                 {"asymptotic", WeightSource::asymptotic},
                                                 {"manual", WeightSource::manual}};
constexpr NamedValue<KmaxConvention> kConventions[] = {{"dof", KmaxConvention::dof},
                                                       {"element", KmaxConvention::element}};

template <class E, std::size_t N>
E parse_named(const NamedValue<E> (&table)[N], const std::string& text, const char* what) {
  for (const auto& entry : table)
    if (text == entry.name) return entry.value;
  throw ConfigError(std::string("unknown ") + what + " '" + text + "'");
}

template <class E, std::size_t N>
std::string name_of(const NamedValue<E> (&table)[N], E value) {
  for (const auto& entry : table)
    if (entry.value == value) return entry.name;
  return "?";
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

/// Interface iteration driven by nn_step directly, so that the report reflects
/// the six-step algorithm rather than its operator form.
KrylovResult run_nn(const InterfaceProblem& problem, const WeightPair& w, double tol, int max_iter) {
  const auto start = std::chrono::steady_clock::now();
  KrylovResult out;
  out.report.method = "nn";
  out.report.tolerance = tol;
  out.report.weights = w;
  out.x = InterfaceVector::Zero(problem.size());
  const double b_norm = problem.reduced_rhs().norm();
  if (b_norm == 0.0) {
    out.report.residual_history = {0.0};
    out.report.converged = true;
    return out;
  }
  double rel = problem.schur_residual(out.x).norm() / b_norm;
  out.report.residual_history.push_back(rel);
  while (rel > tol && out.report.iterations < max_iter) {
    out.x = problem.nn_step(out.x, w);
    ++out.report.iterations;
    rel = problem.schur_residual(out.x).norm() / b_norm;
    if (!std::isfinite(rel)) throw KrylovError("nn: residual is not finite");
    out.report.residual_history.push_back(rel);
  }
  out.report.converged = rel <= tol;
  out.report.wall_time_s = seconds_since(start);
  return out;
}

}  // namespace

Method parse_method(const std::string& text) { return parse_named(kMethods, text, "method"); }
std::string to_string(Method method) { return name_of(kMethods, method); }
WeightSource parse_weight_source(const std::string& text) {
  return parse_named(kSources, text, "weight source");
}
std::string to_string(WeightSource source) { return name_of(kSources, source); }
KmaxConvention parse_kmax_convention(const std::string& text) {
  return parse_named(kConventions, text, "k_max convention");
}
std::string to_string(KmaxConvention convention) { return name_of(kConventions, convention); }

void RunConfig::validate() const {
  if (level < 1 || level > 4) throw ConfigError("level must be in 1..4");
  if (!(tol > 0.0 && tol < 1.0)) throw ConfigError("tolerance must lie in (0, 1)");
  if (max_iter < 1) throw ConfigError("max_iter must be positive");
  if (!(alpha_bj > 0.0)) throw ConfigError("alpha_BJ must be positive");
  if (weight_source == WeightSource::manual) {
    if (!manual_weights) throw ConfigError("manual weight source needs alpha_f and alpha_p");
    if (!(manual_weights->alpha_f > 0.0 && manual_weights->alpha_p > 0.0))
      throw ConfigError("manual weights must be positive");
  }
}

WeightPair resolve_weights(const RunConfig& config) {
  const CaseConfig c = make_case(config.label, config.level, config.alpha_bj);
  const AnalysisParams a{c.params.mu_f, c.params.eta_p()};
  const double length = c.fluid_domain().width();
  switch (config.weight_source) {
    case WeightSource::manual:
      return *config.manual_weights;
    case WeightSource::asymptotic: {
      const auto asym = asymptotic_weights(length, c.h(), a, config.kmax_convention);
      return {asym.alpha_f, asym.alpha_p};
    }
    case WeightSource::optimal:
      break;
  }
  return optimal_weights(a, frequency_band(length, c.h(), config.kmax_convention));
}

RunResult run_case(const RunConfig& config) {
  config.validate();
  RunResult out;
  out.config = config;
  out.case_config = make_case(config.label, config.level, config.alpha_bj);
  out.weights = resolve_weights(config);

  const ExactSolution exact(out.case_config.params);
  const InterfaceProblem problem(assemble_case(out.case_config, make_problem_data(exact)));
  out.interface_unknowns = problem.size();
  out.total_unknowns = problem.system().total_unknowns();

  KrylovOptions options;
  options.tol = config.tol;
  options.max_iter = config.max_iter;
  const InterfaceVector& b = problem.reduced_rhs();

  KrylovResult solved;
  switch (config.method) {
    case Method::monolithic: {
      const auto start = std::chrono::steady_clock::now();
      out.solution = problem.monolithic_solve();
      out.report.method = "monolithic";
      out.report.tolerance = config.tol;
      out.report.converged = true;
      out.report.initial_guess = "none";
      out.report.residual_history = {0.0};
      out.report.wall_time_s = seconds_since(start);
      out.errors = error_norms(problem.system().fluid_mesh, problem.system().porous_mesh,
                               out.solution, exact);
      return out;
    }
    case Method::cg:
      solved = cg(problem.sigma_operator(), b, options);
      break;
    case Method::pcg:
      solved = pcg(problem.sigma_operator(), problem.precond_operator(out.weights), b, options);
      solved.report.weights = out.weights;
      break;
    case Method::richardson:
      solved = richardson(problem.sigma_operator(), problem.precond_operator(out.weights), b, options);
      solved.report.weights = out.weights;
      break;
    case Method::nn:
      solved = run_nn(problem, out.weights, config.tol, config.max_iter);
      break;
  }
  out.report = std::move(solved.report);
  out.solution = problem.recover_full_solution(solved.x);
  out.errors = error_norms(problem.system().fluid_mesh, problem.system().porous_mesh, out.solution,
                           exact);
  return out;
}

const std::array<ReferenceRow, 16>& reference_table() {
  using L = CaseLabel;
  static const std::array<ReferenceRow, 16> rows = {{
      {L::a, 1, 9.97e-12, 1.00e+0, 2, 12},
      {L::a, 2, 3.99e-11, 1.00e+0, 2, 17},
      {L::a, 3, 1.60e-10, 1.00e+0, 3, 22},
      {L::a, 4, 6.38e-10, 9.99e-1, 3, 31},
      {L::b, 1, 9.96e-8, 9.98e-1, 3, 12},
      {L::b, 2, 3.96e-7, 9.93e-1, 4, 17},
      {L::b, 3, 1.55e-6, 9.74e-1, 4, 24},
      {L::b, 4, 5.78e-6, 9.06e-1, 5, 30},
      {L::c, 1, 9.97e-10, 1.00e+0, 3, 12},
      {L::c, 2, 3.99e-9, 9.99e-1, 3, 17},
      {L::c, 3, 1.59e-8, 9.97e-1, 3, 24},
      {L::c, 4, 6.32e-8, 9.90e-1, 4, 30},
      {L::d, 1, 2.49e-10, 1.00e+0, 2, 12},
      {L::d, 2, 9.97e-10, 1.00e+0, 3, 17},
      {L::d, 3, 3.98e-9, 9.99e-1, 3, 22},
      {L::d, 4, 1.59e-8, 9.95e-1, 4, 29},
  }};
  return rows;
}

bool same_three_digits(double a, double b) {
  char sa[32], sb[32];
  std::snprintf(sa, sizeof sa, "%.2e", a);
  std::snprintf(sb, sizeof sb, "%.2e", b);
  return std::string(sa) == sb;
}

std::vector<Table1Row> table1(const Table1Options& options) {
  std::vector<Table1Row> rows;
  for (const auto& ref : reference_table()) {
    const bool case_wanted =
        std::find(options.cases.begin(), options.cases.end(), ref.label) != options.cases.end();
    const bool level_wanted =
        std::find(options.levels.begin(), options.levels.end(), ref.level) != options.levels.end();
    if (!case_wanted || !level_wanted) continue;
    Table1Row row;
    row.reference = ref;
    rows.push_back(std::move(row));
  }

  auto fill = [&options](Table1Row& row) {
    try {
      RunConfig config;
      config.command = "table1";
      config.label = row.reference.label;
      config.level = row.reference.level;
      config.tol = options.tol;
      config.max_iter = options.max_iter;
      config.kmax_convention = options.kmax_convention;
      config.validate();
      row.weights = resolve_weights(config);
      row.weights_match = same_three_digits(row.weights.alpha_f, row.reference.alpha_f) &&
                          same_three_digits(row.weights.alpha_p, row.reference.alpha_p);

      const CaseConfig c = make_case(config.label, config.level);
      const ExactSolution exact(c.params);
      const InterfaceProblem problem(assemble_case(c, make_problem_data(exact)));
      KrylovOptions ko;
      ko.tol = options.tol;
      ko.max_iter = options.max_iter;
      const auto p = pcg(problem.sigma_operator(), problem.precond_operator(row.weights),
                         problem.reduced_rhs(), ko);
      row.pcg_iterations = p.report.iterations;
      row.pcg_converged = p.report.converged;
      const auto u = cg(problem.sigma_operator(), problem.reduced_rhs(), ko);
      row.cg_iterations = u.report.iterations;
      row.cg_converged = u.report.converged;

      row.pcg_match = row.pcg_converged &&
                      std::abs(row.pcg_iterations - row.reference.pcg_iterations) <= kPcgTolerance;
      row.cg_match = row.cg_converged &&
                     std::abs(row.cg_iterations - row.reference.cg_iterations) <=
                         kCgRelativeTolerance * row.reference.cg_iterations;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  };

  unsigned threads = options.threads > 0 ? static_cast<unsigned>(options.threads)
                                         : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(rows.size()));
  // Largest rows first so the slow level-4 solves start early.
  std::vector<std::size_t> order(rows.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&rows](std::size_t x, std::size_t y) {
    return rows[x].reference.level > rows[y].reference.level;
  });
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < order.size(); k = next++) fill(rows[order[k]]);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return rows;
}

double fitted_order(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fitted_order needs matching samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) return 0.0;
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ConvergenceStudy convergence_study(CaseLabel label, const std::vector<int>& levels, double alpha_bj) {
  if (levels.size() < 3) throw ConfigError("convergence study needs at least 3 levels");
  ConvergenceStudy study;
  study.label = label;
  for (int level : levels) {
    RunConfig config;
    config.command = "convergence";
    config.label = label;
    config.level = level;
    config.method = Method::monolithic;
    config.alpha_bj = alpha_bj;
    const RunResult r = run_case(config);
    study.levels.push_back({level, r.case_config.h(), r.errors});
  }
  std::sort(study.levels.begin(), study.levels.end(),
            [](const ConvergenceLevel& a, const ConvergenceLevel& b) { return a.h > b.h; });

  std::vector<double> h;
  for (const auto& l : study.levels) h.push_back(l.h);
  auto order_of = [&](double FieldErrors::*field) {
    std::vector<double> e;
    for (const auto& l : study.levels) e.push_back(l.errors.*field);
    return fitted_order(h, e);
  };
  const auto cc = make_case(label, study.levels.front().level, alpha_bj);
  const auto n = cc.elements_per_side();
  const StructuredMesh fluid(cc.fluid_domain(), n, n), porous(cc.porous_domain(), n, n);
  const ExactSolution exact(cc.params);
  CoupledSolution zero = interpolate_exact(fluid, porous, exact);
  zero.fluid.velocity.setZero();
  zero.fluid.pressure.setZero();
  zero.porous.pressure.setZero();
  const FieldErrors norms = error_norms(fluid, porous, zero, exact);

  auto monotone_in = [&](double FieldErrors::*field) {
    for (std::size_t i = 1; i < study.levels.size(); ++i)
      if (study.levels[i].errors.*field > study.levels[i - 1].errors.*field) return false;
    return true;
  };
  const std::array<std::pair<double FieldErrors::*, const char*>, 6> fields = {{
      {&FieldErrors::velocity_l2, "velocity_l2"},
      {&FieldErrors::velocity_h1, "velocity_h1"},
      {&FieldErrors::fluid_pressure_l2, "fluid_pressure_l2"},
      {&FieldErrors::fluid_pressure_h1, "fluid_pressure_h1"},
      {&FieldErrors::porous_pressure_l2, "porous_pressure_l2"},
      {&FieldErrors::porous_pressure_h1, "porous_pressure_h1"}}};
  double scale = 0.0;
  for (const auto& [field, name] : fields) scale = std::max(scale, norms.*field);
  study.roundoff_floor = kRoundoffFloorFraction * scale;
  study.monotone = study.monotone_all_fields = true;
  for (const auto& [field, name] : fields) {
    study.orders.*field = order_of(field);
    const bool mono = monotone_in(field);
    const bool at_floor = std::all_of(study.levels.begin(), study.levels.end(), [&](const auto& l) {
      return l.errors.*field <= study.roundoff_floor;
    });
    if (at_floor) study.floor_fields.emplace_back(name);
    study.monotone_all_fields = study.monotone_all_fields && mono;
    if (!at_floor) study.monotone = study.monotone && mono;
  }
  return study;
}

}  // namespace sdnn
