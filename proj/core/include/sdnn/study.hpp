#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "sdnn/krylov.hpp"
#include "sdnn/manufactured.hpp"
#include "sdnn/params.hpp"
#include "sdnn/weights.hpp"

namespace sdnn {

enum class Method { pcg, cg, richardson, nn, monolithic };
enum class WeightSource { optimal, asymptotic, manual };

Method parse_method(const std::string& text);
std::string to_string(Method method);
WeightSource parse_weight_source(const std::string& text);
std::string to_string(WeightSource source);
KmaxConvention parse_kmax_convention(const std::string& text);
std::string to_string(KmaxConvention convention);

/// Fully resolved description of one run. Everything a report needs to be
/// reproduced lives here.
struct RunConfig {
  std::string command = "run";
  CaseLabel label = CaseLabel::a;
  int level = 1;
  Method method = Method::pcg;
  WeightSource weight_source = WeightSource::optimal;
  std::optional<WeightPair> manual_weights;
  double tol = 1e-9;
  int max_iter = 1000;
  KmaxConvention kmax_convention = KmaxConvention::dof;
  double alpha_bj = 1.0;
  std::string out_dir;

  /// Throws ConfigError for out-of-range values.
  void validate() const;
};

/// Weights implied by the config for its case and level.
WeightPair resolve_weights(const RunConfig& config);

struct RunResult {
  RunConfig config;
  CaseConfig case_config;
  WeightPair weights;
  SolveReport report;
  FieldErrors errors;
  CoupledSolution solution;
  Eigen::Index interface_unknowns = 0;
  Eigen::Index total_unknowns = 0;
};

/// Assembles the manufactured case and solves it with the chosen method.
/// Iterative methods recover the full solution from the interface iterate.
RunResult run_case(const RunConfig& config);

/// Printed benchmark values for one (case, level) row.
struct ReferenceRow {
  CaseLabel label;
  int level;
  double alpha_f;
  double alpha_p;
  int pcg_iterations;
  int cg_iterations;
};

const std::array<ReferenceRow, 16>& reference_table();

/// True when both values print identically with 3 significant digits.
bool same_three_digits(double a, double b);

struct Table1Options {
  double tol = 1e-9;
  int max_iter = 1000;
  KmaxConvention kmax_convention = KmaxConvention::dof;
  std::vector<CaseLabel> cases = {CaseLabel::a, CaseLabel::b, CaseLabel::c, CaseLabel::d};
  std::vector<int> levels = {1, 2, 3, 4};
  int threads = 0;  // 0 picks the hardware concurrency
};

inline constexpr int kPcgTolerance = 2;         // iterations
inline constexpr double kCgRelativeTolerance = 0.2;

struct Table1Row {
  ReferenceRow reference;
  WeightPair weights;
  int pcg_iterations = -1;
  bool pcg_converged = false;
  int cg_iterations = -1;
  bool cg_converged = false;
  bool weights_match = false;
  bool pcg_match = false;
  bool cg_match = false;
  std::string error;  // non-empty when a solve threw

  bool passed() const { return error.empty() && weights_match && pcg_match && cg_match; }
};

/// Recomputes every requested row. A failing solve marks its row, it never
/// aborts the table. Rows come back in (case, level) order.
std::vector<Table1Row> table1(const Table1Options& options = {});

struct ConvergenceLevel {
  int level = 0;
  double h = 0.0;
  FieldErrors errors;
};

struct ConvergenceStudy {
  CaseLabel label = CaseLabel::a;
  std::vector<ConvergenceLevel> levels;
  /// Least-squares slopes of log(error) against log(h); zero-error fields give 0.
  FieldErrors orders;
  /// Errors below this bound are solver roundoff rather than discretization
  /// error: a fixed fraction of the largest exact-solution norm.
  double roundoff_floor = 0.0;
  /// Fields whose error stays below the floor on every level.
  std::vector<std::string> floor_fields;
  bool monotone = false;             // no resolved error grows under refinement
  bool monotone_all_fields = false;  // same, including fields at the floor
};

/// Relative size of the roundoff floor in ConvergenceStudy.
inline constexpr double kRoundoffFloorFraction = 1e-12;

/// Monolithic solves on the given levels (at least 3).
ConvergenceStudy convergence_study(CaseLabel label, const std::vector<int>& levels,
                                   double alpha_bj = 1.0);

/// Least-squares slope of log(y) over log(x).
double fitted_order(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace sdnn
