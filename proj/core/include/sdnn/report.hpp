#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "sdnn/study.hpp"

namespace sdnn {

/// Bumped whenever a CSV column or JSON key changes meaning.
inline constexpr int kReportSchemaVersion = 1;

/// Scientific notation with 3 significant digits, e.g. 9.97e-12.
std::string format_sci3(double value);

// JSON documents (pretty printed). Each embeds schema version and the
// resolved configuration.
std::string solve_report_json(const SolveReport& report);
std::string run_report_json(const RunResult& result);
std::string table1_json(const std::vector<Table1Row>& rows, const Table1Options& options);
std::string convergence_json(const ConvergenceStudy& study);
std::string rho_scan_json(const RunConfig& config, const WeightPair& weights, const FrequencyBand& band,
                          const AnalysisParams& params);

// CSV tables. The first line is a "# <table> schema <version>" comment.
void write_table1_csv(std::ostream& out, const std::vector<Table1Row>& rows);
void write_history_csv(std::ostream& out, const SolveReport& report);
void write_convergence_csv(std::ostream& out, const ConvergenceStudy& study);
void write_rho_scan_csv(std::ostream& out, const std::vector<std::pair<double, double>>& samples);

struct WeightGridPoint {
  WeightPair weights;
  double max_abs_rho = 0.0;
};

/// max|rho| on a log grid of (alpha_f, alpha_p) in [10^lo, 10^hi]^2.
std::vector<WeightGridPoint> weight_grid_scan(const AnalysisParams& params, const FrequencyBand& band,
                                              int points_per_axis, double log10_lo, double log10_hi,
                                              int k_samples);
void write_weight_grid_csv(std::ostream& out, const std::vector<WeightGridPoint>& grid);

/// Human-readable benchmark table with reference values, pass flags and the
/// out-of-scope marker for the Robin-Robin columns.
void print_table1(std::ostream& out, const std::vector<Table1Row>& rows);

}  // namespace sdnn
