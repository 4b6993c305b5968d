#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bmom/densities.hpp"

namespace bmom {

enum class Command {
  mean,
  regress,
  ar,
  predict,
  errors,
  sample,
  compare,
  density,
};

// Everything a run needs, assembled by the command-line layer (or built
// directly by an embedding program).
struct AnalysisRequest {
  Command command = Command::mean;
  std::string data_path;
  std::string y_name;
  std::vector<std::string> x_names;
  bool intercept = false;  // the ar command defaults this to true
  int lags = 0;            // >= 1 selects the autoregressive design
  std::vector<double> x_f;  // regressor point for predictions; empty = none
  std::vector<double> ell;  // combination weights; empty = none
  double level = 0.95;
  std::optional<std::uint64_t> seed;
  std::int64_t draws = 10000;
  std::string prior_path;  // conceptual sample file; empty = none
  std::string prior_y;     // response column there; empty = same as y_name
  int prior_rows = 0;      // declared conceptual size; 0 = physical rows
  std::string target;      // density command target; empty = model default
  std::string coef;        // compare target: name or 1-based position
  int grid_points = 401;
};

struct DensityEntry {
  std::string target;
  std::string family;  // "laplace" (scale b), "normal" (scale sd),
                       // "exponential" (location 0, scale = mean)
  double location;
  double scale;
};

struct IntervalEntry {
  std::string target;
  IntervalEstimate interval;
};

struct EstimateEntry {
  std::string name;
  double value;
};

struct ReportData {
  std::string path;
  std::string response;
  std::vector<std::string> columns;  // design columns after assembly
  std::int64_t rows = 0;             // observations entering the fit
  std::uint64_t content_hash = 0;
};

struct ReportPrior {
  std::string path;
  std::int64_t rows = 0;
  int declared_rows = 0;
  std::uint64_t content_hash = 0;
};

struct ReportMoments {
  std::vector<EstimateEntry> estimates;
  double s2 = 0.0;
  int dof = 0;
};

struct ReportPrediction {
  std::vector<double> x_f;  // empty for the mean model
  double y_hat;
  double inflation;
  double s_e2;
  DensityEntry marginal;
  IntervalEstimate interval;
};

struct ReportCombination {
  std::vector<double> ell;
  double value;
  double s_eta2;
  DensityEntry marginal;
  IntervalEstimate interval;
};

struct ReportErrorRow {
  int row;  // 1-based observation
  double residual;
  double leverage;
  double conditional_variance;  // leverage * s2
  double marginal_scale;        // sqrt(leverage * s2 / 2)
};

struct ReportComponent {
  std::string name;
  double mean;
  double variance;
  double excess;
  double lower;
  double upper;
};

struct ReportSampler {
  std::uint64_t seed = 0;
  std::int64_t draws = 0;
  std::vector<ReportComponent> components;
};

struct ReportComparisonRoute {
  std::string family;
  double lower;
  double upper;
  double width;
  std::optional<double> variance;
  std::optional<double> sigma2_mean;
  std::optional<double> excess;
};

struct ReportComparison {
  std::string target;
  double center;
  double nu;
  ReportComparisonRoute laplace;
  ReportComparisonRoute normal;
  ReportComparisonRoute student;
  double width_ratio_laplace_normal;
  double width_ratio_laplace_student;
};

struct AnalysisReport {
  std::string schema;
  std::string version;
  std::string command;
  std::string model;  // "mean", "regress", or "ar"
  double level = 0.95;
  ReportData data;
  std::optional<ReportPrior> prior;
  ReportMoments moments;
  std::vector<DensityEntry> densities;
  std::vector<IntervalEntry> intervals;
  std::optional<ReportPrediction> prediction;
  std::optional<ReportCombination> combination;
  std::vector<ReportErrorRow> error_rows;
  std::optional<ReportComparison> comparison;
  std::optional<ReportSampler> sampler;
};

// Runs every command except `density`. Throws the module error types; a
// report is returned only when every requested quantity exists and is
// finite.
AnalysisReport run_analysis(const AnalysisRequest& request);

// Deterministic renderings: the same report produces identical bytes.
std::string render_json(const AnalysisReport& report);
std::string render_text(const AnalysisReport& report);

// Tabulated pdf for the `density` command.
struct DensityGrid {
  std::string target;
  std::string family;
  std::vector<double> x;
  std::vector<double> pdf;
};

DensityGrid density_grid(const AnalysisRequest& request);
std::string render_grid_tsv(const DensityGrid& grid);

// CSV export of the posterior draws the `sample` command summarizes
// (identical draws: same seed, same stream).
std::string draws_csv(const AnalysisRequest& request);

// Shortest round-trip decimal rendering used by the text, TSV, and CSV
// writers.
std::string format_double(double value);

}  // namespace bmom
