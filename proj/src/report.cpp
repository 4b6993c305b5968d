#include "bmom/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "bmom/baseline.hpp"
#include "bmom/conceptual_prior.hpp"
#include "bmom/csv.hpp"
#include "bmom/errors.hpp"
#include "bmom/mean_model.hpp"
#include "bmom/regression.hpp"
#include "bmom/sampler.hpp"
#include "bmom/version.hpp"

namespace bmom {

namespace {

using ordered_json = nlohmann::ordered_json;

const char* command_name(Command c) {
  switch (c) {
    case Command::mean: return "mean";
    case Command::regress: return "regress";
    case Command::ar: return "ar";
    case Command::predict: return "predict";
    case Command::errors: return "errors";
    case Command::sample: return "sample";
    case Command::compare: return "compare";
    case Command::density: return "density";
  }
  throw domain_error("unknown command");
}

std::string hash_string(std::uint64_t hash) {
  static const char* hex = "0123456789abcdef";
  std::string out = "fnv1a64:";
  for (int shift = 60; shift >= 0; shift -= 4)
    out.push_back(hex[(hash >> shift) & 0xF]);
  return out;
}

enum class ModelKind { mean, regress, ar };

const char* model_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::mean: return "mean";
    case ModelKind::regress: return "regress";
    case ModelKind::ar: return "ar";
  }
  throw domain_error("unknown model kind");
}

// The assembled model a command operates on: either a mean posterior or a
// (possibly prior-augmented) regression fit.
struct ModelContext {
  ModelKind kind = ModelKind::mean;
  LoadedData data;
  std::int64_t data_rows = 0;  // observations entering the fit
  std::optional<MeanPosterior> mean;
  std::optional<LeastSquaresFit> fit;
  std::optional<ReportPrior> prior;
  // rows 0..prior_physical_rows-1 of a stacked fit belong to the prior
  Eigen::Index prior_physical_rows = 0;
};

void check_level(double level) {
  if (!(level > 0.0 && level < 1.0))
    throw domain_error("interval level must lie strictly in (0,1), got " +
                       std::to_string(level));
}

ModelContext build_context(const AnalysisRequest& request) {
  check_level(request.level);
  if (request.data_path.empty()) throw domain_error("no input file given");
  if (request.y_name.empty()) throw domain_error("no response column given");

  ModelContext ctx;
  const bool wants_ar = request.command == Command::ar || request.lags >= 1;
  const bool wants_regress =
      !wants_ar && request.command != Command::mean &&
      (!request.x_names.empty() || request.intercept);

  if (request.command == Command::mean &&
      (!request.x_names.empty() || request.intercept || request.lags != 0))
    throw domain_error("mean analysis takes no regressors");
  if (wants_ar && !request.x_names.empty())
    throw domain_error(
        "autoregression builds its own lag regressors; --x does not apply");
  if (request.command == Command::regress && !wants_regress)
    throw domain_error(
        "regression needs at least one regressor column or an intercept");

  ctx.data = load_csv(request.data_path, request.y_name,
                      wants_regress ? request.x_names
                                    : std::vector<std::string>{});

  if (!wants_ar && !wants_regress) {
    ctx.kind = ModelKind::mean;
    if (!request.prior_path.empty())
      throw domain_error("conceptual priors apply to regression designs only");
    ctx.mean = fit_mean(ctx.data.y.values);
    ctx.data_rows = std::int64_t(ctx.data.y.values.size());
    return ctx;
  }

  RegressionProblem problem;
  if (wants_ar) {
    ctx.kind = ModelKind::ar;
    problem = build_ar_design(ctx.data.y.values, request.lags,
                              request.intercept);
    if (!request.prior_path.empty())
      throw domain_error(
          "conceptual priors are not supported for autoregressions");
  } else {
    ctx.kind = ModelKind::regress;
    std::vector<std::vector<double>> columns;
    columns.reserve(ctx.data.x.size());
    for (const auto& col : ctx.data.x) columns.push_back(col.values);
    problem =
        build_design(ctx.data.y.values, columns, request.x_names,
                     request.intercept);
  }
  ctx.data_rows = problem.n();

  if (request.prior_path.empty()) {
    ctx.fit = fit_regression(problem);
    return ctx;
  }

  const std::string prior_y =
      request.prior_y.empty() ? request.y_name : request.prior_y;
  const LoadedData prior_data =
      load_csv(request.prior_path, prior_y, request.x_names);
  const Eigen::Index rows = Eigen::Index(prior_data.y.values.size());
  const Eigen::Index k = problem.k();
  Eigen::MatrixXd X_c(rows, k);
  Eigen::Index col = 0;
  if (request.intercept) X_c.col(col++).setOnes();
  for (const auto& column : prior_data.x)
    X_c.col(col++) = Eigen::Map<const Eigen::VectorXd>(
        column.values.data(), Eigen::Index(column.values.size()));
  Eigen::VectorXd y_c = Eigen::Map<const Eigen::VectorXd>(
      prior_data.y.values.data(), rows);

  ConceptualSample prior = conceptual_from_data(std::move(X_c), std::move(y_c));
  if (request.prior_rows > 0) prior.declared_rows = request.prior_rows;

  ctx.prior = ReportPrior{request.prior_path, std::int64_t(rows),
                          prior.declared_rows, prior_data.content_hash};
  ctx.prior_physical_rows = rows;
  ctx.fit = fit_with_prior(problem, prior);
  return ctx;
}

// ---- shared blocks ----

DensityEntry entry_of(const std::string& target, const LaplaceDist& d) {
  return {target, "laplace", d.location, d.scale};
}

DensityEntry entry_of(const std::string& target, const NormalDist& d) {
  return {target, "normal", d.mean, d.sd()};
}

DensityEntry entry_of(const std::string& target,
                      const ScaledExponentialDist& d) {
  return {target, "exponential", 0.0, d.mean};
}

void fill_common(AnalysisReport& report, const ModelContext& ctx,
                 const AnalysisRequest& request) {
  report.schema = kReportSchema;
  report.version = kVersion;
  report.command = command_name(request.command);
  report.model = model_name(ctx.kind);
  report.level = request.level;

  report.data.path = request.data_path;
  report.data.response = request.y_name;
  report.data.rows = ctx.data_rows;
  report.data.content_hash = ctx.data.content_hash;
  report.prior = ctx.prior;

  if (ctx.kind == ModelKind::mean) {
    const MeanPosterior& post = *ctx.mean;
    report.moments.estimates = {{"theta", post.ybar}};
    report.moments.s2 = post.s2;
    report.moments.dof = post.n - 1;

    const MeanMaxentSet set = mean_maxent(post);
    report.densities.push_back(entry_of("theta", set.theta_marginal));
    report.densities.push_back(entry_of("theta|sigma2", set.theta_conditional));
    report.densities.push_back(entry_of("sigma2", set.sigma2_density));
    report.densities.push_back(entry_of("predictive", set.predictive_marginal));
    report.densities.push_back(
        entry_of("predictive|sigma2", set.predictive_conditional));
    report.intervals.push_back(
        {"theta", theta_interval(post, request.level)});
  } else {
    const LeastSquaresFit& fit = *ctx.fit;
    report.data.columns = fit.problem.names;
    for (Eigen::Index i = 0; i < fit.problem.k(); ++i)
      report.moments.estimates.push_back(
          {fit.problem.names[size_t(i)], fit.beta[i]});
    report.moments.s2 = fit.s2;
    report.moments.dof = fit.dof;

    for (Eigen::Index i = 0; i < fit.problem.k(); ++i) {
      const std::string target = "coef:" + fit.problem.names[size_t(i)];
      report.densities.push_back(
          entry_of(target, coefficient_marginal(fit, int(i))));
      report.intervals.push_back(
          {target, coefficient_interval(fit, int(i), request.level)});
    }
    report.densities.push_back(entry_of("sigma2", sigma2_density(fit)));

    if (!request.ell.empty()) {
      const Eigen::VectorXd ell = Eigen::Map<const Eigen::VectorXd>(
          request.ell.data(), Eigen::Index(request.ell.size()));
      const LinearCombination combo = linear_combination_marginal(fit, ell);
      report.combination = ReportCombination{
          request.ell, combo.value, combo.s_eta2,
          entry_of("combination", combo.marginal),
          central_interval(combo.marginal, request.level)};
    }
  }
  if (ctx.kind == ModelKind::mean && !request.ell.empty())
    throw domain_error("--ell applies to regression designs only");
}

void fill_prediction(AnalysisReport& report, const ModelContext& ctx,
                     const AnalysisRequest& request) {
  if (ctx.kind == ModelKind::mean) {
    if (!request.x_f.empty())
      throw domain_error(
          "mean-model prediction takes no regressor point; drop --xf");
    const MeanMaxentSet set = mean_maxent(*ctx.mean);
    const double inflation = 1.0 + 1.0 / double(ctx.mean->n);
    report.prediction = ReportPrediction{
        {},
        ctx.mean->ybar,
        inflation,
        inflation * ctx.mean->s2,
        entry_of("predictive", set.predictive_marginal),
        central_interval(set.predictive_marginal, request.level)};
    return;
  }
  if (request.x_f.empty())
    throw domain_error("prediction needs a regressor point; pass --xf");
  const Eigen::VectorXd x_f = Eigen::Map<const Eigen::VectorXd>(
      request.x_f.data(), Eigen::Index(request.x_f.size()));
  const PredictivePoint pp = predictive_point(*ctx.fit, x_f);
  report.prediction = ReportPrediction{
      request.x_f,
      pp.y_hat,
      pp.inflation,
      pp.s_e2,
      entry_of("predictive", pp.marginal),
      central_interval(pp.marginal, request.level)};
}

void fill_errors(AnalysisReport& report, const ModelContext& ctx) {
  if (ctx.kind == ModelKind::mean) {
    const MeanPosterior& post = *ctx.mean;
    const double h = 1.0 / double(post.n);
    for (int i = 0; i < post.n; ++i) {
      const LaplaceDist marginal = mean_error_marginal(post, i);
      report.error_rows.push_back({i + 1, post.residuals[size_t(i)], h,
                                   h * post.s2, marginal.scale});
    }
    return;
  }
  const LeastSquaresFit& fit = *ctx.fit;
  // with a stacked prior, only the data rows are realized observations
  const Eigen::Index offset = ctx.prior_physical_rows;
  const Eigen::Index n = fit.problem.n();
  for (Eigen::Index i = offset; i < n; ++i) {
    const RealizedErrorDensity err = realized_error_marginal(fit, int(i));
    report.error_rows.push_back({int(i - offset) + 1, err.residual,
                                 err.leverage, err.leverage * fit.s2,
                                 err.marginal.scale});
  }
}

LeastSquaresFit mean_as_intercept_fit(const ModelContext& ctx) {
  const Eigen::Index n = Eigen::Index(ctx.data.y.values.size());
  Eigen::VectorXd y =
      Eigen::Map<const Eigen::VectorXd>(ctx.data.y.values.data(), n);
  Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(n, 1);
  return fit_regression(
      make_problem(std::move(y), std::move(ones), {"theta"}, true));
}

void fill_sampler(AnalysisReport& report, const ModelContext& ctx,
                  const AnalysisRequest& request) {
  if (!request.seed)
    throw domain_error("sampling needs a seed (--seed or BMOM_SEED)");
  const LeastSquaresFit fit =
      ctx.kind == ModelKind::mean ? mean_as_intercept_fit(ctx) : *ctx.fit;
  const DrawConfig config{*request.seed, request.draws};
  const JointDraws joint = draw_joint(fit, config);

  ReportSampler block;
  block.seed = *request.seed;
  block.draws = request.draws;

  const auto add_component = [&](const std::string& name,
                                 const DrawSummary& summary, size_t j) {
    const ComponentSummary& c = summary.components[j];
    block.components.push_back(
        {name, c.mean, c.variance, c.excess, c.lower, c.upper});
  };

  const DrawSummary sigma_summary =
      summarize_draws(joint.sigma2, request.level);
  add_component("sigma2", sigma_summary, 0);
  const DrawSummary beta_summary = summarize_draws(joint.beta, request.level);
  for (Eigen::Index j = 0; j < fit.problem.k(); ++j)
    add_component(fit.problem.names[size_t(j)], beta_summary, size_t(j));

  if (!request.x_f.empty()) {
    if (ctx.kind == ModelKind::mean)
      throw domain_error(
          "mean-model prediction takes no regressor point; drop --xf");
    const Eigen::VectorXd x_f = Eigen::Map<const Eigen::VectorXd>(
        request.x_f.data(), Eigen::Index(request.x_f.size()));
    const PredictiveDraws pred = draw_predictive(fit, x_f, config);
    add_component("predictive", summarize_draws(pred.y, request.level), 0);
  }

  report.sampler = std::move(block);
}

ReportComparisonRoute route_of(const std::string& family,
                               const IntervalEstimate& interval,
                               std::optional<double> variance,
                               std::optional<double> sigma2_mean,
                               std::optional<double> excess) {
  return {family,   interval.lower, interval.upper, interval.width(),
          variance, sigma2_mean,    excess};
}

int resolve_coefficient(const LeastSquaresFit& fit, const std::string& spec) {
  if (spec.empty()) return 0;
  const auto& names = fit.problem.names;
  for (size_t i = 0; i < names.size(); ++i)
    if (names[i] == spec) return int(i);
  int position = 0;
  const auto [ptr, ec] =
      std::from_chars(spec.data(), spec.data() + spec.size(), position);
  if (ec == std::errc() && ptr == spec.data() + spec.size()) {
    if (position < 1 || position > int(names.size()))
      throw domain_error("coefficient position " + spec + " outside 1.." +
                         std::to_string(names.size()));
    return position - 1;
  }
  std::string msg = "no coefficient named '" + spec + "'; columns:";
  for (const auto& name : names) msg += " " + name;
  throw domain_error(msg);
}

void fill_comparison(AnalysisReport& report, const ModelContext& ctx,
                     const AnalysisRequest& request) {
  const ComparisonReport cmp =
      ctx.kind == ModelKind::mean
          ? compare_mean(*ctx.mean, request.level)
          : compare_coefficient(*ctx.fit,
                                resolve_coefficient(*ctx.fit, request.coef),
                                request.level);

  ReportComparison block;
  block.target = cmp.target;
  block.center = cmp.center;
  block.nu = cmp.nu;
  block.laplace =
      route_of("laplace", cmp.laplace_interval, cmp.laplace_variance,
               cmp.laplace_sigma2_mean, cmp.laplace_excess);
  // the normal route conditions on sigma^2 = s2, so its spread is exact
  block.normal = route_of("normal", cmp.normal_interval, cmp.laplace_variance,
                          cmp.s2, 0.0);
  block.student =
      route_of("student_t", cmp.student_interval, cmp.student_variance,
               cmp.student_sigma2_mean, cmp.student_excess);
  block.width_ratio_laplace_normal = cmp.width_ratio_laplace_normal;
  block.width_ratio_laplace_student = cmp.width_ratio_laplace_student;
  report.comparison = std::move(block);
}

}  // namespace

AnalysisReport run_analysis(const AnalysisRequest& request) {
  if (request.command == Command::density)
    throw domain_error(
        "the density command tabulates a grid; call density_grid");

  const ModelContext ctx = build_context(request);
  AnalysisReport report;
  fill_common(report, ctx, request);

  switch (request.command) {
    case Command::mean:
    case Command::regress:
    case Command::ar:
      break;
    case Command::predict:
      fill_prediction(report, ctx, request);
      break;
    case Command::errors:
      fill_errors(report, ctx);
      break;
    case Command::sample:
      fill_sampler(report, ctx, request);
      break;
    case Command::compare:
      fill_comparison(report, ctx, request);
      break;
    case Command::density:
      break;  // unreachable
  }
  return report;
}

// ---- density grids ----

namespace {

struct GridDist {
  std::string target;
  std::string family;
  double lo;
  double hi;
  std::function<double(double)> pdf;
};

GridDist grid_for(const LaplaceDist& d, const std::string& target) {
  const double span = 6.0 * d.sd();
  return {target, "laplace", d.location - span, d.location + span,
          [d](double x) { return laplace_eval(d, x).pdf; }};
}

GridDist grid_for(const ScaledExponentialDist& d, const std::string& target) {
  // out to the 1 - 1e-6 quantile
  return {target, "exponential", 0.0, d.mean * std::log(1e6),
          [d](double x) { return exp_scale_eval(d, x).pdf; }};
}

int parse_grid_index(const std::string& text, const std::string& what,
                     int count) {
  int position = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), position);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw domain_error("cannot parse " + what + " index '" + text + "'");
  if (position < 1 || position > count)
    throw domain_error(what + " index " + text + " outside 1.." +
                       std::to_string(count));
  return position - 1;
}

GridDist resolve_target(const ModelContext& ctx,
                        const AnalysisRequest& request) {
  std::string target = request.target;
  if (target.empty())
    target = ctx.kind == ModelKind::mean ? "theta" : "sigma2";

  const bool is_mean = ctx.kind == ModelKind::mean;
  if (target == "theta") {
    if (!is_mean)
      throw domain_error(
          "target 'theta' belongs to the mean model; use coef:NAME");
    return grid_for(mean_maxent(*ctx.mean).theta_marginal, target);
  }
  if (target == "sigma2") {
    return is_mean
               ? grid_for(mean_maxent(*ctx.mean).sigma2_density, target)
               : grid_for(sigma2_density(*ctx.fit), target);
  }
  if (target == "predictive") {
    if (is_mean) {
      if (!request.x_f.empty())
        throw domain_error(
            "mean-model prediction takes no regressor point; drop --xf");
      return grid_for(mean_maxent(*ctx.mean).predictive_marginal, target);
    }
    if (request.x_f.empty())
      throw domain_error("target 'predictive' needs --xf");
    const Eigen::VectorXd x_f = Eigen::Map<const Eigen::VectorXd>(
        request.x_f.data(), Eigen::Index(request.x_f.size()));
    return grid_for(predictive_point(*ctx.fit, x_f).marginal, target);
  }
  if (target.rfind("coef:", 0) == 0) {
    if (is_mean)
      throw domain_error("target 'coef:' needs a regression design");
    const int i = resolve_coefficient(*ctx.fit, target.substr(5));
    return grid_for(coefficient_marginal(*ctx.fit, i), target);
  }
  if (target.rfind("error:", 0) == 0) {
    const std::string suffix = target.substr(6);
    if (is_mean) {
      const int i = parse_grid_index(suffix, "observation", ctx.mean->n);
      return grid_for(mean_error_marginal(*ctx.mean, i), target);
    }
    const int count = int(ctx.fit->problem.n() - ctx.prior_physical_rows);
    const int i = parse_grid_index(suffix, "observation", count);
    return grid_for(
        realized_error_marginal(*ctx.fit, i + int(ctx.prior_physical_rows))
            .marginal,
        target);
  }
  if (target == "combination") {
    if (is_mean)
      throw domain_error("target 'combination' needs a regression design");
    if (request.ell.empty())
      throw domain_error("target 'combination' needs --ell");
    const Eigen::VectorXd ell = Eigen::Map<const Eigen::VectorXd>(
        request.ell.data(), Eigen::Index(request.ell.size()));
    return grid_for(linear_combination_marginal(*ctx.fit, ell).marginal,
                    target);
  }
  if (target == "positive") {
    if (is_mean) return grid_for(positive_mean_density(*ctx.mean), target);
    if (request.ell.empty())
      throw domain_error("target 'positive' needs --ell on a regression design");
    const Eigen::VectorXd ell = Eigen::Map<const Eigen::VectorXd>(
        request.ell.data(), Eigen::Index(request.ell.size()));
    return grid_for(positive_combination_density(*ctx.fit, ell), target);
  }
  throw domain_error(
      "unknown density target '" + target +
      "'; expected theta, sigma2, predictive, coef:NAME, error:ROW, "
      "combination, or positive");
}

}  // namespace

DensityGrid density_grid(const AnalysisRequest& request) {
  if (request.grid_points < 2)
    throw domain_error("a density grid needs at least 2 points, got " +
                       std::to_string(request.grid_points));
  const ModelContext ctx = build_context(request);
  const GridDist dist = resolve_target(ctx, request);

  DensityGrid grid;
  grid.target = dist.target;
  grid.family = dist.family;
  const int m = request.grid_points;
  grid.x.reserve(size_t(m));
  grid.pdf.reserve(size_t(m));
  const double step = (dist.hi - dist.lo) / double(m - 1);
  for (int i = 0; i < m; ++i) {
    const double x = i + 1 == m ? dist.hi : dist.lo + step * i;
    grid.x.push_back(x);
    grid.pdf.push_back(dist.pdf(x));
  }
  return grid;
}

std::string draws_csv(const AnalysisRequest& request) {
  if (!request.seed)
    throw domain_error("sampling needs a seed (--seed or BMOM_SEED)");
  const ModelContext ctx = build_context(request);
  const LeastSquaresFit fit =
      ctx.kind == ModelKind::mean ? mean_as_intercept_fit(ctx) : *ctx.fit;
  const DrawConfig config{*request.seed, request.draws};
  const JointDraws joint = draw_joint(fit, config);

  std::optional<PredictiveDraws> pred;
  if (!request.x_f.empty() && ctx.kind != ModelKind::mean) {
    const Eigen::VectorXd x_f = Eigen::Map<const Eigen::VectorXd>(
        request.x_f.data(), Eigen::Index(request.x_f.size()));
    pred = draw_predictive(fit, x_f, config);
  }

  std::string out = "sigma2";
  for (const auto& name : fit.problem.names) out += "," + name;
  if (pred) out += ",predictive";
  out += "\n";
  for (std::int64_t d = 0; d < request.draws; ++d) {
    out += format_double(joint.sigma2[d]);
    for (Eigen::Index j = 0; j < fit.problem.k(); ++j)
      out += "," + format_double(joint.beta(d, j));
    if (pred) out += "," + format_double(pred->y[d]);
    out += "\n";
  }
  return out;
}

// ---- renderers ----

std::string format_double(double value) {
  if (!std::isfinite(value))
    throw numeric_error("refusing to render a non-finite number");
  char buf[40];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc())
    throw numeric_error("number formatting failed");
  return std::string(buf, ptr);
}

namespace {

ordered_json interval_json(const IntervalEstimate& iv) {
  return {{"method", iv.method},
          {"level", iv.level},
          {"lower", iv.lower},
          {"upper", iv.upper},
          {"width", iv.width()}};
}

ordered_json density_json(const DensityEntry& d) {
  return {{"target", d.target},
          {"family", d.family},
          {"location", d.location},
          {"scale", d.scale}};
}

ordered_json route_json(const ReportComparisonRoute& r) {
  ordered_json j{{"family", r.family},
                 {"lower", r.lower},
                 {"upper", r.upper},
                 {"width", r.width}};
  if (r.variance) j["variance"] = *r.variance;
  if (r.sigma2_mean) j["sigma2_mean"] = *r.sigma2_mean;
  if (r.excess) j["excess"] = *r.excess;
  return j;
}

void check_finite_tree(const ordered_json& j) {
  if (j.is_number_float() && !std::isfinite(j.get<double>()))
    throw numeric_error("report contains a non-finite number");
  if (j.is_object() || j.is_array())
    for (const auto& child : j) check_finite_tree(child);
}

ordered_json report_json_tree(const AnalysisReport& report) {
  ordered_json j;
  j["schema"] = report.schema;
  j["version"] = report.version;
  j["command"] = report.command;
  j["model"] = report.model;
  j["level"] = report.level;

  j["data"] = {{"path", report.data.path},
               {"response", report.data.response},
               {"columns", report.data.columns},
               {"rows", report.data.rows},
               {"content_hash", hash_string(report.data.content_hash)}};
  if (report.prior)
    j["prior"] = {{"path", report.prior->path},
                  {"rows", report.prior->rows},
                  {"declared_rows", report.prior->declared_rows},
                  {"content_hash", hash_string(report.prior->content_hash)}};

  ordered_json estimates = ordered_json::array();
  for (const auto& e : report.moments.estimates)
    estimates.push_back({{"name", e.name}, {"value", e.value}});
  j["moments"] = {{"estimates", estimates},
                  {"s2", report.moments.s2},
                  {"dof", report.moments.dof}};

  ordered_json densities = ordered_json::array();
  for (const auto& d : report.densities) densities.push_back(density_json(d));
  j["densities"] = densities;

  ordered_json intervals = ordered_json::array();
  for (const auto& iv : report.intervals) {
    ordered_json entry{{"target", iv.target}};
    entry.update(interval_json(iv.interval));
    intervals.push_back(std::move(entry));
  }
  j["intervals"] = intervals;

  if (report.prediction) {
    const auto& p = *report.prediction;
    j["prediction"] = {{"x_f", p.x_f},
                       {"y_hat", p.y_hat},
                       {"inflation", p.inflation},
                       {"s_e2", p.s_e2},
                       {"marginal", density_json(p.marginal)},
                       {"interval", interval_json(p.interval)}};
  }
  if (report.combination) {
    const auto& c = *report.combination;
    j["combination"] = {{"ell", c.ell},
                        {"value", c.value},
                        {"s_eta2", c.s_eta2},
                        {"marginal", density_json(c.marginal)},
                        {"interval", interval_json(c.interval)}};
  }
  if (!report.error_rows.empty()) {
    ordered_json rows = ordered_json::array();
    for (const auto& r : report.error_rows)
      rows.push_back({{"row", r.row},
                      {"residual", r.residual},
                      {"leverage", r.leverage},
                      {"conditional_variance", r.conditional_variance},
                      {"marginal_scale", r.marginal_scale}});
    j["errors"] = rows;
  }
  if (report.comparison) {
    const auto& c = *report.comparison;
    j["comparison"] = {
        {"target", c.target},
        {"center", c.center},
        {"nu", c.nu},
        {"laplace", route_json(c.laplace)},
        {"normal", route_json(c.normal)},
        {"student_t", route_json(c.student)},
        {"width_ratio_laplace_normal", c.width_ratio_laplace_normal},
        {"width_ratio_laplace_student", c.width_ratio_laplace_student}};
  }
  if (report.sampler) {
    ordered_json components = ordered_json::array();
    for (const auto& c : report.sampler->components)
      components.push_back({{"name", c.name},
                            {"mean", c.mean},
                            {"variance", c.variance},
                            {"excess", c.excess},
                            {"lower", c.lower},
                            {"upper", c.upper}});
    j["sampler"] = {{"seed", report.sampler->seed},
                    {"draws", report.sampler->draws},
                    {"components", components}};
  }
  return j;
}

}  // namespace

std::string render_json(const AnalysisReport& report) {
  const ordered_json j = report_json_tree(report);
  check_finite_tree(j);
  return j.dump(2) + "\n";
}

std::string render_text(const AnalysisReport& report) {
  std::ostringstream out;
  out << "bmom " << report.version << " (" << report.schema << ")\n";
  out << "command " << report.command << " | model " << report.model
      << " | level " << format_double(report.level) << "\n";
  out << "data " << report.data.path << " | rows " << report.data.rows
      << " | response " << report.data.response << " | "
      << hash_string(report.data.content_hash) << "\n";
  if (!report.data.columns.empty()) {
    out << "columns";
    for (const auto& c : report.data.columns) out << " " << c;
    out << "\n";
  }
  if (report.prior)
    out << "prior " << report.prior->path << " | rows " << report.prior->rows
        << " | declared " << report.prior->declared_rows << " | "
        << hash_string(report.prior->content_hash) << "\n";

  out << "\nmoments  s2 " << format_double(report.moments.s2) << "  dof "
      << report.moments.dof << "\n";
  for (const auto& e : report.moments.estimates)
    out << "  " << e.name << " = " << format_double(e.value) << "\n";

  out << "\ndensities\n";
  for (const auto& d : report.densities)
    out << "  " << d.target << "  " << d.family << "  location "
        << format_double(d.location) << "  scale " << format_double(d.scale)
        << "\n";

  out << "\nintervals (level " << format_double(report.level) << ")\n";
  for (const auto& iv : report.intervals)
    out << "  " << iv.target << "  [" << format_double(iv.interval.lower)
        << ", " << format_double(iv.interval.upper) << "]  "
        << iv.interval.method << "\n";

  if (report.prediction) {
    const auto& p = *report.prediction;
    out << "\nprediction";
    if (!p.x_f.empty()) {
      out << " at [";
      for (size_t i = 0; i < p.x_f.size(); ++i)
        out << (i ? ", " : "") << format_double(p.x_f[i]);
      out << "]";
    }
    out << "\n  y_hat " << format_double(p.y_hat) << "  inflation "
        << format_double(p.inflation) << "  s_e2 " << format_double(p.s_e2)
        << "\n  marginal " << p.marginal.family << " scale "
        << format_double(p.marginal.scale) << "\n  interval ["
        << format_double(p.interval.lower) << ", "
        << format_double(p.interval.upper) << "]\n";
  }
  if (report.combination) {
    const auto& c = *report.combination;
    out << "\ncombination [";
    for (size_t i = 0; i < c.ell.size(); ++i)
      out << (i ? ", " : "") << format_double(c.ell[i]);
    out << "]\n  value " << format_double(c.value) << "  s_eta2 "
        << format_double(c.s_eta2) << "\n  interval ["
        << format_double(c.interval.lower) << ", "
        << format_double(c.interval.upper) << "]\n";
  }
  if (!report.error_rows.empty()) {
    out << "\nerrors\n  row  residual  leverage  conditional_variance  "
           "marginal_scale\n";
    for (const auto& r : report.error_rows)
      out << "  " << r.row << "  " << format_double(r.residual) << "  "
          << format_double(r.leverage) << "  "
          << format_double(r.conditional_variance) << "  "
          << format_double(r.marginal_scale) << "\n";
  }
  if (report.comparison) {
    const auto& c = *report.comparison;
    out << "\ncomparison " << c.target << "  center "
        << format_double(c.center) << "  nu " << format_double(c.nu) << "\n";
    const auto route_line = [&](const ReportComparisonRoute& r) {
      out << "  " << r.family << "  [" << format_double(r.lower) << ", "
          << format_double(r.upper) << "]  width " << format_double(r.width);
      out << "  variance " << (r.variance ? format_double(*r.variance) : "-");
      out << "  sigma2_mean "
          << (r.sigma2_mean ? format_double(*r.sigma2_mean) : "-");
      out << "  excess " << (r.excess ? format_double(*r.excess) : "-");
      out << "\n";
    };
    route_line(c.laplace);
    route_line(c.normal);
    route_line(c.student);
    out << "  width ratio laplace/normal "
        << format_double(c.width_ratio_laplace_normal) << "\n";
    out << "  width ratio laplace/student "
        << format_double(c.width_ratio_laplace_student) << "\n";
  }
  if (report.sampler) {
    out << "\nsampler  seed " << report.sampler->seed << "  draws "
        << report.sampler->draws << "\n";
    out << "  name  mean  variance  excess  lower  upper\n";
    for (const auto& c : report.sampler->components)
      out << "  " << c.name << "  " << format_double(c.mean) << "  "
          << format_double(c.variance) << "  " << format_double(c.excess)
          << "  " << format_double(c.lower) << "  " << format_double(c.upper)
          << "\n";
  }
  return std::move(out).str();
}

std::string render_grid_tsv(const DensityGrid& grid) {
  std::string out = "x\tpdf\n";
  for (size_t i = 0; i < grid.x.size(); ++i)
    out += format_double(grid.x[i]) + "\t" + format_double(grid.pdf[i]) + "\n";
  return out;
}

}  // namespace bmom
