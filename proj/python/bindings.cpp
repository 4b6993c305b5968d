#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <span>
#include <vector>

#include "bmom/baseline.hpp"
#include "bmom/conceptual_prior.hpp"
#include "bmom/csv.hpp"
#include "bmom/densities.hpp"
#include "bmom/errors.hpp"
#include "bmom/math.hpp"
#include "bmom/mean_model.hpp"
#include "bmom/quadrature.hpp"
#include "bmom/regression.hpp"
#include "bmom/report.hpp"
#include "bmom/sampler.hpp"
#include "bmom/version.hpp"

namespace py = pybind11;

using bmom::AnalysisRequest;

PYBIND11_MODULE(_bmom, m) {
  m.doc() = "moment-based Bayesian inference for mean and regression models";
  m.attr("__version__") = bmom::kVersion;
  m.attr("REPORT_SCHEMA") = bmom::kReportSchema;

  // exception translators run newest-first, so the base goes in first and
  // the specific types below shadow it
  auto base = py::register_exception<bmom::error>(m, "Error");
  py::register_exception<bmom::domain_error>(m, "DomainError", base.ptr());
  py::register_exception<bmom::insufficient_data_error>(
      m, "InsufficientDataError", base.ptr());
  py::register_exception<bmom::dimension_error>(m, "DimensionError",
                                                base.ptr());
  py::register_exception<bmom::positivity_error>(m, "PositivityError",
                                                 base.ptr());
  py::register_exception<bmom::moment_undefined_error>(
      m, "MomentUndefinedError", base.ptr());
  py::register_exception<bmom::numeric_error>(m, "NumericError", base.ptr());
  py::register_exception<bmom::data_error>(m, "DataError", base.ptr());
  py::register_exception<bmom::zero_variance_error>(m, "ZeroVarianceError",
                                                    base.ptr());
  py::register_exception<bmom::ill_posed_design_error>(
      m, "IllPosedDesignError", base.ptr());

  // ---- special functions ----
  m.def("erf", &bmom::math::erf, py::arg("x"));
  m.def("erfc", &bmom::math::erfc, py::arg("x"));
  m.def("normal_cdf", &bmom::math::normal_cdf, py::arg("z"));
  m.def("normal_pdf", &bmom::math::normal_pdf, py::arg("z"));
  m.def("normal_quantile", &bmom::math::normal_quantile, py::arg("p"));
  m.def("log_gamma", &bmom::math::log_gamma, py::arg("x"));
  m.def("incomplete_beta", &bmom::math::incomplete_beta, py::arg("a"),
        py::arg("b"), py::arg("x"));
  m.def(
      "adaptive_simpson",
      [](const std::function<double(double)>& f, double a, double b,
         double tol, int max_depth) {
        return bmom::quadrature::adaptive_simpson(f, a, b, tol, max_depth);
      },
      py::arg("f"), py::arg("a"), py::arg("b"), py::arg("tol") = 1e-10,
      py::arg("max_depth") = 48);

  // ---- densities ----
  py::class_<bmom::NormalDist>(m, "NormalDist")
      .def(py::init<double, double>(), py::arg("mean"), py::arg("variance"))
      .def_readonly("mean", &bmom::NormalDist::mean)
      .def_readonly("variance", &bmom::NormalDist::variance)
      .def("sd", &bmom::NormalDist::sd);
  py::class_<bmom::LaplaceDist>(m, "LaplaceDist")
      .def(py::init<double, double>(), py::arg("location"), py::arg("scale"))
      .def_readonly("location", &bmom::LaplaceDist::location)
      .def_readonly("scale", &bmom::LaplaceDist::scale)
      .def("variance", &bmom::LaplaceDist::variance)
      .def("sd", &bmom::LaplaceDist::sd);
  py::class_<bmom::ScaledExponentialDist>(m, "ScaledExponentialDist")
      .def(py::init<double>(), py::arg("mean"))
      .def_readonly("mean", &bmom::ScaledExponentialDist::mean)
      .def("variance", &bmom::ScaledExponentialDist::variance);
  py::class_<bmom::DensityValue>(m, "DensityValue")
      .def_readonly("pdf", &bmom::DensityValue::pdf)
      .def_readonly("log_pdf", &bmom::DensityValue::log_pdf)
      .def_readonly("cdf", &bmom::DensityValue::cdf);
  py::class_<bmom::IntervalEstimate>(m, "IntervalEstimate")
      .def_readonly("lower", &bmom::IntervalEstimate::lower)
      .def_readonly("upper", &bmom::IntervalEstimate::upper)
      .def_readonly("level", &bmom::IntervalEstimate::level)
      .def_readonly("method", &bmom::IntervalEstimate::method)
      .def("width", &bmom::IntervalEstimate::width);

  m.def("normal_eval", &bmom::normal_eval, py::arg("d"), py::arg("x"));
  m.def("laplace_eval", &bmom::laplace_eval, py::arg("d"), py::arg("x"));
  m.def("exp_scale_eval", &bmom::exp_scale_eval, py::arg("d"), py::arg("x"));
  m.def("laplace_quantile", &bmom::laplace_quantile, py::arg("d"),
        py::arg("p"));
  m.def("laplace_from_mean_var", &bmom::laplace_from_mean_var, py::arg("mean"),
        py::arg("variance"));
  m.def("laplace_even_moment", &bmom::laplace_even_moment, py::arg("r"));
  m.def("central_interval",
        py::overload_cast<const bmom::NormalDist&, double>(
            &bmom::central_interval),
        py::arg("d"), py::arg("level"));
  m.def("central_interval",
        py::overload_cast<const bmom::LaplaceDist&, double>(
            &bmom::central_interval),
        py::arg("d"), py::arg("level"));
  m.def("scale_mixture_numeric", &bmom::scale_mixture_numeric,
        py::arg("variance_factor"), py::arg("s2"), py::arg("offset"));
  m.def(
      "mixture_check",
      [](int n, double s2, const std::vector<double>& grid) {
        return bmom::mixture_check(n, s2, grid);
      },
      py::arg("n"), py::arg("s2"), py::arg("grid"));

  // ---- mean model ----
  py::class_<bmom::MeanPosterior>(m, "MeanPosterior")
      .def_readonly("ybar", &bmom::MeanPosterior::ybar)
      .def_readonly("s2", &bmom::MeanPosterior::s2)
      .def_readonly("n", &bmom::MeanPosterior::n)
      .def_readonly("residuals", &bmom::MeanPosterior::residuals);
  py::class_<bmom::MeanMaxentSet>(m, "MeanMaxentSet")
      .def_readonly("theta_conditional", &bmom::MeanMaxentSet::theta_conditional)
      .def_readonly("sigma2_density", &bmom::MeanMaxentSet::sigma2_density)
      .def_readonly("theta_marginal", &bmom::MeanMaxentSet::theta_marginal)
      .def_readonly("predictive_conditional",
                    &bmom::MeanMaxentSet::predictive_conditional)
      .def_readonly("predictive_marginal",
                    &bmom::MeanMaxentSet::predictive_marginal)
      .def_readonly("conditioning_sigma2",
                    &bmom::MeanMaxentSet::conditioning_sigma2);
  m.def(
      "fit_mean",
      [](const std::vector<double>& values) { return bmom::fit_mean(values); },
      py::arg("values"));
  m.def("mean_maxent", &bmom::mean_maxent, py::arg("post"),
        py::arg("sigma2") = std::optional<double>());
  m.def("theta_interval", &bmom::theta_interval, py::arg("post"),
        py::arg("level"));
  m.def("positive_mean_density", &bmom::positive_mean_density, py::arg("post"));
  m.def("mean_error_marginal", &bmom::mean_error_marginal, py::arg("post"),
        py::arg("i"));
  m.def("mean_error_conditional", &bmom::mean_error_conditional,
        py::arg("post"), py::arg("i"),
        py::arg("sigma2") = std::optional<double>());

  // ---- regression ----
  py::class_<bmom::RegressionProblem>(m, "RegressionProblem")
      .def_readonly("y", &bmom::RegressionProblem::y)
      .def_readonly("X", &bmom::RegressionProblem::X)
      .def_readonly("names", &bmom::RegressionProblem::names)
      .def_readonly("intercept", &bmom::RegressionProblem::intercept)
      .def("n", &bmom::RegressionProblem::n)
      .def("k", &bmom::RegressionProblem::k);
  py::class_<bmom::LeastSquaresFit>(m, "LeastSquaresFit")
      .def_readonly("problem", &bmom::LeastSquaresFit::problem)
      .def_readonly("beta", &bmom::LeastSquaresFit::beta)
      .def_readonly("residuals", &bmom::LeastSquaresFit::residuals)
      .def_readonly("s2", &bmom::LeastSquaresFit::s2)
      .def_readonly("dof", &bmom::LeastSquaresFit::dof)
      .def_readonly("xtx_inv", &bmom::LeastSquaresFit::xtx_inv)
      .def_readonly("leverage", &bmom::LeastSquaresFit::leverage);
  py::class_<bmom::PredictivePoint>(m, "PredictivePoint")
      .def_readonly("x_f", &bmom::PredictivePoint::x_f)
      .def_readonly("y_hat", &bmom::PredictivePoint::y_hat)
      .def_readonly("inflation", &bmom::PredictivePoint::inflation)
      .def_readonly("s_e2", &bmom::PredictivePoint::s_e2)
      .def_readonly("marginal", &bmom::PredictivePoint::marginal);
  py::class_<bmom::LinearCombination>(m, "LinearCombination")
      .def_readonly("ell", &bmom::LinearCombination::ell)
      .def_readonly("value", &bmom::LinearCombination::value)
      .def_readonly("s_eta2", &bmom::LinearCombination::s_eta2)
      .def_readonly("marginal", &bmom::LinearCombination::marginal);
  py::class_<bmom::RealizedErrorDensity>(m, "RealizedErrorDensity")
      .def_readonly("index", &bmom::RealizedErrorDensity::index)
      .def_readonly("residual", &bmom::RealizedErrorDensity::residual)
      .def_readonly("leverage", &bmom::RealizedErrorDensity::leverage)
      .def_readonly("conditional", &bmom::RealizedErrorDensity::conditional)
      .def_readonly("marginal", &bmom::RealizedErrorDensity::marginal)
      .def_readonly("conditioning_sigma2",
                    &bmom::RealizedErrorDensity::conditioning_sigma2);
  py::class_<bmom::ProjectionDiagnostics>(m, "ProjectionDiagnostics")
      .def_readonly("leverage_sum", &bmom::ProjectionDiagnostics::leverage_sum)
      .def_readonly("max_abs_orthogonality",
                    &bmom::ProjectionDiagnostics::max_abs_orthogonality)
      .def_readonly("max_leverage_gap",
                    &bmom::ProjectionDiagnostics::max_leverage_gap);

  m.def(
      "build_design",
      [](const std::vector<double>& y,
         const std::vector<std::vector<double>>& x_columns,
         const std::vector<std::string>& names, bool intercept) {
        return bmom::build_design(y, x_columns, names, intercept);
      },
      py::arg("y"), py::arg("x_columns"), py::arg("names"),
      py::arg("intercept") = false);
  m.def(
      "build_ar_design",
      [](const std::vector<double>& series, int lags, bool intercept) {
        return bmom::build_ar_design(series, lags, intercept);
      },
      py::arg("series"), py::arg("lags"), py::arg("intercept") = true);
  m.def("make_problem", &bmom::make_problem, py::arg("y"), py::arg("X"),
        py::arg("names"), py::arg("intercept") = false);
  m.def("fit_regression", &bmom::fit_regression, py::arg("problem"));
  m.def("coefficient_marginal", &bmom::coefficient_marginal, py::arg("fit"),
        py::arg("i"));
  m.def("coefficient_interval", &bmom::coefficient_interval, py::arg("fit"),
        py::arg("i"), py::arg("level"));
  m.def("linear_combination_marginal", &bmom::linear_combination_marginal,
        py::arg("fit"), py::arg("ell"));
  m.def("predictive_point", &bmom::predictive_point, py::arg("fit"),
        py::arg("x_f"));
  m.def("predictive_conditional", &bmom::predictive_conditional,
        py::arg("fit"), py::arg("x_f"),
        py::arg("sigma2") = std::optional<double>());
  m.def("realized_error_marginal", &bmom::realized_error_marginal,
        py::arg("fit"), py::arg("i"),
        py::arg("sigma2") = std::optional<double>());
  m.def("positive_combination_density", &bmom::positive_combination_density,
        py::arg("fit"), py::arg("ell"));
  m.def("sigma2_density", &bmom::sigma2_density, py::arg("fit"));
  m.def("projection_diagnostics", &bmom::projection_diagnostics,
        py::arg("fit"));

  // ---- conceptual prior ----
  py::class_<bmom::ConceptualSample>(m, "ConceptualSample")
      .def_readonly("X_c", &bmom::ConceptualSample::X_c)
      .def_readonly("y_c", &bmom::ConceptualSample::y_c)
      .def_readonly("declared_rows", &bmom::ConceptualSample::declared_rows)
      .def("rows", &bmom::ConceptualSample::rows)
      .def("empty", &bmom::ConceptualSample::empty);
  m.def("conceptual_from_data", &bmom::conceptual_from_data, py::arg("X_c"),
        py::arg("y_c"));
  m.def("conceptual_from_moments", &bmom::conceptual_from_moments,
        py::arg("xtx_c"), py::arg("beta_c"), py::arg("n_c"));
  m.def("stack", &bmom::stack, py::arg("problem"), py::arg("prior"));
  m.def("fit_with_prior", &bmom::fit_with_prior, py::arg("problem"),
        py::arg("prior"));
  m.def("posterior_mean_moment_form", &bmom::posterior_mean_moment_form,
        py::arg("problem"), py::arg("prior"));

  // ---- sampler ----
  py::class_<bmom::DrawConfig>(m, "DrawConfig")
      .def(py::init([](std::uint64_t seed, std::int64_t n_draws) {
             return bmom::DrawConfig{seed, n_draws};
           }),
           py::arg("seed"), py::arg("n_draws") = 10000)
      .def_readwrite("seed", &bmom::DrawConfig::seed)
      .def_readwrite("n_draws", &bmom::DrawConfig::n_draws);
  py::class_<bmom::JointDraws>(m, "JointDraws")
      .def_readonly("seed", &bmom::JointDraws::seed)
      .def_readonly("first", &bmom::JointDraws::first)
      .def_readonly("sigma2", &bmom::JointDraws::sigma2)
      .def_readonly("beta", &bmom::JointDraws::beta);
  py::class_<bmom::PredictiveDraws>(m, "PredictiveDraws")
      .def_readonly("seed", &bmom::PredictiveDraws::seed)
      .def_readonly("first", &bmom::PredictiveDraws::first)
      .def_readonly("y", &bmom::PredictiveDraws::y);
  py::class_<bmom::ComponentSummary>(m, "ComponentSummary")
      .def_readonly("mean", &bmom::ComponentSummary::mean)
      .def_readonly("variance", &bmom::ComponentSummary::variance)
      .def_readonly("m2", &bmom::ComponentSummary::m2)
      .def_readonly("m4", &bmom::ComponentSummary::m4)
      .def_readonly("kurtosis", &bmom::ComponentSummary::kurtosis)
      .def_readonly("excess", &bmom::ComponentSummary::excess)
      .def_readonly("lower", &bmom::ComponentSummary::lower)
      .def_readonly("upper", &bmom::ComponentSummary::upper);
  py::class_<bmom::DrawSummary>(m, "DrawSummary")
      .def_readonly("n", &bmom::DrawSummary::n)
      .def_readonly("level", &bmom::DrawSummary::level)
      .def_readonly("mean", &bmom::DrawSummary::mean)
      .def_readonly("covariance", &bmom::DrawSummary::covariance)
      .def_readonly("components", &bmom::DrawSummary::components);
  m.def("sigma2_from_uniform", &bmom::sigma2_from_uniform, py::arg("u"),
        py::arg("s2"));
  m.def("draw_joint", &bmom::draw_joint, py::arg("fit"), py::arg("config"));
  m.def("draw_joint_range", &bmom::draw_joint_range, py::arg("fit"),
        py::arg("seed"), py::arg("first"), py::arg("count"));
  m.def("draw_predictive", &bmom::draw_predictive, py::arg("fit"),
        py::arg("x_f"), py::arg("config"));
  m.def("draw_predictive_range", &bmom::draw_predictive_range, py::arg("fit"),
        py::arg("x_f"), py::arg("seed"), py::arg("first"), py::arg("count"));
  m.def("summarize_draws",
        py::overload_cast<const Eigen::MatrixXd&, double>(
            &bmom::summarize_draws),
        py::arg("draws"), py::arg("level") = 0.95);
  m.def("quantile_type7", &bmom::quantile_type7, py::arg("values"),
        py::arg("p"));

  // ---- Student-t benchmark ----
  py::class_<bmom::StudentPosterior>(m, "StudentPosterior")
      .def(py::init([](double center, double scale, double nu) {
             return bmom::StudentPosterior{center, scale, nu};
           }),
           py::arg("center"), py::arg("scale"), py::arg("nu"))
      .def_readonly("center", &bmom::StudentPosterior::center)
      .def_readonly("scale", &bmom::StudentPosterior::scale)
      .def_readonly("nu", &bmom::StudentPosterior::nu);
  py::class_<bmom::TMoments>(m, "TMoments")
      .def_readonly("second", &bmom::TMoments::second)
      .def_readonly("fourth", &bmom::TMoments::fourth)
      .def_readonly("excess", &bmom::TMoments::excess);
  py::class_<bmom::ComparisonReport>(m, "ComparisonReport")
      .def_readonly("target", &bmom::ComparisonReport::target)
      .def_readonly("level", &bmom::ComparisonReport::level)
      .def_readonly("nu", &bmom::ComparisonReport::nu)
      .def_readonly("center", &bmom::ComparisonReport::center)
      .def_readonly("s2", &bmom::ComparisonReport::s2)
      .def_readonly("marginal_factor", &bmom::ComparisonReport::marginal_factor)
      .def_readonly("laplace", &bmom::ComparisonReport::laplace)
      .def_readonly("laplace_interval",
                    &bmom::ComparisonReport::laplace_interval)
      .def_readonly("laplace_sigma2_mean",
                    &bmom::ComparisonReport::laplace_sigma2_mean)
      .def_readonly("laplace_variance",
                    &bmom::ComparisonReport::laplace_variance)
      .def_readonly("laplace_excess", &bmom::ComparisonReport::laplace_excess)
      .def_readonly("normal", &bmom::ComparisonReport::normal)
      .def_readonly("normal_interval", &bmom::ComparisonReport::normal_interval)
      .def_readonly("student", &bmom::ComparisonReport::student)
      .def_readonly("student_interval",
                    &bmom::ComparisonReport::student_interval)
      .def_readonly("student_sigma2_mean",
                    &bmom::ComparisonReport::student_sigma2_mean)
      .def_readonly("student_variance",
                    &bmom::ComparisonReport::student_variance)
      .def_readonly("student_excess", &bmom::ComparisonReport::student_excess)
      .def_readonly("width_ratio_laplace_normal",
                    &bmom::ComparisonReport::width_ratio_laplace_normal)
      .def_readonly("width_ratio_laplace_student",
                    &bmom::ComparisonReport::width_ratio_laplace_student);
  m.def("student_t_pdf", &bmom::student_t_pdf, py::arg("t"), py::arg("nu"));
  m.def("student_t_cdf", &bmom::student_t_cdf, py::arg("t"), py::arg("nu"));
  m.def("student_t_quantile", &bmom::student_t_quantile, py::arg("p"),
        py::arg("nu"));
  m.def("t_moments", &bmom::t_moments, py::arg("nu"));
  m.def("t_sigma2_mean", &bmom::t_sigma2_mean, py::arg("s2"), py::arg("nu"));
  m.def("t_interval", &bmom::t_interval, py::arg("post"), py::arg("level"));
  m.def("compare_mean", &bmom::compare_mean, py::arg("post"), py::arg("level"));
  m.def("compare_coefficient", &bmom::compare_coefficient, py::arg("fit"),
        py::arg("i"), py::arg("level"));

  // ---- file input ----
  py::class_<bmom::NamedColumn>(m, "NamedColumn")
      .def_readonly("name", &bmom::NamedColumn::name)
      .def_readonly("values", &bmom::NamedColumn::values);
  py::class_<bmom::LoadedData>(m, "LoadedData")
      .def_readonly("y", &bmom::LoadedData::y)
      .def_readonly("x", &bmom::LoadedData::x)
      .def_readonly("rows", &bmom::LoadedData::rows)
      .def_readonly("content_hash", &bmom::LoadedData::content_hash)
      .def_readonly("path", &bmom::LoadedData::path);
  m.def("load_csv", &bmom::load_csv, py::arg("path"), py::arg("y_name"),
        py::arg("x_names") = std::vector<std::string>{});

  // ---- end-to-end pipeline ----
  py::enum_<bmom::Command>(m, "Command")
      .value("mean", bmom::Command::mean)
      .value("regress", bmom::Command::regress)
      .value("ar", bmom::Command::ar)
      .value("predict", bmom::Command::predict)
      .value("errors", bmom::Command::errors)
      .value("sample", bmom::Command::sample)
      .value("compare", bmom::Command::compare)
      .value("density", bmom::Command::density);
  py::class_<AnalysisRequest>(m, "AnalysisRequest")
      .def(py::init<>())
      .def_readwrite("command", &AnalysisRequest::command)
      .def_readwrite("data_path", &AnalysisRequest::data_path)
      .def_readwrite("y_name", &AnalysisRequest::y_name)
      .def_readwrite("x_names", &AnalysisRequest::x_names)
      .def_readwrite("intercept", &AnalysisRequest::intercept)
      .def_readwrite("lags", &AnalysisRequest::lags)
      .def_readwrite("x_f", &AnalysisRequest::x_f)
      .def_readwrite("ell", &AnalysisRequest::ell)
      .def_readwrite("level", &AnalysisRequest::level)
      .def_readwrite("seed", &AnalysisRequest::seed)
      .def_readwrite("draws", &AnalysisRequest::draws)
      .def_readwrite("prior_path", &AnalysisRequest::prior_path)
      .def_readwrite("prior_y", &AnalysisRequest::prior_y)
      .def_readwrite("prior_rows", &AnalysisRequest::prior_rows)
      .def_readwrite("target", &AnalysisRequest::target)
      .def_readwrite("coef", &AnalysisRequest::coef)
      .def_readwrite("grid_points", &AnalysisRequest::grid_points);
  m.def(
      "analyze_json",
      [](const AnalysisRequest& request) {
        return bmom::render_json(bmom::run_analysis(request));
      },
      py::arg("request"),
      "Run the requested analysis and return the JSON report as a string.");
  m.def(
      "analyze_text",
      [](const AnalysisRequest& request) {
        return bmom::render_text(bmom::run_analysis(request));
      },
      py::arg("request"));
  m.def(
      "density_grid_tsv",
      [](const AnalysisRequest& request) {
        return bmom::render_grid_tsv(bmom::density_grid(request));
      },
      py::arg("request"));
  m.def("draws_csv", &bmom::draws_csv, py::arg("request"));
  m.def("format_double", &bmom::format_double, py::arg("value"));
}
