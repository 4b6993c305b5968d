#include "bmom/regression.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "bmom/errors.hpp"

namespace bmom {

namespace {

constexpr int kMaxColumns = 100;  // keeps reports and moment matrices small

double checked_sigma2(const LeastSquaresFit& fit, std::optional<double> sigma2) {
  if (!sigma2) return fit.s2;
  if (!(*sigma2 > 0.0) || !std::isfinite(*sigma2))
    throw domain_error("conditioning sigma^2 must be positive, got " +
                       std::to_string(*sigma2));
  return *sigma2;
}

void check_vector(const Eigen::VectorXd& v, Eigen::Index want,
                  const char* what) {
  if (v.size() != want)
    throw dimension_error(std::string(what) + " has length " +
                          std::to_string(v.size()) + ", design has k = " +
                          std::to_string(want) + " columns");
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!std::isfinite(v[i]))
      throw domain_error(std::string(what) + " has a non-finite entry at " +
                         std::to_string(i));
}

std::vector<double> to_std(const Eigen::VectorXd& v) {
  return {v.data(), v.data() + v.size()};
}

}  // namespace

RegressionProblem make_problem(Eigen::VectorXd y, Eigen::MatrixXd X,
                               std::vector<std::string> names, bool intercept) {
  const Eigen::Index n = y.size();
  const Eigen::Index k = X.cols();

  if (X.rows() != n)
    throw dimension_error("design has " + std::to_string(X.rows()) +
                          " rows but y has " + std::to_string(n));
  if (k < 1) throw domain_error("design has no columns");
  if (k > kMaxColumns)
    throw domain_error("design has " + std::to_string(k) +
                       " columns; the supported maximum is " +
                       std::to_string(kMaxColumns));
  if (Eigen::Index(names.size()) != k)
    throw dimension_error("got " + std::to_string(names.size()) +
                          " column names for " + std::to_string(k) +
                          " columns");
  {
    std::set<std::string> seen;
    for (const auto& name : names) {
      if (name.empty()) throw domain_error("column names must be non-empty");
      if (!seen.insert(name).second)
        throw domain_error("duplicate column name '" + name + "'");
    }
  }
  for (Eigen::Index i = 0; i < n; ++i)
    if (!std::isfinite(y[i]))
      throw domain_error("y has a non-finite value at row " +
                         std::to_string(i));
  for (Eigen::Index j = 0; j < k; ++j)
    for (Eigen::Index i = 0; i < n; ++i)
      if (!std::isfinite(X(i, j)))
        throw domain_error("column '" + names[size_t(j)] +
                           "' has a non-finite value at row " +
                           std::to_string(i));
  if (n <= k)
    throw insufficient_data_error(
        "need more observations than columns to estimate a scale: n = " +
        std::to_string(n) + ", k = " + std::to_string(k));

  // rank screen; fit_regression repeats this on its own factorization
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  const Eigen::VectorXd diag =
      qr.matrixR().topLeftCorner(k, k).diagonal().cwiseAbs();
  const double thresh = double(std::max(n, k)) *
                        std::numeric_limits<double>::epsilon() * diag(0);
  Eigen::Index rank = 0;
  while (rank < k && diag(rank) > thresh) ++rank;
  if (rank < k) {
    std::vector<std::string> offending;
    const auto& idx = qr.colsPermutation().indices();
    for (Eigen::Index j = rank; j < k; ++j)
      offending.push_back(names[size_t(idx(j))]);
    std::string msg = "design is rank deficient (rank " +
                      std::to_string(rank) + " of " + std::to_string(k) +
                      "); dependent columns:";
    for (const auto& name : offending) msg += " " + name;
    throw ill_posed_design_error(msg, std::move(offending));
  }

  return {std::move(y), std::move(X), std::move(names), intercept};
}

RegressionProblem build_design(std::span<const double> y,
                               const std::vector<std::vector<double>>& x_columns,
                               const std::vector<std::string>& names,
                               bool intercept) {
  const Eigen::Index n = Eigen::Index(y.size());
  if (names.size() != x_columns.size())
    throw dimension_error("got " + std::to_string(names.size()) +
                          " names for " + std::to_string(x_columns.size()) +
                          " regressor columns");
  const Eigen::Index k = Eigen::Index(x_columns.size()) + (intercept ? 1 : 0);
  if (k < 1)
    throw domain_error("no regressors: pass at least one column or an intercept");

  Eigen::MatrixXd X(n, k);
  std::vector<std::string> all_names;
  Eigen::Index col = 0;
  if (intercept) {
    X.col(0).setOnes();
    all_names.emplace_back("const");
    col = 1;
  }
  for (size_t j = 0; j < x_columns.size(); ++j) {
    if (Eigen::Index(x_columns[j].size()) != n)
      throw dimension_error("column '" + names[j] + "' has " +
                            std::to_string(x_columns[j].size()) +
                            " values but y has " + std::to_string(n));
    X.col(col) = Eigen::Map<const Eigen::VectorXd>(x_columns[j].data(), n);
    all_names.push_back(names[j]);
    ++col;
  }

  Eigen::VectorXd yv = Eigen::Map<const Eigen::VectorXd>(y.data(), n);
  return make_problem(std::move(yv), std::move(X), std::move(all_names),
                      intercept);
}

RegressionProblem build_ar_design(std::span<const double> series, int lags,
                                  bool intercept) {
  if (lags < 1)
    throw domain_error("autoregression order must be >= 1, got " +
                       std::to_string(lags));
  const Eigen::Index len = Eigen::Index(series.size());
  const Eigen::Index rows = len - lags;
  const Eigen::Index k = lags + (intercept ? 1 : 0);
  if (rows <= k)
    throw insufficient_data_error(
        "series of length " + std::to_string(len) + " leaves " +
        std::to_string(std::max<Eigen::Index>(rows, 0)) +
        " usable rows after dropping " + std::to_string(lags) +
        " lead values; need more than k = " + std::to_string(k));
  for (Eigen::Index t = 0; t < len; ++t)
    if (!std::isfinite(series[size_t(t)]))
      throw domain_error("series has a non-finite value at index " +
                         std::to_string(t));

  Eigen::VectorXd y(rows);
  Eigen::MatrixXd X(rows, k);
  std::vector<std::string> names;
  if (intercept) names.emplace_back("const");
  for (int j = 1; j <= lags; ++j) names.push_back("lag" + std::to_string(j));
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Eigen::Index t = r + lags;
    y[r] = series[size_t(t)];
    Eigen::Index col = 0;
    if (intercept) X(r, col++) = 1.0;
    for (int j = 1; j <= lags; ++j) X(r, col++) = series[size_t(t - j)];
  }
  return make_problem(std::move(y), std::move(X), std::move(names), intercept);
}

LeastSquaresFit fit_regression(const RegressionProblem& problem) {
  const Eigen::Index n = problem.n();
  const Eigen::Index k = problem.k();
  const double eps = std::numeric_limits<double>::epsilon();

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(problem.X);
  const Eigen::MatrixXd R = qr.matrixR().topLeftCorner(k, k);
  const auto& perm = qr.colsPermutation();

  const Eigen::VectorXd diag = R.diagonal().cwiseAbs();
  const double thresh = double(std::max(n, k)) * eps * diag(0);
  Eigen::Index rank = 0;
  while (rank < k && diag(rank) > thresh) ++rank;
  if (rank < k) {
    std::vector<std::string> offending;
    for (Eigen::Index j = rank; j < k; ++j)
      offending.push_back(problem.names[size_t(perm.indices()(j))]);
    std::string msg = "factorization lost rank (" + std::to_string(rank) +
                      " of " + std::to_string(k) + "); dependent columns:";
    for (const auto& name : offending) msg += " " + name;
    throw ill_posed_design_error(msg, std::move(offending));
  }

  const Eigen::VectorXd qty = qr.householderQ().transpose() * problem.y;
  const Eigen::VectorXd beta_perm =
      R.triangularView<Eigen::Upper>().solve(qty.head(k));
  const Eigen::VectorXd beta = perm * beta_perm;
  const Eigen::VectorXd residuals = problem.y - problem.X * beta;

  const double rss = residuals.squaredNorm();
  if (residuals.norm() <= double(std::max(n, k)) * eps * problem.y.norm())
    throw zero_variance_error(
        "fit is exact: residuals vanish, so no scale can be inferred",
        to_std(beta), to_std(residuals));

  const int dof = int(n - k);
  const double s2 = rss / dof;

  const Eigen::MatrixXd r_inv = R.triangularView<Eigen::Upper>().solve(
      Eigen::MatrixXd::Identity(k, k));
  Eigen::MatrixXd inv_perm = r_inv * r_inv.transpose();
  Eigen::MatrixXd xtx_inv = perm * inv_perm * perm.transpose();
  xtx_inv = 0.5 * (xtx_inv + xtx_inv.transpose()).eval();

  const Eigen::MatrixXd xp = problem.X * perm;
  const Eigen::MatrixXd t =
      R.triangularView<Eigen::Upper>().transpose().solve(xp.transpose());
  Eigen::VectorXd leverage(n);
  for (Eigen::Index i = 0; i < n; ++i) leverage[i] = t.col(i).squaredNorm();

  return {problem,  beta, residuals, s2, dof, std::move(xtx_inv),
          std::move(leverage)};
}

LaplaceDist coefficient_marginal(const LeastSquaresFit& fit, int i) {
  if (i < 0 || i >= fit.problem.k())
    throw domain_error("coefficient index " + std::to_string(i) +
                       " outside [0," + std::to_string(fit.problem.k()) + ")");
  return laplace_from_mean_var(fit.beta[i], fit.xtx_inv(i, i) * fit.s2);
}

IntervalEstimate coefficient_interval(const LeastSquaresFit& fit, int i,
                                      double level) {
  return central_interval(coefficient_marginal(fit, i), level);
}

LinearCombination linear_combination_marginal(const LeastSquaresFit& fit,
                                              const Eigen::VectorXd& ell) {
  check_vector(ell, fit.problem.k(), "combination vector");
  if (ell.isZero(0.0))
    throw domain_error("combination vector is identically zero");
  const double value = ell.dot(fit.beta);
  const double qf = ell.dot(fit.xtx_inv * ell);
  if (!(qf > 0.0))
    throw numeric_error("combination quadratic form came out non-positive");
  const double s_eta2 = qf * fit.s2;
  return {ell, value, s_eta2, laplace_from_mean_var(value, s_eta2)};
}

PredictivePoint predictive_point(const LeastSquaresFit& fit,
                                 const Eigen::VectorXd& x_f) {
  check_vector(x_f, fit.problem.k(), "prediction point");
  const double y_hat = x_f.dot(fit.beta);
  const double inflation = 1.0 + x_f.dot(fit.xtx_inv * x_f);
  const double s_e2 = inflation * fit.s2;
  return {x_f, y_hat, inflation, s_e2, laplace_from_mean_var(y_hat, s_e2)};
}

NormalDist predictive_conditional(const LeastSquaresFit& fit,
                                  const Eigen::VectorXd& x_f,
                                  std::optional<double> sigma2) {
  const PredictivePoint pp = predictive_point(fit, x_f);
  return NormalDist(pp.y_hat, pp.inflation * checked_sigma2(fit, sigma2));
}

RealizedErrorDensity realized_error_marginal(const LeastSquaresFit& fit, int i,
                                             std::optional<double> sigma2) {
  const Eigen::Index n = fit.problem.n();
  if (i < 0 || i >= n)
    throw domain_error("observation index " + std::to_string(i) +
                       " outside [0," + std::to_string(n) + ")");
  const double h = fit.leverage[i];
  if (!(h > 0.0))
    throw domain_error("observation " + std::to_string(i) +
                       " has zero leverage (all-zero regressor row); its "
                       "realized-error density is degenerate");
  const double s2c = checked_sigma2(fit, sigma2);
  return {i,
          fit.residuals[i],
          h,
          NormalDist(fit.residuals[i], h * s2c),
          laplace_from_mean_var(fit.residuals[i], h * fit.s2),
          s2c};
}

ScaledExponentialDist positive_combination_density(const LeastSquaresFit& fit,
                                                   const Eigen::VectorXd& ell) {
  check_vector(ell, fit.problem.k(), "combination vector");
  if (ell.isZero(0.0))
    throw domain_error("combination vector is identically zero");
  const double value = ell.dot(fit.beta);
  if (!(value > 0.0))
    throw positivity_error(
        "positive_combination_density: posterior mean " +
        std::to_string(value) +
        " is not positive, so a positive-support density does not apply");
  return ScaledExponentialDist(value);
}

ScaledExponentialDist sigma2_density(const LeastSquaresFit& fit) {
  return ScaledExponentialDist(fit.s2);
}

ProjectionDiagnostics projection_diagnostics(const LeastSquaresFit& fit) {
  const double leverage_sum = fit.leverage.sum();
  const double max_orth =
      (fit.problem.X.transpose() * fit.residuals).cwiseAbs().maxCoeff();

  // recompute leverage through the inverse moment matrix; a projection that
  // stopped being idempotent shows up here
  const Eigen::VectorXd again = (fit.problem.X * fit.xtx_inv)
                                    .cwiseProduct(fit.problem.X)
                                    .rowwise()
                                    .sum();
  const double gap = (again - fit.leverage).cwiseAbs().maxCoeff();
  if (gap > 1e-8 * std::max(1.0, fit.leverage.maxCoeff()))
    throw numeric_error(
        "projection check failed: leverage recomputation differs by " +
        std::to_string(gap));
  return {leverage_sum, max_orth, gap};
}

}  // namespace bmom
