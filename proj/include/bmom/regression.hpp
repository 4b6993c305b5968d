#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bmom/densities.hpp"

namespace bmom {

// A validated design: y against named columns of X, n > k >= 1, full
// column rank. When `intercept` is set the first column is all ones and is
// named "const".
struct RegressionProblem {
  Eigen::VectorXd y;
  Eigen::MatrixXd X;
  std::vector<std::string> names;
  bool intercept = false;

  Eigen::Index n() const { return y.size(); }
  Eigen::Index k() const { return X.cols(); }
};

// Least-squares fit and the moment quantities downstream densities need:
// posterior mean beta, residuals, s2 = RSS / dof with dof = n - k, the
// inverse moment matrix, and leverage h_i = x_i' (X'X)^{-1} x_i.
struct LeastSquaresFit {
  RegressionProblem problem;
  Eigen::VectorXd beta;
  Eigen::VectorXd residuals;
  double s2 = 0.0;
  int dof = 0;
  Eigen::MatrixXd xtx_inv;
  Eigen::VectorXd leverage;
};

// A future observation at regressor vector x_f: point prediction, the
// variance inflation 1 + x_f'(X'X)^{-1}x_f, s_e2 = inflation * s2, and the
// double-exponential predictive marginal built from them.
struct PredictivePoint {
  Eigen::VectorXd x_f;
  double y_hat;
  double inflation;
  double s_e2;
  LaplaceDist marginal;
};

// eta = ell' beta: posterior mean, marginal variance factor
// s_eta2 = ell'(X'X)^{-1} ell * s2, and the double-exponential marginal.
struct LinearCombination {
  Eigen::VectorXd ell;
  double value;
  double s_eta2;
  LaplaceDist marginal;
};

// Densities for the realized error of observation i: conditional
// N(residual_i, h_i sigma2) and marginal Laplace(residual_i, sqrt(h_i s2/2)).
struct RealizedErrorDensity {
  int index;
  double residual;
  double leverage;
  NormalDist conditional;
  LaplaceDist marginal;
  double conditioning_sigma2;
};

// Idempotent-projection health of a fit: sum of leverages (must equal k),
// worst residual/regressor inner product, and the agreement between the two
// leverage computations (QR route vs explicit quadratic form).
struct ProjectionDiagnostics {
  double leverage_sum;
  double max_abs_orthogonality;
  double max_leverage_gap;
};

// Assembles a problem from parallel columns, prepending a ones column named
// "const" when intercept is set. Validates lengths, finiteness, name
// uniqueness, n > k, k <= 100, and full column rank.
RegressionProblem build_design(std::span<const double> y,
                               const std::vector<std::vector<double>>& x_columns,
                               const std::vector<std::string>& names,
                               bool intercept);

// Autoregressive design of order `lags` from a single series: row t regresses
// series[t] on (series[t-1], ..., series[t-lags]), t = lags .. len-1, columns
// named "lag1".."lagN" after the optional intercept.
RegressionProblem build_ar_design(std::span<const double> series, int lags,
                                  bool intercept);

// Validates an already-assembled design (same checks as build_design).
RegressionProblem make_problem(Eigen::VectorXd y, Eigen::MatrixXd X,
                               std::vector<std::string> names, bool intercept);

// Column-pivoted QR least squares. Throws ill_posed_design_error on rank
// loss (naming the offending columns) and zero_variance_error on an exact
// fit (the thrown object carries beta and the residuals).
LeastSquaresFit fit_regression(const RegressionProblem& problem);

// Marginal density of coefficient i (0-based):
// Laplace(beta_i, sqrt((X'X)^{-1}_ii s2 / 2)).
LaplaceDist coefficient_marginal(const LeastSquaresFit& fit, int i);

IntervalEstimate coefficient_interval(const LeastSquaresFit& fit, int i,
                                      double level);

LinearCombination linear_combination_marginal(const LeastSquaresFit& fit,
                                              const Eigen::VectorXd& ell);

PredictivePoint predictive_point(const LeastSquaresFit& fit,
                                 const Eigen::VectorXd& x_f);

// Predictive density conditional on sigma^2 (default s2):
// N(y_hat, inflation * sigma2).
NormalDist predictive_conditional(const LeastSquaresFit& fit,
                                  const Eigen::VectorXd& x_f,
                                  std::optional<double> sigma2 = std::nullopt);

RealizedErrorDensity realized_error_marginal(
    const LeastSquaresFit& fit, int i,
    std::optional<double> sigma2 = std::nullopt);

// Maximum-entropy density for ell' beta known to be positive: exponential
// with mean ell' beta. Throws positivity_error when the mean is not.
ScaledExponentialDist positive_combination_density(const LeastSquaresFit& fit,
                                                   const Eigen::VectorXd& ell);

// Posterior density of sigma^2: exponential with mean s2.
ScaledExponentialDist sigma2_density(const LeastSquaresFit& fit);

ProjectionDiagnostics projection_diagnostics(const LeastSquaresFit& fit);

}  // namespace bmom
