#pragma once

#include <Eigen/Dense>

#include "bmom/regression.hpp"

namespace bmom {

// Prior information expressed as data: rows a hypothetical sample would
// contain. `declared_rows` is the sample size the prior claims for
// degrees-of-freedom purposes; it equals the physical row count for a
// literal conceptual sample, but a moment-form prior is stored as a k-row
// square root while declaring its full n_c.
struct ConceptualSample {
  Eigen::MatrixXd X_c;
  Eigen::VectorXd y_c;
  int declared_rows = 0;

  Eigen::Index rows() const { return y_c.size(); }
  bool empty() const { return rows() == 0 && declared_rows == 0; }
};

// A literal conceptual sample: declared_rows = row count. Zero rows means
// "no prior information".
ConceptualSample conceptual_from_data(Eigen::MatrixXd X_c, Eigen::VectorXd y_c);

// Prior given as moments (X_c'X_c, beta_c, n_c): materialized as the upper
// Cholesky factor of the moment matrix with fitted values as y_c, so the
// stacked normal equations reproduce the moments exactly while n_c drives
// the degrees of freedom.
ConceptualSample conceptual_from_moments(const Eigen::MatrixXd& xtx_c,
                                         const Eigen::VectorXd& beta_c,
                                         int n_c);

// Stacks prior rows above the data rows and revalidates the combined
// design. An empty prior returns the problem unchanged.
RegressionProblem stack(const RegressionProblem& problem,
                        const ConceptualSample& prior);

// Fit of the stacked system with s2 = stacked RSS / (n + n_c - k), where
// n_c is the prior's declared row count. An empty prior reduces to
// fit_regression(problem) exactly.
LeastSquaresFit fit_with_prior(const RegressionProblem& problem,
                               const ConceptualSample& prior);

// The same posterior mean by the moment route:
// (X_c'X_c + X'X)^{-1} (X_c'y_c + X'y), solved through the normal equations
// rather than QR so the two paths check each other.
Eigen::VectorXd posterior_mean_moment_form(const RegressionProblem& problem,
                                           const ConceptualSample& prior);

}  // namespace bmom
