#include "bmom/conceptual_prior.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "bmom/errors.hpp"

namespace bmom {

namespace {

void check_finite(const Eigen::MatrixXd& m, const char* what) {
  if (!m.allFinite())
    throw domain_error(std::string(what) + " has non-finite entries");
}

}  // namespace

ConceptualSample conceptual_from_data(Eigen::MatrixXd X_c,
                                      Eigen::VectorXd y_c) {
  if (X_c.rows() != y_c.size())
    throw dimension_error("conceptual sample has " +
                          std::to_string(X_c.rows()) + " design rows but " +
                          std::to_string(y_c.size()) + " responses");
  check_finite(X_c, "conceptual design");
  check_finite(y_c, "conceptual response");
  const int rows = int(y_c.size());
  return {std::move(X_c), std::move(y_c), rows};
}

ConceptualSample conceptual_from_moments(const Eigen::MatrixXd& xtx_c,
                                         const Eigen::VectorXd& beta_c,
                                         int n_c) {
  const Eigen::Index k = xtx_c.rows();
  if (xtx_c.cols() != k)
    throw dimension_error("moment matrix must be square, got " +
                          std::to_string(xtx_c.rows()) + "x" +
                          std::to_string(xtx_c.cols()));
  if (beta_c.size() != k)
    throw dimension_error("prior coefficient vector has length " +
                          std::to_string(beta_c.size()) +
                          " but the moment matrix is " + std::to_string(k) +
                          "x" + std::to_string(k));
  check_finite(xtx_c, "prior moment matrix");
  check_finite(beta_c, "prior coefficients");
  if (n_c < 1)
    throw domain_error("declared conceptual sample size must be >= 1, got " +
                       std::to_string(n_c));
  const double asym = (xtx_c - xtx_c.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * std::max(1.0, xtx_c.cwiseAbs().maxCoeff()))
    throw domain_error("prior moment matrix is not symmetric");

  Eigen::LLT<Eigen::MatrixXd> llt(0.5 * (xtx_c + xtx_c.transpose()));
  if (llt.info() != Eigen::Success)
    throw domain_error("prior moment matrix is not positive definite");
  // upper factor U satisfies U'U = X_c'X_c, a k-row stand-in for the sample
  Eigen::MatrixXd X_c = llt.matrixU();
  Eigen::VectorXd y_c = X_c * beta_c;
  return {std::move(X_c), std::move(y_c), n_c};
}

RegressionProblem stack(const RegressionProblem& problem,
                        const ConceptualSample& prior) {
  if (prior.rows() == 0) return problem;
  const Eigen::Index k = problem.k();
  if (prior.X_c.cols() != k)
    throw dimension_error("conceptual design has " +
                          std::to_string(prior.X_c.cols()) +
                          " columns but the data design has " +
                          std::to_string(k));
  check_finite(prior.X_c, "conceptual design");
  check_finite(prior.y_c, "conceptual response");

  const Eigen::Index n = problem.n();
  const Eigen::Index rows = prior.rows();
  Eigen::MatrixXd W(rows + n, k);
  Eigen::VectorXd w(rows + n);
  W.topRows(rows) = prior.X_c;
  W.bottomRows(n) = problem.X;
  w.head(rows) = prior.y_c;
  w.tail(n) = problem.y;
  return make_problem(std::move(w), std::move(W), problem.names,
                      problem.intercept);
}

LeastSquaresFit fit_with_prior(const RegressionProblem& problem,
                               const ConceptualSample& prior) {
  if (prior.empty()) return fit_regression(problem);
  if (prior.rows() == 0)
    throw dimension_error(
        "prior declares " + std::to_string(prior.declared_rows) +
        " rows but carries none; build it with conceptual_from_moments");

  const int dof = int(problem.n()) + prior.declared_rows - int(problem.k());
  if (dof < 1)
    throw insufficient_data_error(
        "combined degrees of freedom n + n_c - k = " + std::to_string(dof) +
        " must be positive");

  LeastSquaresFit fit = fit_regression(stack(problem, prior));
  const double rss = fit.residuals.squaredNorm();
  fit.dof = dof;
  fit.s2 = rss / dof;
  return fit;
}

Eigen::VectorXd posterior_mean_moment_form(const RegressionProblem& problem,
                                           const ConceptualSample& prior) {
  if (prior.rows() == 0)
    throw dimension_error(
        "moment-form posterior mean needs a non-empty conceptual sample");
  const Eigen::Index k = problem.k();
  if (prior.X_c.cols() != k)
    throw dimension_error("conceptual design has " +
                          std::to_string(prior.X_c.cols()) +
                          " columns but the data design has " +
                          std::to_string(k));

  // the prior must identify its own coefficients
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(prior.X_c);
  const Eigen::VectorXd diag =
      qr.matrixR().topLeftCorner(k, k).diagonal().cwiseAbs();
  const double thresh = double(std::max(prior.rows(), k)) *
                        std::numeric_limits<double>::epsilon() * diag(0);
  Eigen::Index rank = 0;
  while (rank < k && diag(rank) > thresh) ++rank;
  if (rank < k) {
    std::vector<std::string> offending;
    const auto& idx = qr.colsPermutation().indices();
    for (Eigen::Index j = rank; j < k; ++j)
      offending.push_back(problem.names[size_t(idx(j))]);
    std::string msg = "conceptual design is rank deficient (rank " +
                      std::to_string(rank) + " of " + std::to_string(k) +
                      "); dependent columns:";
    for (const auto& name : offending) msg += " " + name;
    throw ill_posed_design_error(msg, std::move(offending));
  }

  // normal equations on combined moments; deliberately not the QR route
  const Eigen::MatrixXd lhs = prior.X_c.transpose() * prior.X_c +
                              problem.X.transpose() * problem.X;
  const Eigen::VectorXd rhs = prior.X_c.transpose() * prior.y_c +
                              problem.X.transpose() * problem.y;
  Eigen::LDLT<Eigen::MatrixXd> ldlt(lhs);
  if (ldlt.info() != Eigen::Success)
    throw numeric_error("combined moment matrix could not be factorized");
  return ldlt.solve(rhs);
}

}  // namespace bmom
