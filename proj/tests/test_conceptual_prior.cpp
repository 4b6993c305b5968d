#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <vector>

#include "bmom/conceptual_prior.hpp"
#include "bmom/errors.hpp"
#include "bmom/regression.hpp"

using namespace bmom;

namespace {

bool close(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

RegressionProblem fixture_problem() {
  return build_design(std::vector<double>{1.0, 2.0, 4.0},
                      {{0.0, 1.0, 2.0}}, {"x1"}, true);
}

ConceptualSample fixture_as_prior() {
  const RegressionProblem p = fixture_problem();
  return conceptual_from_data(p.X, p.y);
}

}  // namespace

TEST_CASE("an empty prior changes nothing") {
  const RegressionProblem p = fixture_problem();
  const ConceptualSample none = conceptual_from_data(
      Eigen::MatrixXd(0, 2), Eigen::VectorXd(0));
  CHECK(none.empty());
  const RegressionProblem stacked = stack(p, none);
  CHECK(stacked.n() == 3);
  const LeastSquaresFit with = fit_with_prior(p, none);
  const LeastSquaresFit without = fit_regression(p);
  CHECK(with.beta == without.beta);
  CHECK(with.s2 == without.s2);
  CHECK(with.dof == without.dof);
  CHECK(with.residuals == without.residuals);
  CHECK(with.xtx_inv == without.xtx_inv);
}

TEST_CASE("stacking places prior rows first") {
  const RegressionProblem p = fixture_problem();
  const ConceptualSample prior = fixture_as_prior();
  const RegressionProblem stacked = stack(p, prior);
  CHECK(stacked.n() == 6);
  CHECK(stacked.k() == 2);
  CHECK(stacked.y(0) == 1.0);
  CHECK(stacked.y(3) == 1.0);
  CHECK(stacked.X(2, 1) == 2.0);
  CHECK(stacked.X(5, 1) == 2.0);
}

TEST_CASE("a duplicated-data prior shrinks sigma2 but not beta") {
  const RegressionProblem p = fixture_problem();
  const LeastSquaresFit fit = fit_with_prior(p, fixture_as_prior());
  CHECK(close(fit.beta(0), 5.0 / 6.0, 1e-12));
  CHECK(close(fit.beta(1), 1.5, 1e-12));
  // stacked RSS is 2 u'u = 1/3 over n + n_c - k = 4 degrees of freedom
  CHECK(close(fit.s2, 1.0 / 12.0, 1e-12));
  CHECK(fit.dof == 4);
}

TEST_CASE("prior dimension mismatches are rejected") {
  const RegressionProblem p = fixture_problem();
  Eigen::MatrixXd wrong(2, 3);
  wrong.setOnes();
  Eigen::VectorXd y_c(2);
  y_c << 1.0, 2.0;
  CHECK_THROWS_AS(stack(p, conceptual_from_data(wrong, y_c)),
                  dimension_error);
  Eigen::MatrixXd rows(3, 2);
  rows.setOnes();
  CHECK_THROWS_AS(conceptual_from_data(rows, y_c), dimension_error);
}

TEST_CASE("the moment route and the stacked route agree") {
  const RegressionProblem p = fixture_problem();
  const ConceptualSample prior = fixture_as_prior();
  const LeastSquaresFit fit = fit_with_prior(p, prior);
  const Eigen::VectorXd direct = posterior_mean_moment_form(p, prior);
  for (int j = 0; j < 2; ++j) CHECK(close(fit.beta(j), direct(j), 1e-10));

  // and on a randomized prior
  std::mt19937_64 gen(11);
  std::normal_distribution<double> noise(0.0, 1.0);
  Eigen::MatrixXd x_c(5, 2);
  Eigen::VectorXd y_c(5);
  for (int i = 0; i < 5; ++i) {
    x_c(i, 0) = 1.0;
    x_c(i, 1) = noise(gen);
    y_c(i) = noise(gen);
  }
  const ConceptualSample random_prior = conceptual_from_data(x_c, y_c);
  const LeastSquaresFit rfit = fit_with_prior(p, random_prior);
  const Eigen::VectorXd rdirect = posterior_mean_moment_form(p, random_prior);
  for (int j = 0; j < 2; ++j) CHECK(close(rfit.beta(j), rdirect(j), 1e-10));
  CHECK(rfit.dof == 3 + 5 - 2);
}

TEST_CASE("a prior given as moments reproduces them") {
  Eigen::MatrixXd xtx_c(2, 2);
  xtx_c << 4.0, 1.0, 1.0, 2.0;
  Eigen::VectorXd beta_c(2);
  beta_c << 1.0, -0.5;
  const ConceptualSample prior = conceptual_from_moments(xtx_c, beta_c, 7);
  CHECK(prior.declared_rows == 7);
  CHECK(prior.rows() == 2);  // stored as a k-row square root
  // the square root carries the moment matrix exactly
  const Eigen::MatrixXd back = prior.X_c.transpose() * prior.X_c;
  CHECK(close(back(0, 0), 4.0, 1e-12));
  CHECK(close(back(0, 1), 1.0, 1e-12));
  CHECK(close(back(1, 1), 2.0, 1e-12));
  // and X_c' y_c = X_c'X_c beta_c
  const Eigen::VectorXd cross = prior.X_c.transpose() * prior.y_c;
  const Eigen::VectorXd expect = xtx_c * beta_c;
  CHECK(close(cross(0), expect(0), 1e-12));
  CHECK(close(cross(1), expect(1), 1e-12));

  // the posterior mean is the precision-weighted blend, checked directly
  const RegressionProblem p = fixture_problem();
  const LeastSquaresFit fit = fit_with_prior(p, prior);
  const Eigen::MatrixXd xtx = p.X.transpose() * p.X;
  const Eigen::VectorXd blended =
      (xtx_c + xtx).ldlt().solve(xtx_c * beta_c + p.X.transpose() * p.y);
  for (int j = 0; j < 2; ++j) CHECK(close(fit.beta(j), blended(j), 1e-10));
  // declared size drives the degrees of freedom
  CHECK(fit.dof == 3 + 7 - 2);

  Eigen::MatrixXd asym = xtx_c;
  asym(0, 1) = 0.9;
  CHECK_THROWS_AS(conceptual_from_moments(asym, beta_c, 3), domain_error);
  Eigen::MatrixXd indef(2, 2);
  indef << 1.0, 2.0, 2.0, 1.0;
  CHECK_THROWS_AS(conceptual_from_moments(indef, beta_c, 3), domain_error);
  CHECK_THROWS_AS(conceptual_from_moments(xtx_c, beta_c, 0), domain_error);
}

TEST_CASE("declared prior size only rescales sigma2") {
  Eigen::MatrixXd xtx_c(2, 2);
  xtx_c << 2.0, 0.0, 0.0, 2.0;
  Eigen::VectorXd beta_c(2);
  beta_c << 1.0, 1.0;
  const RegressionProblem p = fixture_problem();
  const LeastSquaresFit small =
      fit_with_prior(p, conceptual_from_moments(xtx_c, beta_c, 1));
  const LeastSquaresFit large =
      fit_with_prior(p, conceptual_from_moments(xtx_c, beta_c, 21));
  CHECK(small.beta == large.beta);
  CHECK(small.dof == 2);
  CHECK(large.dof == 22);
  // same stacked residual sum, more claimed observations, smaller s2
  CHECK(close(large.s2 * 22.0, small.s2 * 2.0, 1e-12));
}

TEST_CASE("an overwhelming prior pins the posterior mean to its own") {
  const RegressionProblem p = fixture_problem();
  Eigen::MatrixXd xtx_c(2, 2);
  xtx_c << 3.0, 1.0, 1.0, 5.0;
  Eigen::VectorXd beta_c(2);
  beta_c << -2.0, 0.7;
  double previous_gap = 1e300;
  for (double t : {1.0, 1e2, 1e6}) {
    const ConceptualSample prior =
        conceptual_from_moments(t * xtx_c, beta_c, 4);
    const Eigen::VectorXd mean = posterior_mean_moment_form(p, prior);
    const double gap = (mean - beta_c).norm();
    CHECK(gap < previous_gap);
    previous_gap = gap;
  }
  CHECK(previous_gap < 1e-5);
}

TEST_CASE("permuting prior rows changes nothing") {
  const RegressionProblem p = fixture_problem();
  Eigen::MatrixXd x_c(3, 2);
  x_c << 1.0, 4.0, 1.0, -2.0, 1.0, 0.5;
  Eigen::VectorXd y_c(3);
  y_c << 2.0, 0.0, 1.0;
  Eigen::MatrixXd x_p(3, 2);
  x_p << 1.0, 0.5, 1.0, 4.0, 1.0, -2.0;
  Eigen::VectorXd y_p(3);
  y_p << 1.0, 2.0, 0.0;
  const LeastSquaresFit a = fit_with_prior(p, conceptual_from_data(x_c, y_c));
  const LeastSquaresFit b = fit_with_prior(p, conceptual_from_data(x_p, y_p));
  for (int j = 0; j < 2; ++j) CHECK(close(a.beta(j), b.beta(j), 1e-12));
  CHECK(close(a.s2, b.s2, 1e-12));
  CHECK(a.dof == b.dof);
}
