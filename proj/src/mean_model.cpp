#include "bmom/mean_model.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "bmom/errors.hpp"

namespace bmom {

namespace {

double checked_sigma2(const MeanPosterior& post, std::optional<double> sigma2) {
  if (!sigma2) return post.s2;
  if (!(*sigma2 > 0.0) || !std::isfinite(*sigma2))
    throw domain_error("conditioning sigma^2 must be positive, got " +
                       std::to_string(*sigma2));
  return *sigma2;
}

void check_obs_index(const MeanPosterior& post, int i) {
  if (i < 0 || i >= post.n)
    throw domain_error("observation index " + std::to_string(i) +
                       " outside [0," + std::to_string(post.n) + ")");
}

}  // namespace

MeanPosterior fit_mean(std::span<const double> values) {
  const int n = int(values.size());
  if (n < 2)
    throw insufficient_data_error(
        "fit_mean: need at least 2 observations to estimate a scale, got " +
        std::to_string(n));

  double sum = 0.0;
  double max_abs = 0.0;
  for (int i = 0; i < n; ++i) {
    if (!std::isfinite(values[i]))
      throw domain_error("fit_mean: non-finite value at index " +
                         std::to_string(i));
    sum += values[i];
    max_abs = std::max(max_abs, std::fabs(values[i]));
  }
  const double ybar = sum / n;

  std::vector<double> residuals(values.size());
  double rss = 0.0;
  double max_res = 0.0;
  for (int i = 0; i < n; ++i) {
    residuals[i] = values[i] - ybar;
    rss += residuals[i] * residuals[i];
    max_res = std::max(max_res, std::fabs(residuals[i]));
  }

  // all-equal samples leave only rounding noise in the residuals
  const double eps = std::numeric_limits<double>::epsilon();
  if (max_res <= 16.0 * n * eps * max_abs)
    throw zero_variance_error(
        "fit_mean: all " + std::to_string(n) + " values equal " +
            std::to_string(ybar) + "; no spread to infer a scale from",
        {ybar}, residuals);

  return {ybar, rss / (n - 1), n, std::move(residuals)};
}

MeanMaxentSet mean_maxent(const MeanPosterior& post,
                          std::optional<double> sigma2) {
  const double s2c = checked_sigma2(post, sigma2);
  const double n = post.n;
  const double predictive_factor = 1.0 + 1.0 / n;
  return {
      NormalDist(post.ybar, s2c / n),
      ScaledExponentialDist(post.s2),
      laplace_from_mean_var(post.ybar, post.s2 / n),
      NormalDist(post.ybar, predictive_factor * s2c),
      laplace_from_mean_var(post.ybar, predictive_factor * post.s2),
      s2c,
  };
}

IntervalEstimate theta_interval(const MeanPosterior& post, double level) {
  return central_interval(mean_maxent(post).theta_marginal, level);
}

ScaledExponentialDist positive_mean_density(const MeanPosterior& post) {
  if (!(post.ybar > 0.0))
    throw positivity_error(
        "positive_mean_density: posterior mean " + std::to_string(post.ybar) +
        " is not positive, so a positive-support density does not apply");
  return ScaledExponentialDist(post.ybar);
}

LaplaceDist mean_error_marginal(const MeanPosterior& post, int i) {
  check_obs_index(post, i);
  return laplace_from_mean_var(post.residuals[size_t(i)], post.s2 / post.n);
}

NormalDist mean_error_conditional(const MeanPosterior& post, int i,
                                  std::optional<double> sigma2) {
  check_obs_index(post, i);
  const double s2c = checked_sigma2(post, sigma2);
  return NormalDist(post.residuals[size_t(i)], s2c / post.n);
}

}  // namespace bmom
