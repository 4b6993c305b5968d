#pragma once

#include <optional>
#include <span>
#include <vector>

#include "bmom/densities.hpp"

namespace bmom {

// Moment summary of a univariate sample under the zero-conditional-mean
// assumption: the posterior mean of theta is ybar and the posterior mean
// of sigma^2 is s2 = sum of squared residuals / (n - 1), with no
// distributional input beyond the moment constraints.
struct MeanPosterior {
  double ybar;
  double s2;
  int n;
  std::vector<double> residuals;
};

// The maximum-entropy densities implied by the moment constraints:
// theta given sigma^2 is normal, sigma^2 is exponential with mean s2, and
// integrating the normal over the exponential gives double-exponential
// marginals for theta and for a future observation.
struct MeanMaxentSet {
  NormalDist theta_conditional;        // N(ybar, sigma2 / n)
  ScaledExponentialDist sigma2_density;  // mean s2
  LaplaceDist theta_marginal;          // scale sqrt(s2 / (2n))
  NormalDist predictive_conditional;   // N(ybar, (1 + 1/n) sigma2)
  LaplaceDist predictive_marginal;     // scale sqrt((1 + 1/n) s2 / 2)
  double conditioning_sigma2;          // the sigma^2 the conditionals use
};

// Point estimates and residual moments. Throws insufficient_data_error for
// n < 2 and zero_variance_error when every value is identical (the thrown
// object still carries ybar and the residuals).
MeanPosterior fit_mean(std::span<const double> values);

// Builds the density set; conditionals use the supplied sigma^2 when given,
// otherwise s2.
MeanMaxentSet mean_maxent(const MeanPosterior& post,
                          std::optional<double> sigma2 = std::nullopt);

// Equal-tail interval for theta from its double-exponential marginal.
IntervalEstimate theta_interval(const MeanPosterior& post, double level);

// Maximum-entropy density for a mean known to be positive: exponential with
// mean ybar. Throws positivity_error when ybar <= 0.
ScaledExponentialDist positive_mean_density(const MeanPosterior& post);

// Realized-error densities for observation i (0-based): the marginal is
// Laplace(residual_i, sqrt(s2 / (2n))), the conditional is
// N(residual_i, sigma2 / n).
LaplaceDist mean_error_marginal(const MeanPosterior& post, int i);
NormalDist mean_error_conditional(const MeanPosterior& post, int i,
                                  std::optional<double> sigma2 = std::nullopt);

}  // namespace bmom
