#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "bmom/regression.hpp"

namespace bmom {

struct DrawConfig {
  std::uint64_t seed = 0;
  std::int64_t n_draws = 10000;
};

// Draws from the joint (sigma^2, beta) posterior. Row d of beta pairs with
// sigma2[d]. Fully reproducible: draw d depends only on (seed, first + d),
// never on the draws before it.
struct JointDraws {
  std::uint64_t seed;
  std::uint64_t first;
  Eigen::VectorXd sigma2;
  Eigen::MatrixXd beta;
};

struct PredictiveDraws {
  std::uint64_t seed;
  std::uint64_t first;
  Eigen::VectorXd y;
};

// Inverse cdf of the exponential sigma^2 posterior: u in (0,1) -> -s2 ln u.
double sigma2_from_uniform(double u, double s2);

// Two-stage draw d: sigma2_d from the exponential posterior by inversion,
// then beta_d = beta_hat + sqrt(sigma2_d) * chol((X'X)^{-1}) * z_d with
// standard normal z_d by inverse cdf.
JointDraws draw_joint(const LeastSquaresFit& fit, const DrawConfig& config);

// The same stream starting at global draw index `first`; concatenating
// ranges reproduces a single longer run bit for bit.
JointDraws draw_joint_range(const LeastSquaresFit& fit, std::uint64_t seed,
                            std::uint64_t first, std::int64_t count);

// Future observation at x_f: y_d = y_hat + sqrt(inflation * sigma2_d) * z_d,
// with sigma2_d shared with the joint stream for the same seed and index.
PredictiveDraws draw_predictive(const LeastSquaresFit& fit,
                                const Eigen::VectorXd& x_f,
                                const DrawConfig& config);

PredictiveDraws draw_predictive_range(const LeastSquaresFit& fit,
                                      const Eigen::VectorXd& x_f,
                                      std::uint64_t seed, std::uint64_t first,
                                      std::int64_t count);

// Per-component moment and quantile summary of a draw matrix (rows = draws).
// m2 and m4 are central sample moments with divisor N; variance and
// covariance use divisor N-1; kurtosis = m4 / m2^2. Interval endpoints are
// type-7 interpolated equal-tail quantiles.
struct ComponentSummary {
  double mean;
  double variance;
  double m2;
  double m4;
  double kurtosis;
  double excess;
  double lower;
  double upper;
};

struct DrawSummary {
  std::int64_t n;
  double level;
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;
  std::vector<ComponentSummary> components;
};

DrawSummary summarize_draws(const Eigen::MatrixXd& draws, double level = 0.95);
DrawSummary summarize_draws(const Eigen::VectorXd& draws, double level = 0.95);

// Type-7 quantile (linear interpolation of order statistics) of unsorted
// values; p in [0,1].
double quantile_type7(std::vector<double> values, double p);

}  // namespace bmom
