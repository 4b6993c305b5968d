#include "bmom/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bmom/errors.hpp"
#include "bmom/philox.hpp"

namespace bmom {

namespace {

// stream ids partition the counter space so the three variate kinds never
// collide for a given seed
constexpr std::uint32_t kSigmaStream = 0;
constexpr std::uint32_t kCoefStream = 1;
constexpr std::uint32_t kPredictiveStream = 2;

void check_count(std::int64_t count) {
  if (count < 1)
    throw domain_error("draw count must be >= 1, got " +
                       std::to_string(count));
}

Eigen::MatrixXd cov_chol_lower(const LeastSquaresFit& fit) {
  Eigen::LLT<Eigen::MatrixXd> llt(fit.xtx_inv);
  if (llt.info() != Eigen::Success)
    throw numeric_error(
        "inverse moment matrix is not numerically positive definite; cannot "
        "factor it for sampling");
  return llt.matrixL();
}

}  // namespace

double sigma2_from_uniform(double u, double s2) {
  if (!(u > 0.0 && u < 1.0))
    throw domain_error("uniform variate must lie strictly in (0,1)");
  if (!(s2 > 0.0))
    throw domain_error("s2 must be positive, got " + std::to_string(s2));
  return -s2 * std::log(u);
}

JointDraws draw_joint_range(const LeastSquaresFit& fit, std::uint64_t seed,
                            std::uint64_t first, std::int64_t count) {
  check_count(count);
  const Eigen::Index k = fit.problem.k();
  const Eigen::MatrixXd chol = cov_chol_lower(fit);
  const rng::CounterStream sigma_stream(seed, kSigmaStream);
  const rng::CounterStream coef_stream(seed, kCoefStream);

  JointDraws out{seed, first, Eigen::VectorXd(count),
                 Eigen::MatrixXd(count, k)};
  Eigen::VectorXd z(k);
  for (std::int64_t d = 0; d < count; ++d) {
    const std::uint64_t index = first + std::uint64_t(d);
    const double sig2 =
        sigma2_from_uniform(sigma_stream.uniform(index, 0), fit.s2);
    out.sigma2[d] = sig2;
    for (Eigen::Index j = 0; j < k; ++j)
      z[j] = coef_stream.normal(index, std::uint32_t(j));
    out.beta.row(d) =
        (fit.beta + std::sqrt(sig2) * (chol * z)).transpose();
  }
  return out;
}

JointDraws draw_joint(const LeastSquaresFit& fit, const DrawConfig& config) {
  return draw_joint_range(fit, config.seed, 0, config.n_draws);
}

PredictiveDraws draw_predictive_range(const LeastSquaresFit& fit,
                                      const Eigen::VectorXd& x_f,
                                      std::uint64_t seed, std::uint64_t first,
                                      std::int64_t count) {
  check_count(count);
  const PredictivePoint pp = predictive_point(fit, x_f);
  const rng::CounterStream sigma_stream(seed, kSigmaStream);
  const rng::CounterStream pred_stream(seed, kPredictiveStream);

  PredictiveDraws out{seed, first, Eigen::VectorXd(count)};
  for (std::int64_t d = 0; d < count; ++d) {
    const std::uint64_t index = first + std::uint64_t(d);
    const double sig2 =
        sigma2_from_uniform(sigma_stream.uniform(index, 0), fit.s2);
    out.y[d] = pp.y_hat +
               std::sqrt(pp.inflation * sig2) * pred_stream.normal(index, 0);
  }
  return out;
}

PredictiveDraws draw_predictive(const LeastSquaresFit& fit,
                                const Eigen::VectorXd& x_f,
                                const DrawConfig& config) {
  return draw_predictive_range(fit, x_f, config.seed, 0, config.n_draws);
}

double quantile_type7(std::vector<double> values, double p) {
  if (values.empty()) throw insufficient_data_error("quantile of no values");
  if (!(p >= 0.0 && p <= 1.0))
    throw domain_error("quantile level must lie in [0,1], got " +
                       std::to_string(p));
  std::sort(values.begin(), values.end());
  const double h = (double(values.size()) - 1.0) * p;
  const size_t lo = size_t(std::floor(h));
  if (lo + 1 >= values.size()) return values.back();
  const double frac = h - double(lo);
  return values[lo] + frac * (values[lo + 1] - values[lo]);
}

DrawSummary summarize_draws(const Eigen::MatrixXd& draws, double level) {
  const Eigen::Index n = draws.rows();
  const Eigen::Index k = draws.cols();
  if (n < 2)
    throw insufficient_data_error(
        "summaries need at least 2 draws, got " + std::to_string(n));
  if (k < 1) throw domain_error("summaries need at least one component");
  if (!(level > 0.0 && level < 1.0))
    throw domain_error("interval level must lie strictly in (0,1), got " +
                       std::to_string(level));
  if (!draws.allFinite())
    throw domain_error("draw matrix has non-finite entries");

  DrawSummary out;
  out.n = n;
  out.level = level;
  out.mean = draws.colwise().mean();
  const Eigen::MatrixXd centered = draws.rowwise() - out.mean.transpose();
  out.covariance = centered.transpose() * centered / double(n - 1);

  out.components.reserve(size_t(k));
  const double p_lo = 0.5 * (1.0 - level);
  const double p_hi = 0.5 * (1.0 + level);
  for (Eigen::Index j = 0; j < k; ++j) {
    ComponentSummary c{};
    c.mean = out.mean[j];
    c.variance = out.covariance(j, j);
    const Eigen::ArrayXd sq = centered.col(j).array().square();
    c.m2 = sq.mean();
    c.m4 = sq.square().mean();
    // zero-spread components have no standardized shape
    c.kurtosis = c.m2 > 0.0 ? c.m4 / (c.m2 * c.m2)
                            : std::numeric_limits<double>::quiet_NaN();
    c.excess = c.kurtosis - 3.0;
    std::vector<double> col(draws.col(j).data(), draws.col(j).data() + n);
    c.lower = quantile_type7(col, p_lo);
    c.upper = quantile_type7(std::move(col), p_hi);
    out.components.push_back(c);
  }
  return out;
}

DrawSummary summarize_draws(const Eigen::VectorXd& draws, double level) {
  return summarize_draws(Eigen::MatrixXd(draws), level);
}

}  // namespace bmom
