#include "bmom/baseline.hpp"

#include <cmath>
#include <string>

#include "bmom/errors.hpp"
#include "bmom/math.hpp"

namespace bmom {

namespace {

void check_nu(double nu) {
  if (!(nu > 0.0) || !std::isfinite(nu))
    throw domain_error("degrees of freedom must be positive, got " +
                       std::to_string(nu));
}

ComparisonReport build_comparison(std::string target, double center,
                                  double marginal_factor, double s2, double nu,
                                  double level) {
  const double variance = marginal_factor * s2;

  const LaplaceDist laplace = laplace_from_mean_var(center, variance);
  const IntervalEstimate laplace_iv = central_interval(laplace, level);

  const NormalDist normal(center, variance);
  const IntervalEstimate normal_iv = central_interval(normal, level);

  const StudentPosterior student{center, std::sqrt(variance), nu};
  const IntervalEstimate student_iv = t_interval(student, level);

  ComparisonReport r{
      std::move(target), level,  nu,     center,     s2,
      marginal_factor,   laplace, laplace_iv, s2,    variance,
      3.0,               normal, normal_iv,  student, student_iv,
      std::nullopt,      std::nullopt, std::nullopt,
      laplace_iv.width() / normal_iv.width(),
      laplace_iv.width() / student_iv.width()};
  if (nu > 2.0) {
    r.student_sigma2_mean = t_sigma2_mean(s2, nu);
    r.student_variance = variance * nu / (nu - 2.0);
  }
  if (nu > 4.0) r.student_excess = 6.0 / (nu - 4.0);
  return r;
}

}  // namespace

double student_t_pdf(double t, double nu) {
  check_nu(nu);
  if (!std::isfinite(t)) throw domain_error("student_t_pdf: t must be finite");
  const double log_pdf = math::log_gamma(0.5 * (nu + 1.0)) -
                         math::log_gamma(0.5 * nu) -
                         0.5 * std::log(nu * 3.14159265358979323846) -
                         0.5 * (nu + 1.0) * std::log1p(t * t / nu);
  return std::exp(log_pdf);
}

double student_t_cdf(double t, double nu) {
  check_nu(nu);
  if (!std::isfinite(t)) throw domain_error("student_t_cdf: t must be finite");
  if (t == 0.0) return 0.5;
  const double x = nu / (nu + t * t);
  const double tail = 0.5 * math::incomplete_beta(0.5 * nu, 0.5, x);
  return t > 0.0 ? 1.0 - tail : tail;
}

double student_t_quantile(double p, double nu) {
  check_nu(nu);
  if (!(p > 0.0 && p < 1.0))
    throw domain_error("student_t_quantile: p must lie strictly in (0,1), got " +
                       std::to_string(p));
  if (p == 0.5) return 0.0;
  if (p < 0.5) return -student_t_quantile(1.0 - p, nu);

  double hi = 1.0;
  int guard = 0;
  while (student_t_cdf(hi, nu) < p) {
    hi *= 2.0;
    if (++guard > 300)
      throw numeric_error("student_t_quantile: bracket search ran away at p=" +
                          std::to_string(p) + ", nu=" + std::to_string(nu));
  }
  double lo = hi > 1.0 ? hi * 0.5 : 0.0;

  double mid = 0.5 * (lo + hi);
  for (int i = 0; i < 90; ++i) {
    mid = 0.5 * (lo + hi);
    if (student_t_cdf(mid, nu) < p)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-14 * std::max(1.0, std::fabs(mid))) break;
  }
  // Newton polish inside the bracket
  double t = 0.5 * (lo + hi);
  for (int i = 0; i < 4; ++i) {
    const double density = student_t_pdf(t, nu);
    if (density <= 0.0) break;
    const double step = (student_t_cdf(t, nu) - p) / density;
    double next = t - step;
    if (next < lo || next > hi) break;
    t = next;
  }
  return t;
}

TMoments t_moments(double nu) {
  check_nu(nu);
  if (nu <= 2.0)
    throw moment_undefined_error(
        "second moment of the t density does not exist at nu = " +
        std::to_string(nu) + " (needs nu > 2)");
  if (nu <= 4.0)
    throw moment_undefined_error(
        "fourth moment of the t density does not exist at nu = " +
        std::to_string(nu) + " (needs nu > 4)");
  const double second = nu / (nu - 2.0);
  const double fourth = 3.0 * nu * nu / ((nu - 2.0) * (nu - 4.0));
  const double excess = 6.0 / (nu - 4.0);
  const double check = fourth / (second * second) - 3.0;
  if (std::fabs(check - excess) > 1e-10 * std::max(1.0, excess))
    throw numeric_error("t moment identity m4/m2^2 - 3 = 6/(nu-4) violated");
  return {second, fourth, excess};
}

double t_sigma2_mean(double s2, double nu) {
  check_nu(nu);
  if (!(s2 > 0.0) || !std::isfinite(s2))
    throw domain_error("s2 must be positive, got " + std::to_string(s2));
  if (nu <= 2.0)
    throw moment_undefined_error(
        "posterior mean of sigma^2 under the t analysis does not exist at "
        "nu = " + std::to_string(nu) + " (needs nu > 2)");
  return nu * s2 / (nu - 2.0);
}

IntervalEstimate t_interval(const StudentPosterior& post, double level) {
  if (!(level > 0.0 && level < 1.0))
    throw domain_error("interval level must lie strictly in (0,1), got " +
                       std::to_string(level));
  if (!(post.scale > 0.0) || !std::isfinite(post.scale))
    throw domain_error("StudentPosterior scale must be positive");
  const double half =
      post.scale * student_t_quantile(0.5 * (1.0 + level), post.nu);
  return {post.center - half, post.center + half, level, "student_t"};
}

ComparisonReport compare_mean(const MeanPosterior& post, double level) {
  return build_comparison("theta", post.ybar, 1.0 / post.n, post.s2,
                          double(post.n - 1), level);
}

ComparisonReport compare_coefficient(const LeastSquaresFit& fit, int i,
                                     double level) {
  if (i < 0 || i >= fit.problem.k())
    throw domain_error("coefficient index " + std::to_string(i) +
                       " outside [0," + std::to_string(fit.problem.k()) + ")");
  return build_comparison(fit.problem.names[size_t(i)], fit.beta[i],
                          fit.xtx_inv(i, i), fit.s2, double(fit.dof), level);
}

}  // namespace bmom
