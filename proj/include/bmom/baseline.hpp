#pragma once

#include <optional>
#include <string>

#include "bmom/densities.hpp"
#include "bmom/mean_model.hpp"
#include "bmom/regression.hpp"

namespace bmom {

// Student-t posterior for a location: (x - center) / scale has a t density
// with nu degrees of freedom. This is what a diffuse-prior normal-likelihood
// analysis produces, and it is the benchmark the moment-based densities are
// compared against.
struct StudentPosterior {
  double center;
  double scale;
  double nu;
};

// Second and fourth moments of the standard t density and its excess
// kurtosis 6/(nu-4). Exists only for nu > 4; the construction checks the
// identity excess = m4/m2^2 - 3 internally.
struct TMoments {
  double second;
  double fourth;
  double excess;
};

double student_t_pdf(double t, double nu);
double student_t_cdf(double t, double nu);

// Inverse cdf by bracketed bisection polished with Newton steps; the
// round-trip error |cdf(quantile(p)) - p| stays below 1e-12.
double student_t_quantile(double p, double nu);

// Throws moment_undefined_error naming the failing moment when nu <= 2
// (second) or nu <= 4 (fourth).
TMoments t_moments(double nu);

// Posterior mean of sigma^2 under the t analysis: nu s2 / (nu - 2).
// Requires nu > 2.
double t_sigma2_mean(double s2, double nu);

IntervalEstimate t_interval(const StudentPosterior& post, double level);

// Side-by-side comparison of the three posteriors for one location target:
// the double-exponential marginal, the conditional normal at sigma^2 = s2,
// and the Student-t benchmark. All three share the center; the t moments
// that do not exist at the given nu are simply absent.
struct ComparisonReport {
  std::string target;
  double level;
  double nu;
  double center;
  double s2;
  // marginal variance of the target is marginal_factor * sigma^2
  double marginal_factor;

  LaplaceDist laplace;
  IntervalEstimate laplace_interval;
  double laplace_sigma2_mean;  // = s2
  double laplace_variance;     // marginal_factor * s2
  double laplace_excess;       // 3, exactly

  NormalDist normal;
  IntervalEstimate normal_interval;

  StudentPosterior student;
  IntervalEstimate student_interval;
  std::optional<double> student_sigma2_mean;  // needs nu > 2
  std::optional<double> student_variance;     // needs nu > 2
  std::optional<double> student_excess;       // needs nu > 4

  double width_ratio_laplace_normal;
  double width_ratio_laplace_student;
};

ComparisonReport compare_mean(const MeanPosterior& post, double level);
ComparisonReport compare_coefficient(const LeastSquaresFit& fit, int i,
                                     double level);

}  // namespace bmom
