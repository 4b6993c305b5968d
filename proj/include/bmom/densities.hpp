#pragma once

#include <span>
#include <string>

namespace bmom {

// Normal distribution parameterized by mean and variance.
struct NormalDist {
  NormalDist(double mean, double variance);

  double mean;
  double variance;

  double sd() const;
};

// Double-exponential distribution with location m and scale b:
// pdf(x) = exp(-|x - m| / b) / (2 b). Variance is 2 b^2.
struct LaplaceDist {
  LaplaceDist(double location, double scale);

  double location;
  double scale;

  double variance() const { return 2.0 * scale * scale; }
  double sd() const;
};

// Exponential distribution on [0, inf) parameterized by its mean:
// pdf(x) = exp(-x / mean) / mean. This is the maximum-entropy density for
// a positive quantity with a given first moment.
struct ScaledExponentialDist {
  explicit ScaledExponentialDist(double mean);

  double mean;

  double variance() const { return mean * mean; }
};

struct DensityValue {
  double pdf;
  double log_pdf;
  double cdf;
};

// Equal-tail interval with its coverage level and the family that produced
// it ("laplace" or "normal").
struct IntervalEstimate {
  double lower;
  double upper;
  double level;
  std::string method;

  double width() const { return upper - lower; }
};

DensityValue normal_eval(const NormalDist& d, double x);
DensityValue laplace_eval(const LaplaceDist& d, double x);

// x must lie in the support [0, inf).
DensityValue exp_scale_eval(const ScaledExponentialDist& d, double x);

// Inverse cdf. Exact closed form:
//   p <= 1/2: m + b ln(2p),   p > 1/2: m - b ln(2(1-p)).
double laplace_quantile(const LaplaceDist& d, double p);

// The Laplace distribution with the given mean and variance (b = sqrt(v/2)).
LaplaceDist laplace_from_mean_var(double mean, double variance);

// Even moment E w^{2r} of the standard double exponential pdf exp(-2|w|),
// equal to (2r)!/2^{2r}. r = 1, 2, 3 give 1/2, 3/2, 11.25.
double laplace_even_moment(int r);

IntervalEstimate central_interval(const NormalDist& d, double level);
IntervalEstimate central_interval(const LaplaceDist& d, double level);

// Numeric value at `offset` (distance from the common center) of the scale
// mixture integral(0,inf) N(offset; 0, variance_factor * s2v) Exp(s2v; s2) ds2v,
// computed by adaptive quadrature over sigma = sqrt(s2v) to absolute
// tolerance 1e-9. Truncating at sigma = sqrt(s2 ln 1e16) discards mixing
// mass exp(-ln 1e16) = 1e-16, below 1e-12.
double scale_mixture_numeric(double variance_factor, double s2, double offset);

// Max absolute gap over `grid` (offsets from the center) between the numeric
// normal-exponential mixture with conditional variance s2v/n and the closed
// form Laplace(0, sqrt(s2/(2n))) density it must equal.
double mixture_check(int n, double s2, std::span<const double> grid);

}  // namespace bmom
