#include "bmom/densities.hpp"

#include <cmath>
#include <string>

#include "bmom/errors.hpp"
#include "bmom/math.hpp"
#include "bmom/quadrature.hpp"

namespace bmom {

namespace {

void require_finite(double x, const char* what) {
  if (!std::isfinite(x))
    throw domain_error(std::string(what) + " must be finite");
}

void require_level(double level) {
  if (!(level > 0.0 && level < 1.0))
    throw domain_error("interval level must lie strictly in (0,1), got " +
                       std::to_string(level));
}

constexpr double kLog2Pi = 1.83787706640934548356;

}  // namespace

NormalDist::NormalDist(double mean_, double variance_)
    : mean(mean_), variance(variance_) {
  require_finite(mean, "NormalDist mean");
  if (!(variance > 0.0) || !std::isfinite(variance))
    throw domain_error("NormalDist variance must be positive, got " +
                       std::to_string(variance_));
}

double NormalDist::sd() const { return std::sqrt(variance); }

LaplaceDist::LaplaceDist(double location_, double scale_)
    : location(location_), scale(scale_) {
  require_finite(location, "LaplaceDist location");
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw domain_error("LaplaceDist scale must be positive, got " +
                       std::to_string(scale_));
}

double LaplaceDist::sd() const { return std::sqrt(2.0) * scale; }

ScaledExponentialDist::ScaledExponentialDist(double mean_) : mean(mean_) {
  if (!(mean > 0.0) || !std::isfinite(mean))
    throw domain_error("ScaledExponentialDist mean must be positive, got " +
                       std::to_string(mean_));
}

DensityValue normal_eval(const NormalDist& d, double x) {
  require_finite(x, "normal_eval point");
  const double z = (x - d.mean) / d.sd();
  const double log_pdf = -0.5 * z * z - 0.5 * (kLog2Pi + std::log(d.variance));
  return {std::exp(log_pdf), log_pdf, math::normal_cdf(z)};
}

DensityValue laplace_eval(const LaplaceDist& d, double x) {
  require_finite(x, "laplace_eval point");
  const double t = (x - d.location) / d.scale;
  const double log_pdf = -std::fabs(t) - std::log(2.0 * d.scale);
  const double cdf =
      t < 0.0 ? 0.5 * std::exp(t) : 1.0 - 0.5 * std::exp(-t);
  return {std::exp(log_pdf), log_pdf, cdf};
}

DensityValue exp_scale_eval(const ScaledExponentialDist& d, double x) {
  require_finite(x, "exp_scale_eval point");
  if (x < 0.0)
    throw domain_error("exp_scale_eval: point " + std::to_string(x) +
                       " is outside the support [0,inf)");
  const double log_pdf = -x / d.mean - std::log(d.mean);
  return {std::exp(log_pdf), log_pdf, -std::expm1(-x / d.mean)};
}

double laplace_quantile(const LaplaceDist& d, double p) {
  if (!(p > 0.0 && p < 1.0))
    throw domain_error("laplace_quantile: p must lie strictly in (0,1), got " +
                       std::to_string(p));
  if (p <= 0.5) return d.location + d.scale * std::log(2.0 * p);
  return d.location - d.scale * std::log(2.0 * (1.0 - p));
}

LaplaceDist laplace_from_mean_var(double mean, double variance) {
  if (!(variance > 0.0) || !std::isfinite(variance))
    throw domain_error("laplace_from_mean_var: variance must be positive");
  return LaplaceDist(mean, std::sqrt(0.5 * variance));
}

double laplace_even_moment(int r) {
  if (r < 0) throw domain_error("laplace_even_moment: order must be >= 0");
  // (2r)!/2^{2r} accumulated as prod_{j=1..2r} j/2 to dodge overflow
  double m = 1.0;
  for (int j = 1; j <= 2 * r; ++j) m *= 0.5 * j;
  return m;
}

IntervalEstimate central_interval(const NormalDist& d, double level) {
  require_level(level);
  const double half = d.sd() * math::normal_quantile(0.5 * (1.0 + level));
  return {d.mean - half, d.mean + half, level, "normal"};
}

IntervalEstimate central_interval(const LaplaceDist& d, double level) {
  require_level(level);
  // upper quantile at (1+level)/2 lands on the closed form b ln(1/(1-level))
  const double half = d.scale * std::log(1.0 / (1.0 - level));
  return {d.location - half, d.location + half, level, "laplace"};
}

double scale_mixture_numeric(double variance_factor, double s2,
                             double offset) {
  if (!(variance_factor > 0.0) || !std::isfinite(variance_factor))
    throw domain_error("scale_mixture_numeric: variance factor must be positive");
  if (!(s2 > 0.0) || !std::isfinite(s2))
    throw domain_error("scale_mixture_numeric: s2 must be positive");
  require_finite(offset, "scale_mixture_numeric offset");

  const double c = variance_factor;
  const double t2 = offset * offset;
  const double prefactor =
      2.0 / (s2 * std::sqrt(2.0 * 3.14159265358979323846 * c));
  // integrate over sigma so the integrand is smooth at the origin; the
  // 1/sigma and Jacobian factors cancel
  const auto integrand = [&](double v) {
    if (v <= 0.0) return t2 == 0.0 ? prefactor : 0.0;
    return prefactor * std::exp(-t2 / (2.0 * c * v * v) - v * v / s2);
  };
  const double upper = std::sqrt(s2 * std::log(1e16));
  return quadrature::adaptive_simpson(integrand, 0.0, upper, 1e-9);
}

double mixture_check(int n, double s2, std::span<const double> grid) {
  if (n < 1) throw domain_error("mixture_check: n must be >= 1");
  if (grid.empty()) throw domain_error("mixture_check: grid must be non-empty");
  const double c = 1.0 / double(n);
  const LaplaceDist closed(0.0, std::sqrt(0.5 * c * s2));
  double worst = 0.0;
  for (double t : grid) {
    require_finite(t, "mixture_check grid point");
    const double numeric = scale_mixture_numeric(c, s2, t);
    worst = std::max(worst, std::fabs(numeric - laplace_eval(closed, t).pdf));
  }
  return worst;
}

}  // namespace bmom
