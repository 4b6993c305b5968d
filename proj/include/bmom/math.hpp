#pragma once

// Special functions with pinned coefficient tables so results are identical
// across platforms: Cody's rational erf/erfc, the AS241 normal quantile,
// a Lanczos log-gamma, and the regularized incomplete beta.

namespace bmom::math {

// Complementary error function, Cody's SPECFUN rational approximations.
// Relative error below 1e-14 over the double range.
double erfc(double x);

double erf(double x);

// Standard normal cdf via erfc; absolute error below 1e-15.
double normal_cdf(double z);

// Standard normal pdf.
double normal_pdf(double z);

// Inverse standard normal cdf (Wichura's AS241, PPND16).
// Requires 0 < p < 1; accurate to about 1e-15 relative.
double normal_quantile(double p);

// log Gamma(x) for x > 0 (Lanczos, g = 7, 9 terms).
double log_gamma(double x);

// Regularized incomplete beta I_x(a, b) for a, b > 0 and x in [0, 1],
// by continued fraction (Lentz).
double incomplete_beta(double a, double b, double x);

}  // namespace bmom::math
