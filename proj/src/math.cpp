#include "bmom/math.hpp"

#include <cmath>
#include <string>

#include "bmom/errors.hpp"

namespace bmom::math {

namespace {

// Cody, "Rational Chebyshev approximation for the error function" /
// SPECFUN CALERF coefficient tables. Do not reformat or "simplify":
// the tables are pinned so every build reproduces identical values.
constexpr double kErfA[5] = {
    3.16112374387056560e00, 1.13864154151050156e02, 3.77485237685302021e02,
    3.20937758913846947e03, 1.85777706184603153e-1};
constexpr double kErfB[4] = {
    2.36012909523441209e01, 2.44024637934444173e02, 1.28261652607737228e03,
    2.84423683343917062e03};
constexpr double kErfC[9] = {
    5.64188496988670089e-1, 8.88314979438837594e00, 6.61191906371416295e01,
    2.98635138197400131e02, 8.81952221241769090e02, 1.71204761263407058e03,
    2.05107837782607147e03, 1.23033935479799725e03, 2.15311535474403846e-8};
constexpr double kErfD[8] = {
    1.57449261107098347e01, 1.17693950891312499e02, 5.37181101862009858e02,
    1.62138957456669019e03, 3.29079923573345963e03, 4.36261909014324716e03,
    3.43936767414372164e03, 1.23033935480374942e03};
constexpr double kErfP[6] = {
    3.05326634961232344e-1, 3.60344899949804439e-1, 1.25781726111229246e-1,
    1.60837851487422766e-2, 6.58749161529837803e-4, 1.63153871373020978e-2};
constexpr double kErfQ[5] = {
    2.56852019228982242e00, 1.87295284992346047e00, 5.27905102951428412e-1,
    6.05183413124413191e-2, 2.33520497626869185e-3};

constexpr double kInvSqrtPi = 5.6418958354775628695e-1;

// erfc for y = |x| in (0.46875, inf). The exp split through ysq keeps the
// squared argument exactly representable, which is where the last two
// digits of accuracy come from.
double erfc_tail(double y) {
  double num, den;
  if (y <= 4.0) {
    num = kErfC[8] * y;
    den = y;
    for (int i = 0; i < 7; ++i) {
      num = (num + kErfC[i]) * y;
      den = (den + kErfD[i]) * y;
    }
    const double r = (num + kErfC[7]) / (den + kErfD[7]);
    const double ysq = std::floor(y * 16.0) / 16.0;
    const double del = (y - ysq) * (y + ysq);
    return std::exp(-ysq * ysq) * std::exp(-del) * r;
  }
  if (y >= 26.543) return 0.0;
  const double z = 1.0 / (y * y);
  num = kErfP[5] * z;
  den = z;
  for (int i = 0; i < 4; ++i) {
    num = (num + kErfP[i]) * z;
    den = (den + kErfQ[i]) * z;
  }
  double r = z * (num + kErfP[4]) / (den + kErfQ[4]);
  r = (kInvSqrtPi - r) / y;
  const double ysq = std::floor(y * 16.0) / 16.0;
  const double del = (y - ysq) * (y + ysq);
  return std::exp(-ysq * ysq) * std::exp(-del) * r;
}

// erf for |x| <= 0.46875.
double erf_core(double x) {
  const double z = x * x;
  double num = kErfA[4] * z;
  double den = z;
  for (int i = 0; i < 3; ++i) {
    num = (num + kErfA[i]) * z;
    den = (den + kErfB[i]) * z;
  }
  return x * (num + kErfA[3]) / (den + kErfB[3]);
}

}  // namespace

double erfc(double x) {
  if (std::isnan(x)) return x;
  const double y = std::fabs(x);
  if (y <= 0.46875) return 1.0 - erf_core(x);
  const double tail = erfc_tail(y);
  return x < 0.0 ? 2.0 - tail : tail;
}

double erf(double x) {
  if (std::isnan(x)) return x;
  const double y = std::fabs(x);
  if (y <= 0.46875) return erf_core(x);
  const double tail = erfc_tail(y);
  return x < 0.0 ? tail - 1.0 : 1.0 - tail;
}

double normal_cdf(double z) { return 0.5 * erfc(-z / std::sqrt(2.0)); }

double normal_pdf(double z) {
  constexpr double kInvSqrt2Pi = 0.39894228040143267794;
  return kInvSqrt2Pi * std::exp(-0.5 * z * z);
}

// Wichura's algorithm AS241, PPND16 variant. Pinned tables as above.
double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw domain_error("normal_quantile: p must lie strictly in (0,1), got " +
                       std::to_string(p));

  constexpr double a[8] = {
      3.3871328727963666080e0,  1.3314166789178437745e2,
      1.9715909503065514427e3,  1.3731693765509461125e4,
      4.5921953931549871457e4,  6.7265770927008700853e4,
      3.3430575583588128105e4,  2.5090809287301226727e3};
  constexpr double b[7] = {
      4.2313330701600911252e1,  6.8718700749205790830e2,
      5.3941960214247511077e3,  2.1213794301586595867e4,
      3.9307895800092710610e4,  2.8729085735721942674e4,
      5.2264952788528545610e3};
  constexpr double c[8] = {
      1.42343711074968357734e0,  4.63033784615654529590e0,
      5.76949722146069140550e0,  3.64784832476320460504e0,
      1.27045825245236838258e0,  2.41780725177450611770e-1,
      2.27238449892691845833e-2, 7.74545014278341407640e-4};
  constexpr double d[7] = {
      2.05319162663775882187e0,  1.67638483018380384940e0,
      6.89767334985100004550e-1, 1.48103976427480074590e-1,
      1.51986665636164571966e-2, 5.47593808499534494600e-4,
      1.05075007164441684324e-9};
  constexpr double e[8] = {
      6.65790464350110377720e0,  5.46378491116411436990e0,
      1.78482653991729133580e0,  2.96560571828504891230e-1,
      2.65321895265761230930e-2, 1.24266094738807843860e-3,
      2.71155556874348757815e-5, 2.01033439929228813265e-7};
  constexpr double f[7] = {
      5.99832206555887937690e-1, 1.36929880922735805310e-1,
      1.48753612908506148525e-2, 7.86869131145613259100e-4,
      1.84631831751005468180e-5, 1.42151175831644588870e-7,
      2.04426310338993978564e-15};

  const double q = p - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    const double num =
        (((((((a[7] * r + a[6]) * r + a[5]) * r + a[4]) * r + a[3]) * r +
           a[2]) * r + a[1]) * r + a[0]);
    const double den =
        (((((((b[6] * r + b[5]) * r + b[4]) * r + b[3]) * r + b[2]) * r +
           b[1]) * r + b[0]) * r + 1.0);
    return q * num / den;
  }

  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double val;
  if (r <= 5.0) {
    r -= 1.6;
    const double num =
        (((((((c[7] * r + c[6]) * r + c[5]) * r + c[4]) * r + c[3]) * r +
           c[2]) * r + c[1]) * r + c[0]);
    const double den =
        (((((((d[6] * r + d[5]) * r + d[4]) * r + d[3]) * r + d[2]) * r +
           d[1]) * r + d[0]) * r + 1.0);
    val = num / den;
  } else {
    r -= 5.0;
    const double num =
        (((((((e[7] * r + e[6]) * r + e[5]) * r + e[4]) * r + e[3]) * r +
           e[2]) * r + e[1]) * r + e[0]);
    const double den =
        (((((((f[6] * r + f[5]) * r + f[4]) * r + f[3]) * r + f[2]) * r +
           f[1]) * r + f[0]) * r + 1.0);
    val = num / den;
  }
  return q < 0.0 ? -val : val;
}

double log_gamma(double x) {
  if (!(x > 0.0))
    throw domain_error("log_gamma: argument must be positive, got " +
                       std::to_string(x));
  constexpr double kLanczos[9] = {
      0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
  constexpr double kHalfLog2Pi = 0.91893853320467274178;
  if (x < 0.5) {
    // reflection keeps the small-argument range accurate
    const double pi = 3.14159265358979323846;
    return std::log(pi / std::sin(pi * x)) - log_gamma(1.0 - x);
  }
  const double z = x - 1.0;
  double acc = kLanczos[0];
  for (int i = 1; i < 9; ++i) acc += kLanczos[i] / (z + i);
  const double t = z + 7.5;
  return kHalfLog2Pi + (z + 0.5) * std::log(t) - t + std::log(acc);
}

namespace {

// Continued fraction for the incomplete beta (modified Lentz).
double beta_cf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3e-16;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) <= kEps) return h;
  }
  throw numeric_error(
      "incomplete_beta: continued fraction did not converge (a=" +
      std::to_string(a) + ", b=" + std::to_string(b) +
      ", x=" + std::to_string(x) + ")");
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0))
    throw domain_error("incomplete_beta: a and b must be positive");
  if (!(x >= 0.0 && x <= 1.0))
    throw domain_error("incomplete_beta: x must lie in [0,1], got " +
                       std::to_string(x));
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_bt = log_gamma(a + b) - log_gamma(a) - log_gamma(b) +
                        a * std::log(x) + b * std::log1p(-x);
  const double bt = std::exp(log_bt);
  if (x < (a + 1.0) / (a + b + 2.0)) return bt * beta_cf(a, b, x) / a;
  return 1.0 - bt * beta_cf(b, a, 1.0 - x) / b;
}

}  // namespace bmom::math
