#pragma once

// Reference implementations the tests trust instead of the library under
// test: a fixed-panel Simpson rule, a Gauss-Jordan normal-equations solver,
// and a bisection inverse. Deliberately naive and dependency-free so a bug
// in the library cannot hide in its own oracle.

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<double>>;

// Composite Simpson over n_panels equal panels (n_panels even).
inline double simpson(const std::function<double(double)>& f, double a,
                      double b, int n_panels) {
  if (n_panels % 2 != 0) throw std::invalid_argument("panel count must be even");
  const double h = (b - a) / n_panels;
  double sum = f(a) + f(b);
  for (int i = 1; i < n_panels; ++i)
    sum += f(a + i * h) * ((i % 2 == 1) ? 4.0 : 2.0);
  return sum * h / 3.0;
}

inline Matrix matmul(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size(), m = b[0].size(), inner = b.size();
  Matrix out(n, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < inner; ++l)
      for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][l] * b[l][j];
  return out;
}

inline Matrix transpose(const Matrix& a) {
  const std::size_t n = a.size(), m = a[0].size();
  Matrix out(m, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) out[j][i] = a[i][j];
  return out;
}

// Inverse by Gauss-Jordan with partial pivoting.
inline Matrix invert(Matrix a) {
  const std::size_t n = a.size();
  Matrix inv(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
    if (a[pivot][col] == 0.0) throw std::runtime_error("singular matrix");
    std::swap(a[col], a[pivot]);
    std::swap(inv[col], inv[pivot]);
    const double d = a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] /= d;
      inv[col][j] /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double factor = a[r][col];
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= factor * a[col][j];
        inv[r][j] -= factor * inv[col][j];
      }
    }
  }
  return inv;
}

struct LeastSquares {
  std::vector<double> beta;
  std::vector<double> residuals;
  double rss = 0.0;
  double s2 = 0.0;
  Matrix xtx_inv;
  std::vector<double> leverage;
};

// Normal-equations least squares: beta = (X'X)^{-1} X'y via explicit
// inversion, leverage via the explicit quadratic form x_i' (X'X)^{-1} x_i.
inline LeastSquares least_squares(const Matrix& x,
                                  const std::vector<double>& y) {
  const std::size_t n = x.size(), k = x[0].size();
  Matrix xtx(k, std::vector<double>(k, 0.0));
  std::vector<double> xty(k, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < k; ++a) {
      xty[a] += x[i][a] * y[i];
      for (std::size_t b = 0; b < k; ++b) xtx[a][b] += x[i][a] * x[i][b];
    }
  LeastSquares out;
  out.xtx_inv = invert(xtx);
  out.beta.assign(k, 0.0);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) out.beta[a] += out.xtx_inv[a][b] * xty[b];
  out.residuals.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double fit = 0.0;
    for (std::size_t a = 0; a < k; ++a) fit += x[i][a] * out.beta[a];
    out.residuals[i] = y[i] - fit;
    out.rss += out.residuals[i] * out.residuals[i];
  }
  out.s2 = out.rss / double(n - k);
  out.leverage.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double h = 0.0;
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b)
        h += x[i][a] * out.xtx_inv[a][b] * x[i][b];
    out.leverage[i] = h;
  }
  return out;
}

// Bisection inverse of a monotone increasing function; [lo, hi] must
// bracket the target.
inline double bisect(const std::function<double(double)>& f, double target,
                     double lo, double hi) {
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracle
