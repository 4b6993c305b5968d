#include "bmom/quadrature.hpp"

#include <cmath>
#include <string>

#include "bmom/errors.hpp"

namespace bmom::quadrature {

namespace {

struct Integrand {
  const std::function<double(double)>& f;

  double operator()(double x) const {
    const double v = f(x);
    if (!std::isfinite(v))
      throw numeric_error("adaptive_simpson: integrand not finite at x=" +
                          std::to_string(x));
    return v;
  }
};

double simpson(double fa, double fm, double fb, double h) {
  return h / 6.0 * (fa + 4.0 * fm + fb);
}

double refine(const Integrand& f, double a, double b, double fa, double fm,
              double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(fa, flm, fm, m - a);
  const double right = simpson(fm, frm, fb, b - m);
  const double delta = left + right - whole;
  // 15 = 2^4 - 1, the Richardson factor for Simpson's rule
  if (std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  if (depth <= 0)
    throw numeric_error("adaptive_simpson: depth exhausted on [" +
                        std::to_string(a) + ", " + std::to_string(b) +
                        "], estimate " + std::to_string(left + right) +
                        ", residual " + std::to_string(delta));
  return refine(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         refine(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol, int max_depth) {
  if (!(std::isfinite(a) && std::isfinite(b)))
    throw domain_error("adaptive_simpson: endpoints must be finite");
  if (!(tol > 0.0)) throw domain_error("adaptive_simpson: tol must be positive");
  if (a == b) return 0.0;
  const Integrand g{f};
  const double fa = g(a);
  const double m = 0.5 * (a + b);
  const double fm = g(m);
  const double fb = g(b);
  const double whole = simpson(fa, fm, fb, b - a);
  return refine(g, a, b, fa, fm, fb, whole, tol, max_depth);
}

}  // namespace bmom::quadrature
