#include "t_quadrature.hpp"

#include <cmath>

namespace covquiz::oracle {

namespace {

struct Density {
  double df;
  double log_norm;

  explicit Density(double v)
      : df(v), log_norm(std::lgamma((v + 1) / 2) - std::lgamma(v / 2) - 0.5 * std::log(v * M_PI)) {}

  double operator()(double x) const { return std::exp(log_norm - (df + 1) / 2 * std::log1p(x * x / df)); }
};

double simpson(const Density& f, double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6 * (fa + 4 * fm + fb);
}

double adapt(const Density& f, double a, double b, double fa, double fm, double fb, double whole, double eps, int depth) {
  const double m = (a + b) / 2;
  const double lm = (a + m) / 2;
  const double rm = (m + b) / 2;
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(f, a, m, fa, flm, fm);
  const double right = simpson(f, m, b, fm, frm, fb);
  if (depth <= 0 || std::fabs(left + right - whole) <= 15 * eps) return left + right + (left + right - whole) / 15;
  return adapt(f, a, m, fa, flm, fm, left, eps / 2, depth - 1) + adapt(f, m, b, fm, frm, fb, right, eps / 2, depth - 1);
}

double integrate(const Density& f, double a, double b) {
  const double fa = f(a), fb = f(b), fm = f((a + b) / 2);
  return adapt(f, a, b, fa, fm, fb, simpson(f, a, b, fa, fm, fb), 1e-13, 60);
}

}  // namespace

double t_two_tailed_quadrature(double t, double df) {
  const Density f(df);
  const double x = std::fabs(t);
  // split into unit pieces so the adaptive rule sees the peak and the tail separately
  double area = 0;
  double lo = 0;
  while (lo < x) {
    const double hi = std::fmin(lo + 1.0, x);
    area += integrate(f, lo, hi);
    lo = hi;
  }
  return 1.0 - 2.0 * area;
}

}  // namespace covquiz::oracle
