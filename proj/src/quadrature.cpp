#include "avgsamp/quadrature.hpp"

#include <array>
#include <cmath>

namespace avgsamp {

namespace {

constexpr int kOrder = 15;

struct GaussRule {
  std::array<double, kOrder> x;  // nodes on [-1, 1]
  std::array<double, kOrder> w;
};

// Newton iteration on Legendre polynomials (standard gauleg construction).
GaussRule make_rule() {
  GaussRule rule{};
  const int n = kOrder;
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    rule.x[i] = -z;
    rule.x[n - 1 - i] = z;
    rule.w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.w[n - 1 - i] = rule.w[i];
  }
  return rule;
}

cdouble panel(const std::function<cdouble(double)>& f, double a, double b) {
  static const GaussRule rule = make_rule();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  cdouble acc(0.0, 0.0);
  for (int i = 0; i < kOrder; ++i) {
    acc += rule.w[i] * f(mid + half * rule.x[i]);
  }
  return half * acc;
}

cdouble adapt(const std::function<cdouble(double)>& f, double a, double b,
              cdouble whole, double rel_tol, double abs_tol, int depth) {
  if (depth > 48) {
    throw NumericalError("quadrature: subdivision limit reached on [" +
                         std::to_string(a) + ", " + std::to_string(b) + "]");
  }
  const double mid = 0.5 * (a + b);
  const cdouble left = panel(f, a, mid);
  const cdouble right = panel(f, mid, b);
  const cdouble refined = left + right;
  const double err = std::abs(refined - whole);
  if (err <= rel_tol * std::abs(refined) || err <= abs_tol) {
    return refined;
  }
  return adapt(f, a, mid, left, rel_tol, abs_tol, depth + 1) +
         adapt(f, mid, b, right, rel_tol, abs_tol, depth + 1);
}

}  // namespace

cdouble integrate(const std::function<cdouble(double)>& f, double a, double b,
                  double rel_tol, double abs_tol) {
  if (!(a <= b)) throw ValidationError("quadrature: requires a <= b");
  if (a == b) return cdouble(0.0, 0.0);
  return adapt(f, a, b, panel(f, a, b), rel_tol, abs_tol, 0);
}

}  // namespace avgsamp
