#include "kdvgas/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "kdvgas/errors.hpp"

namespace kdvgas {

QuadratureRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw DomainError("gauss_legendre: need at least one node");
  if (!(a < b)) throw DomainError("gauss_legendre: empty interval");
  constexpr double pi = std::numbers::pi;
  QuadratureRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = mid - half * x;
    rule.nodes[n - 1 - i] = mid + half * x;
    rule.weights[i] = half * w;
    rule.weights[n - 1 - i] = half * w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = mid;
  return rule;
}

QuadratureRule gauss_chebyshev(int n, double a, double b) {
  if (n < 1) throw DomainError("gauss_chebyshev: need at least one node");
  if (!(a < b)) throw DomainError("gauss_chebyshev: empty interval");
  constexpr double pi = std::numbers::pi;
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.assign(n, pi / n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (int k = 0; k < n; ++k) {
    // ascending order
    rule.nodes[k] = mid - half * std::cos((2.0 * k + 1.0) * pi / (2.0 * n));
  }
  return rule;
}

}  // namespace kdvgas
