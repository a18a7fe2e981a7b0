#pragma once

#include <vector>

namespace kdvgas {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  int size() const { return static_cast<int>(nodes.size()); }
};

/// n-point Gauss-Legendre rule on [a, b], nodes increasing.
QuadratureRule gauss_legendre(int n, double a, double b);

/// Rule for int_a^b f(s) ds / sqrt((s - a)(b - s)); every weight equals pi/n.
QuadratureRule gauss_chebyshev(int n, double a, double b);

}  // namespace kdvgas
