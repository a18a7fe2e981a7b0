#pragma once

#include <functional>

namespace kdvgas {

using Field = std::function<double(double, double)>;

/// u_t - 6 u u_x + u_xxx at (x, t) by central differences with spacing h in x and k in t.
/// order selects the second- or fourth-order stencils.
double kdv_residual(const Field& u, double x, double t, double h, double k, int order = 2);

}  // namespace kdvgas
