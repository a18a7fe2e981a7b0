#include "kdvgas/kdv_residual.hpp"

#include "kdvgas/errors.hpp"

namespace kdvgas {

double kdv_residual(const Field& u, double x, double t, double h, double k, int order) {
  if (order == 2) {
    const double um2 = u(x - 2 * h, t);
    const double um1 = u(x - h, t);
    const double u0 = u(x, t);
    const double up1 = u(x + h, t);
    const double up2 = u(x + 2 * h, t);
    const double ut = (u(x, t + k) - u(x, t - k)) / (2 * k);
    const double ux = (up1 - um1) / (2 * h);
    const double uxxx = (up2 - 2 * up1 + 2 * um1 - um2) / (2 * h * h * h);
    return ut - 6 * u0 * ux + uxxx;
  }
  if (order == 4) {
    double v[7];
    for (int i = 0; i < 7; ++i) v[i] = u(x + (i - 3) * h, t);
    const double ut =
        (-u(x, t + 2 * k) + 8 * u(x, t + k) - 8 * u(x, t - k) + u(x, t - 2 * k)) / (12 * k);
    const double ux = (-v[5] + 8 * v[4] - 8 * v[2] + v[1]) / (12 * h);
    const double uxxx =
        (-v[6] + 8 * v[5] - 13 * v[4] + 13 * v[2] - 8 * v[1] + v[0]) / (8 * h * h * h);
    return ut - 6 * v[3] * ux + uxxx;
  }
  throw DomainError("kdv_residual: order must be 2 or 4");
}

}  // namespace kdvgas
