#include <doctest.h>

#include <cmath>

#include "kdvgas/errors.hpp"
#include "kdvgas/kdv_residual.hpp"

using namespace kdvgas;

TEST_CASE("exact travelling wave has a small residual") {
  // u = -2 sech^2(x - 4t) solves u_t - 6 u u_x + u_xxx = 0
  const Field u = [](double x, double t) {
    const double c = std::cosh(x - 4.0 * t);
    return -2.0 / (c * c);
  };
  const double q1 = std::abs(kdv_residual(u, 0.3, 0.1, 4e-2, 4e-2, 4));
  const double q2 = std::abs(kdv_residual(u, 0.3, 0.1, 2e-2, 2e-2, 4));
  CHECK(q2 < 1e-3);
  CHECK(q2 / q1 == doctest::Approx(1.0 / 16.0).epsilon(0.1));
  const double r1 = std::abs(kdv_residual(u, 0.3, 0.1, 2e-2, 2e-2, 2));
  const double r2 = std::abs(kdv_residual(u, 0.3, 0.1, 1e-2, 1e-2, 2));
  CHECK(r2 / r1 == doctest::Approx(0.25).epsilon(0.05));
}

TEST_CASE("polynomial field against the analytic residual") {
  // u = x^3 + t x: u_t = x, u_x = 3x^2 + t, u_xxx = 6
  const Field u = [](double x, double t) { return x * x * x + t * x; };
  const double x = 0.7, t = 0.4;
  const double exact = x - 6.0 * (x * x * x + t * x) * (3 * x * x + t) + 6.0;
  CHECK(kdv_residual(u, x, t, 1e-2, 1e-2, 4) == doctest::Approx(exact).epsilon(1e-9));
  CHECK_THROWS_AS(kdv_residual(u, x, t, 1e-2, 1e-2, 3), DomainError);
}
