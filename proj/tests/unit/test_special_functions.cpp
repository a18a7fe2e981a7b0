#include <doctest.h>

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "kdvgas/errors.hpp"
#include "kdvgas/special_functions.hpp"

using namespace kdvgas;

namespace {

double K_oracle(double m) {
  auto f = [m](double th) { return 1.0 / std::sqrt(1.0 - m * m * std::sin(th) * std::sin(th)); };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, std::numbers::pi / 2,
                                                                       15, 1e-15);
}

double E_oracle(double m) {
  auto f = [m](double th) { return std::sqrt(1.0 - m * m * std::sin(th) * std::sin(th)); };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, std::numbers::pi / 2,
                                                                       15, 1e-15);
}

}  // namespace

TEST_CASE("elliptic_K") {
  CHECK(elliptic_K(0.0) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-15));
  CHECK(std::abs(elliptic_K(1.0 / 3.0) - K_oracle(1.0 / 3.0)) < 1e-13);
  CHECK(elliptic_K(1.0 - 1e-12) > 14.0);
  const double m = 1.0 - 1e-12;
  CHECK(elliptic_K(m) == doctest::Approx(0.5 * std::log(16.0 / (1.0 - m * m))).epsilon(1e-9));
  for (double m2 : {0.05, 0.5, 0.9, 0.99}) CHECK(std::abs(elliptic_K(m2) - K_oracle(m2)) < 1e-12);
  CHECK_THROWS_AS(elliptic_K(1.0), DomainError);
  CHECK_THROWS_AS(elliptic_K(-0.1), DomainError);
}

TEST_CASE("elliptic_E") {
  CHECK(elliptic_E(0.0) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-15));
  CHECK(elliptic_E(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(elliptic_E(1.0 / 3.0) - E_oracle(1.0 / 3.0)) < 1e-13);
  for (double m : {0.05, 0.5, 0.9, 0.99}) CHECK(std::abs(elliptic_E(m) - E_oracle(m)) < 1e-12);
}

TEST_CASE("complementary modulus and elliptic data") {
  CHECK(complementary_modulus(0.6) == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(complementary_modulus(1.0 - 1e-14) > 0.0);
  const EllipticData ed = make_elliptic_data(1.0 / 3.0);
  CHECK(ed.tau.real() == 0.0);
  CHECK(ed.two_tau().imag() ==
        doctest::Approx(elliptic_K(complementary_modulus(1.0 / 3.0)) / ed.K).epsilon(1e-14));
  CHECK_THROWS_AS(make_elliptic_data(0.0), DomainError);
}

TEST_CASE("jacobi_dn special values") {
  CHECK(jacobi_dn(1.234, 0.0) == 1.0);
  for (double m : {0.1, 1.0 / 3.0, 0.9}) CHECK(jacobi_dn(0.0, m) == doctest::Approx(1.0));
  const double m = 1.0 / 3.0;
  const double K = elliptic_K(m);
  CHECK(std::abs(jacobi_dn(K, m) - std::sqrt(8.0) / 3.0) < 1e-14);
  CHECK(std::abs(jacobi_dn(3.0 * K, m) - std::sqrt(8.0) / 3.0) < 1e-13);
  CHECK(std::abs(jacobi_dn(0.37 + 2.0 * K, m) - jacobi_dn(0.37, m)) < 1e-14);
  CHECK(std::abs(jacobi_dn(-0.37, m) - jacobi_dn(0.37, m)) < 1e-15);
}

TEST_CASE("jacobi_dn satisfies its differential equation") {
  // (dn')^2 = (1 - dn^2)(dn^2 - (1 - m^2))
  const double m = 0.7;
  const double h = 1e-4;
  for (double z : {0.2, 0.9, 1.7, 2.6}) {
    const double d = jacobi_dn(z, m);
    const double dp = (jacobi_dn(z + h, m) - jacobi_dn(z - h, m)) / (2 * h);
    CHECK(std::abs(dp * dp - (1 - d * d) * (d * d - (1 - m * m))) < 1e-7);
  }
}

TEST_CASE("theta3 periodicity, zero and limit") {
  const EllipticData ed = make_elliptic_data(1.0 / 3.0);
  const std::complex<double> tau = ed.two_tau();
  for (double x : {0.1, 0.33, 0.71}) {
    const std::complex<double> z(x, 0.05);
    CHECK(std::abs(theta3(z + 1.0, tau) - theta3(z, tau)) < 1e-13);
  }
  CHECK(std::abs(theta3(0.5 + tau / 2.0, tau)) < 1e-12);
  CHECK(std::abs(theta3(0.3, std::complex<double>(0.0, 40.0)) - 1.0) < 1e-15);
  CHECK_THROWS_AS(theta3(0.1, std::complex<double>(0.0, -1.0)), DomainError);
}

TEST_CASE("dlog_theta3") {
  const EllipticData ed = make_elliptic_data(1.0 / 3.0);
  const std::complex<double> tau = ed.two_tau();
  CHECK(std::abs(dlog_theta3(0.0, tau, 1)) < 1e-15);

  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double z = (i + 0.5) / 50.0;
    const double lhs = dlog_theta3(z, tau, 2) / (4.0 * ed.K * ed.K);
    const double dn = jacobi_dn(2.0 * ed.K * z + ed.K, ed.m);
    worst = std::max(worst, std::abs(lhs - (-ed.E / ed.K + dn * dn)));
  }
  CHECK(worst < 1e-10);

  const double h = 1e-5;
  for (double z : {0.1, 0.4, 0.8}) {
    const double fd = (dlog_theta3(z + h, tau, 1) - dlog_theta3(z - h, tau, 1)) / (2 * h);
    CHECK(std::abs(fd - dlog_theta3(z, tau, 2)) < 1e-7);
  }

  // real z never reaches the zero set when 2 tau is imaginary, but tau2 = 1 + ... is rejected
  CHECK_THROWS_AS(dlog_theta3(0.1, std::complex<double>(0.3, 1.0), 2), DomainError);
  CHECK_THROWS_AS(dlog_theta3(0.1, tau, 3), DomainError);
}

TEST_CASE("Legendre relation") {
  for (double m : {0.1, 1.0 / 3.0, 0.5, 0.9}) {
    const double mp = complementary_modulus(m);
    const double val = elliptic_E(m) * elliptic_K(mp) + elliptic_E(mp) * elliptic_K(m) -
                       elliptic_K(m) * elliptic_K(mp);
    CHECK(std::abs(val - std::numbers::pi / 2) < 1e-12);
  }
}
