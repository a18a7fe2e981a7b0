#include "kdvgas/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "kdvgas/errors.hpp"

namespace kdvgas {
namespace {

constexpr int kMaxAgmIterations = 64;
constexpr int kMaxThetaTerms = 512;
constexpr double kThetaTermTol = 1e-16;
constexpr double kNearZeroTheta = 1e-12;

void check_modulus(double m, bool allow_one, const char* who) {
  const bool ok = std::isfinite(m) && m >= 0.0 && (allow_one ? m <= 1.0 : m < 1.0);
  if (!ok) {
    throw DomainError(std::string(who) + ": modulus " + std::to_string(m) +
                      (allow_one ? " outside [0,1]" : " outside [0,1)"));
  }
}

}  // namespace

double complementary_modulus(double m) { return std::sqrt((1.0 - m) * (1.0 + m)); }

double elliptic_K(double m) {
  check_modulus(m, false, "elliptic_K");
  double a = 1.0;
  double b = complementary_modulus(m);
  for (int i = 0; i < kMaxAgmIterations && std::abs(a - b) > 1e-16 * a; ++i) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return std::numbers::pi / (2.0 * a);
}

double elliptic_E(double m) {
  check_modulus(m, true, "elliptic_E");
  if (m == 1.0) return 1.0;
  // E = K (1 - sum_n 2^{n-1} c_n^2) along the AGM sequence, c_0 = m.
  double a = 1.0;
  double b = complementary_modulus(m);
  double c = m;
  double weight = 0.5;
  double sum = weight * c * c;
  for (int i = 0; i < kMaxAgmIterations && std::abs(c) > 1e-17 * a; ++i) {
    const double an = 0.5 * (a + b);
    c = c * c / (4.0 * an);
    b = std::sqrt(a * b);
    a = an;
    weight *= 2.0;
    sum += weight * c * c;
  }
  const double K = std::numbers::pi / (2.0 * a);
  return K * (1.0 - sum);
}

EllipticData make_elliptic_data(double m) {
  if (!(m > 0.0 && m < 1.0)) {
    throw DomainError("make_elliptic_data: modulus must lie in (0,1)");
  }
  EllipticData d;
  d.m = m;
  d.K = elliptic_K(m);
  d.E = elliptic_E(m);
  const double Kp = elliptic_K(complementary_modulus(m));
  d.tau = std::complex<double>(0.0, 0.5 * Kp / d.K);
  return d;
}

double jacobi_dn(double z, double m) {
  check_modulus(m, false, "jacobi_dn");
  if (!std::isfinite(z)) throw DomainError("jacobi_dn: non-finite argument");
  if (m == 0.0) return 1.0;

  // dn is even with period 2K: reduce to [0, K].
  const double K = elliptic_K(m);
  z = std::abs(std::remainder(z, 2.0 * K));

  // Descending Landen (Gauss) transformation.
  constexpr int kDepth = 32;
  double a[kDepth + 1];
  double c[kDepth + 1];
  a[0] = 1.0;
  c[0] = m;
  double b = complementary_modulus(m);
  int n = 0;
  while (n < kDepth && std::abs(c[n]) > 1e-14 * a[n]) {
    a[n + 1] = 0.5 * (a[n] + b);
    c[n + 1] = 0.5 * (a[n] - b);
    b = std::sqrt(a[n] * b);
    ++n;
  }
  double phi = std::ldexp(a[n] * z, n);
  for (int k = n; k > 0; --k) phi = 0.5 * (phi + std::asin(c[k] / a[k] * std::sin(phi)));
  const double sn = std::sin(phi);
  return std::sqrt(std::max(0.0, 1.0 - m * m * sn * sn));
}

std::complex<double> theta3(std::complex<double> z, std::complex<double> tau2) {
  if (!(tau2.imag() > 0.0)) throw DomainError("theta3: Im(tau) must be positive");
  using namespace std::complex_literals;
  constexpr double pi = std::numbers::pi;
  // Terms peak near n ~ |Im z| / Im tau before the Gaussian factor wins.
  const double peak = std::abs(z.imag()) / tau2.imag();
  std::complex<double> sum = 1.0;
  for (int n = 1; n <= kMaxThetaTerms; ++n) {
    const double dn = static_cast<double>(n);
    const std::complex<double> gauss = std::exp(1i * pi * dn * dn * tau2);
    const std::complex<double> term =
        gauss * (std::exp(2.0i * pi * dn * z) + std::exp(-2.0i * pi * dn * z));
    sum += term;
    if (dn > peak && std::abs(term) < kThetaTermTol * std::max(1.0, std::abs(sum))) {
      return sum;
    }
  }
  throw ConvergenceError("theta3: series did not converge within 512 terms");
}

double dlog_theta3(double z, std::complex<double> tau2, int order) {
  if (order != 1 && order != 2) throw DomainError("dlog_theta3: order must be 1 or 2");
  if (!(tau2.imag() > 0.0)) throw DomainError("dlog_theta3: Im(tau) must be positive");
  if (std::abs(tau2.real()) > 1e-12 * std::abs(tau2)) {
    throw DomainError("dlog_theta3: tau must be purely imaginary");
  }
  constexpr double pi = std::numbers::pi;
  const double logq = -pi * tau2.imag();

  double th = 1.0;
  double d1 = 0.0;
  double d2 = 0.0;
  bool converged = false;
  for (int n = 1; n <= kMaxThetaTerms; ++n) {
    const double dn = static_cast<double>(n);
    const double qn = 2.0 * std::exp(logq * dn * dn);
    const double w = 2.0 * pi * dn;
    const double s = std::sin(w * z);
    const double c = std::cos(w * z);
    th += qn * c;
    d1 -= qn * w * s;
    d2 -= qn * w * w * c;
    if (qn * w * w < kThetaTermTol) {
      converged = true;
      break;
    }
  }
  if (!converged) throw ConvergenceError("dlog_theta3: series did not converge within 512 terms");
  if (std::abs(th) < kNearZeroTheta) {
    throw NearZeroError("dlog_theta3: theta_3 vanishes at the requested argument");
  }
  const double g1 = d1 / th;
  return order == 1 ? g1 : d2 / th - g1 * g1;
}

}  // namespace kdvgas
