#pragma once

// Complete elliptic integrals, Jacobi dn and the theta function theta_3.
//
// The elliptic modulus m is used throughout (not the parameter m^2):
//   K(m) = int_0^{pi/2} dt / sqrt(1 - m^2 sin^2 t)
//   E(m) = int_0^{pi/2} sqrt(1 - m^2 sin^2 t) dt
// theta_3 uses the series sum_n exp(2 pi i n z + pi i n^2 tau).

#include <complex>

namespace kdvgas {

/// Largest modulus accepted by the asymptotic formulas.
inline constexpr double kMaxModulus = 1.0 - 1e-10;

double elliptic_K(double m);
double elliptic_E(double m);

/// Complementary modulus sqrt(1 - m^2), computed without cancellation near m = 1.
double complementary_modulus(double m);

/// Everything the elliptic asymptotic formulas consume for one modulus.
struct EllipticData {
  double m = 0.0;
  double K = 0.0;
  double E = 0.0;
  /// Half-period ratio tau; 2*tau = i K(m') / K(m).
  std::complex<double> tau;

  std::complex<double> two_tau() const { return 2.0 * tau; }
};

/// Requires 0 < m < 1.
EllipticData make_elliptic_data(double m);

double jacobi_dn(double z, double m);

std::complex<double> theta3(std::complex<double> z, std::complex<double> tau2);

/// First (order = 1) or second (order = 2) derivative of log theta_3(z; tau2)
/// with respect to z, for real z and purely imaginary tau2.
double dlog_theta3(double z, std::complex<double> tau2, int order);

}  // namespace kdvgas
