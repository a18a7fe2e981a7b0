#pragma once

#include <complex>
#include <optional>
#include <string>

#include "kdvgas/spectral_model.hpp"

namespace kdvgas {

using cplx = std::complex<double>;

enum class Region { ExponentialDecay, ModulatedWave, UnmodulatedWave };

const char* region_name(Region r);

/// Phase constants of the unmodulated band. Omega and Delta are purely imaginary,
/// phi is real, and Delta = Omega * phi.
struct PhaseData {
  cplx Omega;
  cplx Delta;
  double phi = 0.0;
  double kappa = 0.0;
};

struct WhithamState {
  double xi = 0.0;
  double alpha = 0.0;
  double m_alpha = 0.0;
  Region region = Region::UnmodulatedWave;
  /// The modulus was clamped to kMaxModulus at the edge of the fan.
  bool degenerate = false;
};

struct ModulatedPhases {
  double xi = 0.0;
  cplx Omega_tilde;
  cplx Delta_tilde;
  double phi_tilde = 0.0;
  /// -i pi eta2 / K(m_alpha)
  cplx Omega_alpha;
};

/// Number of Gauss-Chebyshev nodes used for the band integrals.
inline constexpr int kPhaseNodes = 256;

cplx frequency_Omega(const GasSpectrum& spectrum);
double kappa_constant(const GasSpectrum& spectrum);
double phase_phi(const GasSpectrum& spectrum, const ReflectionCoefficient& r);
cplx phase_Delta(const GasSpectrum& spectrum, const ReflectionCoefficient& r);
PhaseData phase_data(const GasSpectrum& spectrum, const ReflectionCoefficient& r);

/// xi(alpha) = (eta2^2 / 2) W(alpha / eta2).
double whitham_xi_of_alpha(double alpha, const GasSpectrum& spectrum);
double xi_crit(const GasSpectrum& spectrum);
/// Root of xi(alpha) = xi on [eta1, eta2 kMaxModulus]. Values of xi between
/// xi(eta2 kMaxModulus) and eta2^2 return the clamped endpoint.
double whitham_alpha_of_xi(double xi, const GasSpectrum& spectrum);

/// Region and modulation parameter at (x, t). t = 0 with x < 0 is the static tail.
WhithamState whitham_state(double x, double t, const GasSpectrum& spectrum);

ModulatedPhases phases_modulated(double alpha, const GasSpectrum& spectrum,
                                 const ReflectionCoefficient& r);

struct AsymptoticValue {
  double u = 0.0;
  WhithamState state;
};

AsymptoticValue u_asymptotic(double x, double t, const GasSpectrum& spectrum,
                             const ReflectionCoefficient& r);
double u_theta_form(double x, double t, const GasSpectrum& spectrum,
                    const ReflectionCoefficient& r);

/// Average of the travelling wave over one period for a band ending at b (eta1 or alpha).
double wave_mean(double b, const GasSpectrum& spectrum);

/// Square root of (z^2 - b^2)(z^2 - eta2^2), positive on (eta2, inf), cut on the bands.
cplx R_branch(cplx z, double b, double eta2);

enum class GMode { Static, Modulated, Subcritical };

struct GReport {
  GMode mode = GMode::Static;
  double xi = 0.0;
  double alpha = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  /// Vanishing-moment residuals over the gap.
  double moment_q1 = 0.0;
  double moment_q2 = 0.0;
  int sign_samples = 0;
  int sign_failures = 0;
  /// Smallest |Re| among the sampled sign checks.
  double sign_margin = 0.0;
  std::optional<cplx> omega_period;
  std::optional<cplx> omega_closed;
  std::optional<cplx> omega_bar_printed;
  std::optional<double> dg_error;
  std::optional<double> domega_error;
  bool pass = false;
};

/// xi is ignored in Static mode; Modulated requires xi in (xi_crit, eta2^2),
/// Subcritical requires xi < xi_crit.
GReport g_diagnostics(const GasSpectrum& spectrum, GMode mode, double xi = 0.0);

}  // namespace kdvgas
