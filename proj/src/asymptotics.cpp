#include "kdvgas/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "kdvgas/errors.hpp"
#include "kdvgas/quadrature.hpp"
#include "kdvgas/special_functions.hpp"

namespace kdvgas {
namespace {

using namespace std::complex_literals;
constexpr double pi = std::numbers::pi;

// int_a^b f(z) dz / sqrt((z - a)(b - z))
double chebyshev(const std::function<double(double)>& f, double a, double b,
                 int n = kPhaseNodes) {
  const QuadratureRule q = gauss_chebyshev(n, a, b);
  double s = 0.0;
  for (int k = 0; k < n; ++k) s += q.weights[k] * f(q.nodes[k]);
  return s;
}

// int_b^eta2 f(z) / |R_b(z)| dz over the band (b, eta2)
double band_integral(const std::function<double(double)>& f, double b, double eta2) {
  return chebyshev([&](double z) { return f(z) / std::sqrt((z + b) * (z + eta2)); }, b, eta2);
}

// int_{-eta2}^{-b} f(z) / |R_b(z)| dz over the mirrored band
double mirror_band_integral(const std::function<double(double)>& f, double b, double eta2) {
  return chebyshev([&](double z) { return f(z) / std::sqrt((b - z) * (eta2 - z)); }, -eta2, -b);
}

// int_{-b}^{b} f(z) / R_b(z) dz across the gap, where R_b is negative
double gap_integral(const std::function<double(double)>& f, double b, double eta2) {
  return -chebyshev([&](double z) { return f(z) / std::sqrt(eta2 * eta2 - z * z); }, -b, b);
}

struct GConstants {
  double c1 = 0.0;
  double c2 = 0.0;
};

GConstants g_constants(double b, double eta2) {
  const double m = b / eta2;
  const double ek = elliptic_E(m) / elliptic_K(m);
  GConstants c;
  c.c1 = -eta2 * eta2 + eta2 * eta2 * ek;
  c.c2 = b * b * eta2 * eta2 / 3.0 + (eta2 * eta2 + b * b) * c.c1 / 6.0;
  return c;
}

double dn_wave(double x, double t, double band, double phase, double eta2) {
  const double m = band / eta2;
  const double K = elliptic_K(m);
  const double arg = eta2 * (x - 2.0 * (band * band + eta2 * eta2) * t + phase) + K;
  const double dn = jacobi_dn(arg, m);
  return eta2 * eta2 - band * band - 2.0 * eta2 * eta2 * dn * dn;
}

double theta_wave(double x, double t, double band, double phase, double eta2) {
  const EllipticData ed = make_elliptic_data(band / eta2);
  const double scale = eta2 / (2.0 * ed.K);
  const double z = scale * (x - 2.0 * (band * band + eta2 * eta2) * t + phase);
  return eta2 * eta2 - band * band - 2.0 * eta2 * eta2 * ed.E / ed.K -
         2.0 * scale * scale * dlog_theta3(z, ed.two_tau(), 2);
}

// int_{start}^{lambda} f(z) dz along the straight segment, with z = start + (lambda - start) s^2
// to absorb the square-root zero of R at the start point.
cplx path_integral(const std::function<cplx(cplx)>& f, double start, cplx lambda) {
  static const QuadratureRule q = gauss_legendre(200, 0.0, 1.0);
  const cplx d = lambda - start;
  cplx s = 0.0;
  for (int k = 0; k < q.size(); ++k) {
    const double u = q.nodes[k];
    s += q.weights[k] * f(start + d * (u * u)) * (2.0 * u);
  }
  return s * d;
}

}  // namespace

const char* region_name(Region r) {
  switch (r) {
    case Region::ExponentialDecay:
      return "ExponentialDecay";
    case Region::ModulatedWave:
      return "ModulatedWave";
    case Region::UnmodulatedWave:
      return "UnmodulatedWave";
  }
  return "?";
}

cplx R_branch(cplx z, double b, double eta2) {
  return std::sqrt(z - eta2) * std::sqrt(z - b) * std::sqrt(z + b) * std::sqrt(z + eta2);
}

cplx frequency_Omega(const GasSpectrum& spectrum) {
  return cplx(0.0, -pi * spectrum.eta2 / elliptic_K(spectrum.modulus()));
}

double kappa_constant(const GasSpectrum& spectrum) {
  const double m = spectrum.modulus();
  return spectrum.eta2 * spectrum.eta2 * (elliptic_E(m) / elliptic_K(m) - 1.0);
}

double phase_phi(const GasSpectrum& spectrum, const ReflectionCoefficient& r) {
  // R_+ = i |R| on the band, so (1 / pi i) int log r / R_+ = -(1 / pi) int log r / |R|.
  const double J =
      band_integral([&](double z) { return r.log_r(z); }, spectrum.eta1, spectrum.eta2);
  return -J / pi;
}

cplx phase_Delta(const GasSpectrum& spectrum, const ReflectionCoefficient& r) {
  const double e1 = spectrum.eta1;
  const double e2 = spectrum.eta2;
  // R_+ = i|R| on (eta1, eta2) and -i|R| on (-eta2, -eta1)
  const cplx on_sigma1 = -1.0i * band_integral([&](double z) { return r.log_r(z); }, e1, e2);
  const cplx on_sigma2 =
      1.0i * mirror_band_integral([&](double z) { return r.log_r(-z); }, e1, e2);
  const double gap = gap_integral([](double) { return 1.0; }, e1, e2);
  return (on_sigma1 - on_sigma2) / gap;
}

PhaseData phase_data(const GasSpectrum& spectrum, const ReflectionCoefficient& r) {
  PhaseData p;
  p.Omega = frequency_Omega(spectrum);
  p.kappa = kappa_constant(spectrum);
  p.phi = phase_phi(spectrum, r);
  p.Delta = phase_Delta(spectrum, r);
  return p;
}

double whitham_xi_of_alpha(double alpha, const GasSpectrum& spectrum) {
  const double e2 = spectrum.eta2;
  if (!(alpha > 0.0 && alpha < e2)) {
    throw DomainError("whitham_xi_of_alpha: alpha must lie in (0, eta2)");
  }
  const double m = alpha / e2;
  if (m > kMaxModulus + 4.0 * std::numeric_limits<double>::epsilon()) {
    throw DegeneracyError("whitham_xi_of_alpha: modulus too close to 1");
  }
  const double ek = elliptic_E(m) / elliptic_K(m);
  const double m2 = m * m;
  const double W = 1.0 + m2 + 2.0 * m2 * (1.0 - m2) / (1.0 - m2 - ek);
  return 0.5 * e2 * e2 * W;
}

double xi_crit(const GasSpectrum& spectrum) {
  const double a = spectrum.eta1 * spectrum.eta1;
  const double b = spectrum.eta2 * spectrum.eta2;
  const double m = spectrum.modulus();
  const double ek = elliptic_E(m) / elliptic_K(m);
  return 0.5 * (a + b) + a * (a - b) / (a - b + b * ek);
}

double whitham_alpha_of_xi(double xi, const GasSpectrum& spectrum) {
  const double e2sq = spectrum.eta2 * spectrum.eta2;
  const double xc = xi_crit(spectrum);
  if (!std::isfinite(xi) || xi < xc - 1e-12 * std::max(1.0, std::abs(xc)) || xi >= e2sq) {
    std::ostringstream os;
    os.precision(17);
    os << "whitham_alpha_of_xi: xi = " << xi << " outside the modulated window [" << xc << ", "
       << e2sq << ")";
    throw RangeError(os.str());
  }
  if (xi <= xc) return spectrum.eta1;
  double lo = spectrum.eta1;
  double hi = spectrum.eta2 * kMaxModulus;
  if (xi >= whitham_xi_of_alpha(hi, spectrum)) return hi;
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    (whitham_xi_of_alpha(mid, spectrum) < xi ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

WhithamState whitham_state(double x, double t, const GasSpectrum& spectrum) {
  if (!std::isfinite(x) || !std::isfinite(t) || t < 0.0) {
    throw RangeError("whitham_state: need finite x and t >= 0");
  }
  WhithamState s;
  const double e2 = spectrum.eta2;
  if (t == 0.0) {
    if (x >= 0.0) throw RangeError("no asymptotic formula for t = 0, x >= 0");
    s.xi = -std::numeric_limits<double>::infinity();
    s.alpha = spectrum.eta1;
    s.m_alpha = spectrum.modulus();
    s.region = Region::UnmodulatedWave;
    return s;
  }
  s.xi = x / (4.0 * t);
  if (s.xi > e2 * e2) {
    s.region = Region::ExponentialDecay;
    s.alpha = e2;
    s.m_alpha = 1.0;
    return s;
  }
  if (s.xi > xi_crit(spectrum)) {
    s.region = Region::ModulatedWave;
    const double top = e2 * kMaxModulus;
    s.alpha = s.xi < e2 * e2 ? whitham_alpha_of_xi(s.xi, spectrum) : top;
    s.degenerate = s.alpha >= top;
    s.m_alpha = s.alpha / e2;
    return s;
  }
  s.region = Region::UnmodulatedWave;
  s.alpha = spectrum.eta1;
  s.m_alpha = spectrum.modulus();
  return s;
}

ModulatedPhases phases_modulated(double alpha, const GasSpectrum& spectrum,
                                 const ReflectionCoefficient& r) {
  const double e2 = spectrum.eta2;
  if (!(alpha >= spectrum.eta1 && alpha < e2)) {
    throw DomainError("phases_modulated: alpha must lie in [eta1, eta2)");
  }
  const double m = alpha / e2;
  if (m > kMaxModulus) throw DegeneracyError("phases_modulated: modulus too close to 1");
  const double K = elliptic_K(m);
  ModulatedPhases p;
  p.xi = whitham_xi_of_alpha(alpha, spectrum);
  p.Omega_tilde = 2.0i * pi * e2 * (alpha * alpha + e2 * e2 - 2.0 * p.xi) / K;
  p.Omega_alpha = cplx(0.0, -pi * e2 / K);
  const double J = band_integral([&](double z) { return r.log_r(z); }, alpha, e2);
  p.phi_tilde = -J / pi;
  const double gap = gap_integral([](double) { return 1.0; }, alpha, e2);
  p.Delta_tilde = 2.0 * (-1.0i * J) / gap;
  return p;
}

AsymptoticValue u_asymptotic(double x, double t, const GasSpectrum& spectrum,
                             const ReflectionCoefficient& r) {
  AsymptoticValue out;
  out.state = whitham_state(x, t, spectrum);
  switch (out.state.region) {
    case Region::ExponentialDecay:
      out.u = 0.0;
      break;
    case Region::ModulatedWave: {
      const ModulatedPhases p = phases_modulated(out.state.alpha, spectrum, r);
      out.u = dn_wave(x, t, out.state.alpha, p.phi_tilde, spectrum.eta2);
      break;
    }
    case Region::UnmodulatedWave:
      out.u = dn_wave(x, t, spectrum.eta1, phase_phi(spectrum, r), spectrum.eta2);
      break;
  }
  return out;
}

double u_theta_form(double x, double t, const GasSpectrum& spectrum,
                    const ReflectionCoefficient& r) {
  const WhithamState s = whitham_state(x, t, spectrum);
  switch (s.region) {
    case Region::ExponentialDecay:
      return 0.0;
    case Region::ModulatedWave: {
      const ModulatedPhases p = phases_modulated(s.alpha, spectrum, r);
      return theta_wave(x, t, s.alpha, p.phi_tilde, spectrum.eta2);
    }
    case Region::UnmodulatedWave:
      break;
  }
  return theta_wave(x, t, spectrum.eta1, phase_phi(spectrum, r), spectrum.eta2);
}

double wave_mean(double b, const GasSpectrum& spectrum) {
  const double m = b / spectrum.eta2;
  const double e2sq = spectrum.eta2 * spectrum.eta2;
  return e2sq - b * b - 2.0 * e2sq * elliptic_E(m) / elliptic_K(m);
}

GReport g_diagnostics(const GasSpectrum& spectrum, GMode mode, double xi) {
  const double e1 = spectrum.eta1;
  const double e2 = spectrum.eta2;
  GReport rep;
  rep.mode = mode;
  rep.xi = xi;
  const double xc = xi_crit(spectrum);
  switch (mode) {
    case GMode::Static:
      rep.alpha = e1;
      break;
    case GMode::Modulated:
      if (!(xi > xc && xi < e2 * e2)) throw RangeError("g_diagnostics: xi outside the fan");
      rep.alpha = whitham_alpha_of_xi(xi, spectrum);
      break;
    case GMode::Subcritical:
      if (!(xi < xc)) throw RangeError("g_diagnostics: xi must be below xi_crit");
      rep.alpha = e1;
      break;
  }
  const double b = rep.alpha;
  const GConstants c = g_constants(b, e2);
  rep.c1 = c.c1;
  rep.c2 = c.c2;
  auto Q1 = [&](auto z) { return z * z + c.c1; };
  auto Q2 = [&](auto z) { return z * z * z * z - 0.5 * z * z * (b * b + e2 * e2) + c.c2; };

  rep.moment_q1 = std::abs(gap_integral([&](double z) { return Q1(z); }, b, e2));
  rep.moment_q2 = std::abs(gap_integral([&](double z) { return Q2(z); }, b, e2));

  // Sign checks on upper lens arcs over both bands.
  std::function<cplx(cplx)> integrand;
  if (mode == GMode::Static) {
    integrand = [&](cplx z) { return Q1(z) / R_branch(z, b, e2); };
  } else {
    integrand = [&](cplx z) { return (12.0 * Q2(z) - 4.0 * xi * Q1(z)) / R_branch(z, b, e2); };
  }
  // Static: Re(g - lambda) = -Re F; the t > 0 modes use Re(2g + 8 l^3 - 8 xi l) = 2 Re F.
  const double weight = mode == GMode::Static ? -1.0 : 2.0;
  const double want_sigma1 = mode == GMode::Static ? -1.0 : 1.0;
  constexpr int kArc = 50;
  const double mid = 0.5 * (b + e2);
  const double hw = 0.5 * (e2 - b);
  rep.sign_margin = std::numeric_limits<double>::infinity();
  auto record = [&](double value, double want) {
    ++rep.sign_samples;
    if (!(value * want > 0.0)) ++rep.sign_failures;
    rep.sign_margin = std::min(rep.sign_margin, std::abs(value));
  };
  for (int k = 0; k < kArc; ++k) {
    const double th = pi * (k + 0.5) / kArc;
    const cplx over1(mid + hw * std::cos(th), 0.5 * hw * std::sin(th));
    const cplx over2(-mid + hw * std::cos(th), 0.5 * hw * std::sin(th));
    record(weight * path_integral(integrand, e2, over1).real(), want_sigma1);
    record(weight * path_integral(integrand, e2, over2).real(), -want_sigma1);
  }
  if (mode == GMode::Modulated && b > e1) {
    // g_+ + g_- + 8 l^3 - 8 xi l = 2 int_alpha^l P / R_alpha is negative on (eta1, alpha).
    for (int k = 0; k < kArc; ++k) {
      const double lam = e1 + (b - e1) * (k + 0.5) / kArc;
      const cplx v = 2.0 * path_integral(
                               [&](cplx z) {
                                 return (12.0 * Q2(z) - 4.0 * xi * Q1(z)) /
                                        R_branch(cplx(z.real(), 0.0), b, e2);
                               },
                               b, cplx(lam, 0.0));
      record(v.real(), -1.0);
    }
  }

  const double K = elliptic_K(b / e2);
  if (mode == GMode::Static) {
    const double B = band_integral([&](double z) { return Q1(z); }, b, e2);
    rep.omega_period = -2.0i * B;
    rep.omega_closed = frequency_Omega(spectrum);
  } else {
    const double B1 = band_integral([&](double z) { return Q1(z); }, b, e2);
    const double B2 = band_integral([&](double z) { return Q2(z); }, b, e2);
    rep.omega_period = 1.0i * (24.0 * B2 - 8.0 * xi * B1);
    rep.omega_closed = 2.0i * pi * e2 * (b * b + e2 * e2 - 2.0 * xi) / K;
    if (mode == GMode::Subcritical) {
      rep.omega_bar_printed = 2.0i * pi * e2 * (2.0 * xi - (e1 * e1 + e2 * e2)) / K;
    }
  }

  if (mode == GMode::Modulated) {
    const double t = 1.0;
    const double x0 = 4.0 * t * xi;
    const cplx lam(2.0, 0.5);
    auto tg = [&](double x) {
      const double xs = x / (4.0 * t);
      const double a = whitham_alpha_of_xi(xs, spectrum);
      const GConstants cc = g_constants(a, e2);
      const cplx q1 = lam * lam + cc.c1;
      const cplx q2 = lam * lam * lam * lam - 0.5 * lam * lam * (a * a + e2 * e2) + cc.c2;
      const cplx R = R_branch(lam, a, e2);
      return t * (-12.0 * lam * lam + 4.0 * xs + 12.0 * q2 / R - 4.0 * xs * q1 / R);
    };
    auto tom = [&](double x) {
      const double xs = x / (4.0 * t);
      const double a = whitham_alpha_of_xi(xs, spectrum);
      return t * 2.0i * pi * e2 * (a * a + e2 * e2 - 2.0 * xs) / elliptic_K(a / e2);
    };
    const double h = 1e-5;
    const cplx fd_g = (tg(x0 + h) - tg(x0 - h)) / (2.0 * h);
    const cplx exact_g = 1.0 - Q1(lam) / R_branch(lam, b, e2);
    rep.dg_error = std::abs(fd_g - exact_g);
    const cplx fd_o = (tom(x0 + h) - tom(x0 - h)) / (2.0 * h);
    rep.domega_error = std::abs(fd_o - cplx(0.0, -pi * e2 / K));
  }

  const double omega_err = std::abs(*rep.omega_period - *rep.omega_closed);
  rep.pass = rep.moment_q1 < 1e-10 && rep.moment_q2 < 1e-10 && rep.sign_failures == 0 &&
             omega_err < 1e-8 * std::max(1.0, std::abs(*rep.omega_closed)) &&
             (!rep.dg_error || *rep.dg_error < 1e-6) &&
             (!rep.domega_error || *rep.domega_error < 1e-6);
  return rep;
}

}  // namespace kdvgas
