#include "kdvgas/spectral_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include <boost/math/special_functions/fpclassify.hpp>  // pchip.hpp needs isnan in scope
#include <boost/math/interpolators/pchip.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "kdvgas/errors.hpp"

namespace kdvgas {
namespace {

constexpr int kPositivityGrid = 2001;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

double integrate(const Density& f, double a, double b, unsigned max_depth = 15) {
  if (!(b > a)) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, max_depth, 1e-14);
}

}  // namespace

GasSpectrum::GasSpectrum(double e1, double e2) : eta1(e1), eta2(e2) {
  if (!(std::isfinite(e1) && std::isfinite(e2) && e1 > 0.0 && e1 < e2)) {
    throw DomainError("GasSpectrum: need 0 < eta1 < eta2, got (" + fmt(e1) + ", " + fmt(e2) + ")");
  }
}

ReflectionCoefficient ReflectionCoefficient::constant(const GasSpectrum& spectrum, double value) {
  ReflectionCoefficient r;
  r.kind_ = Kind::constant;
  r.eta1_ = spectrum.eta1;
  r.eta2_ = spectrum.eta2;
  r.value_ = value;
  r.zero_ = (value == 0.0);
  r.validate();
  return r;
}

ReflectionCoefficient ReflectionCoefficient::polynomial(const GasSpectrum& spectrum,
                                                        std::vector<double> coeffs) {
  if (coeffs.empty()) throw DomainError("polynomial reflection: no coefficients");
  ReflectionCoefficient r;
  r.kind_ = Kind::polynomial;
  r.eta1_ = spectrum.eta1;
  r.eta2_ = spectrum.eta2;
  r.coeffs_ = std::move(coeffs);
  r.validate();
  return r;
}

ReflectionCoefficient ReflectionCoefficient::tabulated(const GasSpectrum& spectrum,
                                                       std::vector<double> zeta,
                                                       std::vector<double> r1) {
  if (zeta.size() != r1.size()) throw DomainError("tabulated reflection: size mismatch");
  if (zeta.size() < 4) throw DomainError("tabulated reflection: need at least 4 samples");
  for (std::size_t i = 1; i < zeta.size(); ++i) {
    if (!(zeta[i] > zeta[i - 1])) {
      throw DomainError("tabulated reflection: abscissae must be strictly increasing");
    }
  }
  if (zeta.front() > spectrum.eta1 || zeta.back() < spectrum.eta2) {
    throw DomainError("tabulated reflection: samples must cover [eta1, eta2]");
  }
  ReflectionCoefficient r;
  r.kind_ = Kind::tabulated;
  r.eta1_ = spectrum.eta1;
  r.eta2_ = spectrum.eta2;
  r.zeta_ = zeta;
  r.samples_ = r1;
  auto spline = std::make_shared<boost::math::interpolators::pchip<std::vector<double>>>(
      std::move(zeta), std::move(r1));
  r.eval_ = std::make_shared<const std::function<double(double)>>(
      [spline](double z) { return (*spline)(z); });
  r.validate();
  return r;
}

ReflectionCoefficient ReflectionCoefficient::function(const GasSpectrum& spectrum,
                                                      std::function<double(double)> r1) {
  if (!r1) throw DomainError("function reflection: empty callable");
  ReflectionCoefficient r;
  r.kind_ = Kind::function;
  r.eta1_ = spectrum.eta1;
  r.eta2_ = spectrum.eta2;
  r.eval_ = std::make_shared<const std::function<double(double)>>(std::move(r1));
  r.validate();
  return r;
}

void ReflectionCoefficient::validate() {
  if (kind_ == Kind::constant) {
    if (!std::isfinite(value_) || value_ < 0.0) {
      throw PositivityError("reflection coefficient must be positive, got constant " + fmt(value_));
    }
    return;
  }
  for (int i = 0; i < kPositivityGrid; ++i) {
    const double z = eta1_ + (eta2_ - eta1_) * i / (kPositivityGrid - 1);
    const double v = r1(z);
    if (!std::isfinite(v) || v <= 0.0) {
      throw PositivityError("reflection coefficient not positive at zeta = " + fmt(z) +
                            " (r1 = " + fmt(v) + ")");
    }
  }
}

double ReflectionCoefficient::r1(double zeta) const {
  switch (kind_) {
    case Kind::constant:
      return value_;
    case Kind::polynomial: {
      const double z2 = zeta * zeta;
      double acc = 0.0;
      for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z2 + *it;
      return acc;
    }
    case Kind::tabulated:
      zeta = std::clamp(zeta, zeta_.front(), zeta_.back());
      return (*eval_)(zeta);
    case Kind::function:
      return (*eval_)(zeta);
  }
  return 0.0;
}

double ReflectionCoefficient::log_r(double zeta) const {
  const double v = r(zeta);
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw QuadratureError("log r undefined: r(" + fmt(zeta) + ") = " + fmt(v));
  }
  return std::log(v);
}

nlohmann::json ReflectionCoefficient::to_json() const {
  switch (kind_) {
    case Kind::constant:
      return {{"kind", "constant"}, {"r1", value_}};
    case Kind::polynomial:
      return {{"kind", "polynomial"}, {"coefficients", coeffs_}};
    case Kind::tabulated:
      return {{"kind", "tabulated"}, {"zeta", zeta_}, {"r1", samples_}};
    case Kind::function:
      return {{"kind", "function"}};
  }
  return {};
}

void SolitonEnsemble::validate(const GasSpectrum& spectrum) const {
  if (kappa.empty()) throw DomainError("ensemble: no poles");
  if (kappa.size() != c_tilde.size()) throw DomainError("ensemble: size mismatch");
  for (std::size_t j = 0; j < kappa.size(); ++j) {
    if (!(kappa[j] > spectrum.eta1 && kappa[j] <= spectrum.eta2)) {
      throw DomainError("ensemble: pole " + fmt(kappa[j]) + " outside the band");
    }
    if (j > 0 && !(kappa[j] > kappa[j - 1])) {
      throw DomainError("ensemble: poles must be strictly increasing");
    }
    if (!(c_tilde[j] > 0.0) || !std::isfinite(c_tilde[j])) {
      throw DomainError("ensemble: norming constants must be positive");
    }
  }
}

std::vector<double> sample_poles(int N, const GasSpectrum& spectrum,
                                 const std::optional<Density>& density) {
  if (N < 1) throw DomainError("sample_poles: N must be at least 1");
  const double a = spectrum.eta1;
  const double b = spectrum.eta2;
  std::vector<double> kappa(N);
  if (!density) {
    for (int j = 1; j <= N; ++j) kappa[j - 1] = j == N ? b : a + j * (b - a) / N;
    return kappa;
  }

  const Density& rho = *density;
  for (int i = 0; i < kPositivityGrid; ++i) {
    const double z = a + (b - a) * i / (kPositivityGrid - 1);
    const double v = rho(z);
    if (!std::isfinite(v) || v < 0.0) {
      throw DensityError("sample_poles: density negative or non-finite at " + fmt(z));
    }
  }
  const double mass = integrate(rho, a, b);
  if (!std::isfinite(mass) || std::abs(mass - 1.0) > 1e-8) {
    throw DensityError("sample_poles: density mass is " + fmt(mass) + ", expected 1");
  }

  double lo = a;
  for (int j = 1; j <= N; ++j) {
    if (j == N) {
      kappa[j - 1] = b;
      break;
    }
    const double target = static_cast<double>(j) / N;
    // integrate from the previous root
    const double base = j == 1 ? 0.0 : target - 1.0 / N;
    const double from = lo;
    auto f = [&](double k) { return base + integrate(rho, from, k, 6) - target; };
    std::uintmax_t iters = 200;
    auto tol = [](double x, double y) { return std::abs(x - y) <= 1e-14; };
    auto [left, right] = boost::math::tools::toms748_solve(f, from, b, f(from), f(b), tol, iters);
    kappa[j - 1] = 0.5 * (left + right);
    lo = kappa[j - 1];
  }
  for (int j = 1; j < N; ++j) {
    if (!(kappa[j] > kappa[j - 1])) {
      throw DensityError("sample_poles: density vanishes on an interval, quantiles collide");
    }
  }
  return kappa;
}

std::vector<double> norming_constants(const std::vector<double>& poles,
                                      const ReflectionCoefficient& r, int N,
                                      const GasSpectrum& spectrum) {
  if (N != static_cast<int>(poles.size())) {
    throw DomainError("norming_constants: N does not match the number of poles");
  }
  std::vector<double> c(poles.size());
  for (std::size_t j = 0; j < poles.size(); ++j) {
    if (!(poles[j] >= spectrum.eta1 && poles[j] <= spectrum.eta2)) {
      throw DomainError("norming_constants: pole outside the band");
    }
    const double v = r.r1(poles[j]);
    if (!(v > 0.0)) {
      throw PositivityError("norming_constants: reflection coefficient not positive at kappa = " +
                            fmt(poles[j]));
    }
    c[j] = spectrum.width() * v / std::numbers::pi;
  }
  return c;
}

SolitonEnsemble make_ensemble(int N, const GasSpectrum& spectrum, const ReflectionCoefficient& r,
                              const std::optional<Density>& density) {
  SolitonEnsemble e;
  e.kappa = sample_poles(N, spectrum, density);
  e.c_tilde = norming_constants(e.kappa, r, N, spectrum);
  return e;
}

GasSpectrum spectrum_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("eta1") || !j.contains("eta2")) {
    throw ConfigError("spectrum: expected an object with eta1 and eta2");
  }
  try {
    return GasSpectrum(j.at("eta1").get<double>(), j.at("eta2").get<double>());
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("spectrum: ") + e.what());
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

ReflectionCoefficient reflection_from_json(const nlohmann::json& j, const GasSpectrum& spectrum) {
  if (!j.is_object() || !j.contains("kind")) {
    throw ConfigError("reflection: expected an object with a kind field");
  }
  const std::string kind = j.at("kind").get<std::string>();
  try {
    if (kind == "constant") {
      return ReflectionCoefficient::constant(spectrum, j.at("r1").get<double>());
    }
    if (kind == "polynomial") {
      return ReflectionCoefficient::polynomial(spectrum,
                                               j.at("coefficients").get<std::vector<double>>());
    }
    if (kind == "tabulated") {
      return ReflectionCoefficient::tabulated(spectrum, j.at("zeta").get<std::vector<double>>(),
                                              j.at("r1").get<std::vector<double>>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("reflection: ") + e.what());
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  throw ConfigError("reflection: unknown kind '" + kind + "'");
}

nlohmann::json spectrum_to_json(const GasSpectrum& spectrum) {
  return {{"eta1", spectrum.eta1}, {"eta2", spectrum.eta2}};
}

}  // namespace kdvgas
