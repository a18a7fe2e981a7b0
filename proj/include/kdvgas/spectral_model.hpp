#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include <json.hpp>

namespace kdvgas {

/// Spectral band (eta1, eta2) with 0 < eta1 < eta2.
struct GasSpectrum {
  double eta1 = 0.5;
  double eta2 = 1.5;

  GasSpectrum() = default;
  GasSpectrum(double e1, double e2);

  double modulus() const { return eta1 / eta2; }
  double width() const { return eta2 - eta1; }
};

/// Positive reflection coefficient on the band, stored through r1.
/// r(zeta) = 2 r1(i zeta) is the rotated form used by the solvers.
class ReflectionCoefficient {
 public:
  enum class Kind { constant, polynomial, tabulated, function };

  /// r1 identically equal to value. value = 0 is accepted as the trivial coefficient.
  static ReflectionCoefficient constant(const GasSpectrum& spectrum, double value);
  /// r1(i zeta) = sum_k coeffs[k] zeta^(2k).
  static ReflectionCoefficient polynomial(const GasSpectrum& spectrum, std::vector<double> coeffs);
  /// Samples of r1(i zeta) at increasing zeta covering the band, interpolated by
  /// monotone piecewise cubics.
  static ReflectionCoefficient tabulated(const GasSpectrum& spectrum, std::vector<double> zeta,
                                         std::vector<double> r1);
  static ReflectionCoefficient function(const GasSpectrum& spectrum,
                                        std::function<double(double)> r1);

  Kind kind() const { return kind_; }
  bool is_zero() const { return zero_; }
  double eta1() const { return eta1_; }
  double eta2() const { return eta2_; }

  double r1(double zeta) const;
  double r(double zeta) const { return 2.0 * r1(zeta); }
  /// log r(zeta); throws QuadratureError when r is not positive.
  double log_r(double zeta) const;

  nlohmann::json to_json() const;

 private:
  ReflectionCoefficient() = default;
  void validate();

  Kind kind_ = Kind::constant;
  bool zero_ = false;
  double eta1_ = 0.0;
  double eta2_ = 0.0;
  double value_ = 0.0;
  std::vector<double> coeffs_;
  std::vector<double> zeta_;
  std::vector<double> samples_;
  std::shared_ptr<const std::function<double(double)>> eval_;
};

struct SolitonEnsemble {
  std::vector<double> kappa;
  std::vector<double> c_tilde;

  int size() const { return static_cast<int>(kappa.size()); }
  /// Checks ordering, band membership and positivity; throws DomainError.
  void validate(const GasSpectrum& spectrum) const;
};

using Density = std::function<double(double)>;

/// Quantile sampling: kappa_j solves int_{eta1}^{kappa_j} rho = j/N, j = 1..N.
std::vector<double> sample_poles(int N, const GasSpectrum& spectrum,
                                 const std::optional<Density>& density = std::nullopt);

/// c_j = (eta2 - eta1) r1(kappa_j) / pi.
std::vector<double> norming_constants(const std::vector<double>& poles,
                                      const ReflectionCoefficient& r, int N,
                                      const GasSpectrum& spectrum);

SolitonEnsemble make_ensemble(int N, const GasSpectrum& spectrum, const ReflectionCoefficient& r,
                              const std::optional<Density>& density = std::nullopt);

GasSpectrum spectrum_from_json(const nlohmann::json& j);
ReflectionCoefficient reflection_from_json(const nlohmann::json& j, const GasSpectrum& spectrum);
nlohmann::json spectrum_to_json(const GasSpectrum& spectrum);

}  // namespace kdvgas
