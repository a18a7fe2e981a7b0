#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "kdvgas/spectral_model.hpp"

namespace kdvgas {

inline constexpr double kMaxGasExponent = 690.0;
inline constexpr int kDefaultNodes = 200;

/// Gauss-Legendre nodes and weights on the band.
struct NystromGrid {
  int n = 0;
  std::vector<double> nodes;
  std::vector<double> weights;

  static NystromGrid make(const GasSpectrum& spectrum, int n = kDefaultNodes);
};

/// Symmetrized Nystrom discretization of the band integral equation
///
///   h(l) + sqrt(r(l)) / (2 pi) int sqrt(r(s)) h(s) / (s + l) ds = sqrt(r(l)) / 2,
///
/// with r(s; x, t) = r(s) exp(8 s^3 t - 2 s x). In the unknowns y_i = sqrt(w_i) h_i the
/// matrix is I + K, K_ij = a_i a_j / (2 pi (s_i + s_j)), a_i = sqrt(w_i r(s_i; x, t)).
/// Entries are only materialized in double by matrix(); solves run at the working
/// precision recorded in digits (0 means double).
struct GasKernel {
  GasSpectrum spectrum;
  NystromGrid grid;
  double x = 0.0;
  double t = 0.0;
  bool zero = false;
  std::vector<double> r_base;
  std::vector<double> exponent;
  double exponent_max = 0.0;
  int digits = 0;

  Eigen::MatrixXd matrix() const;
  std::vector<double> rhs() const;
};

struct FredholmSolve {
  std::vector<double> h;
  std::vector<double> dh;
  double exponent_max = 0.0;
  std::optional<double> min_eig;
  /// Q = int sqrt(r(s; x, t)) h(s) ds and its x-derivative.
  double integral = 0.0;
  double d_integral = 0.0;
  /// Relative residual of the discrete system, measured at working precision.
  double residual = 0.0;
  int digits = 0;
};

/// Working precision (decimal digits, 0 for double) needed for a given exponent bound.
int required_digits(double exponent_max);

/// Throws OverflowGuard when max_i (8 s_i^3 t - 2 s_i x) > 690.
GasKernel build_kernel(const GasSpectrum& spectrum, const ReflectionCoefficient& r, double x,
                       double t, const NystromGrid& grid);

FredholmSolve solve_density(const GasKernel& kernel, bool with_min_eig = false);

/// Smallest eigenvalue of I + K.
double positivity_report(const GasKernel& kernel);

struct GasOptions {
  int n = kDefaultNodes;
  /// When positive, the solve is repeated with 2n nodes and the integral Q must agree to tol.
  double tol = 0.0;
};

struct GasResult {
  double u = 0.0;
  double integral = 0.0;
  double exponent_max = 0.0;
  int digits = 0;
  int n = 0;
};

GasResult gas_evaluate(const GasSpectrum& spectrum, const ReflectionCoefficient& r, double x,
                       double t, const GasOptions& options = {});

/// u(x, t) = (2 / pi) dQ/dx.
double evaluate_potential(const GasSpectrum& spectrum, const ReflectionCoefficient& r, double x,
                          double t, const GasOptions& options = {});

}  // namespace kdvgas
