#pragma once

#include <Eigen/Dense>

#include "kdvgas/spectral_model.hpp"

namespace kdvgas {

/// Norming constants evolve as c_j(t) = c_j exp(theta kappa_j^3 t).
inline constexpr double kTimeExponent = 8.0;
inline constexpr double kMaxSolitonExponent = 700.0;
inline constexpr double kMaxCondition = 1e12;

/// Residue conditions in symmetric real form.
///
/// With rho_j = c_j exp(theta kappa_j^3 t - 2 kappa_j x) / N and g_j = sqrt(rho_j),
/// the unknowns beta_j = g_j z_j satisfy (I + C) z = g, C_jk = g_j g_k / (kappa_j + kappa_k).
struct ResidueSystem {
  Eigen::VectorXd kappa;
  Eigen::VectorXd g;
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::VectorXd z;
  Eigen::VectorXd beta;
  double condition = 1.0;
};

/// Builds A and b; throws OverflowGuard when |2 kappa x| + |theta kappa^3 t| > 700.
ResidueSystem assemble_system(const SolitonEnsemble& ensemble, double x, double t,
                              double theta = kTimeExponent);

/// Factors the system in place, fills z, beta and the condition estimate.
/// Throws ConditioningError above 1e12.
void factor_and_solve(ResidueSystem& sys);

/// sum_j beta_j; the potential is 2 d/dx of this sum.
double residue_sum(const SolitonEnsemble& ensemble, double x, double t,
                   double theta = kTimeExponent);

double solve_potential(const SolitonEnsemble& ensemble, double x, double t,
                       double theta = kTimeExponent);

double one_soliton_closed_form(double eta, double c_tilde, double x, double t,
                               double theta = kTimeExponent);

/// Returns whichever candidate exponent makes the one-soliton potential a KdV
/// solution (smallest finite-difference residual).
double calibrate_time_exponent(const std::vector<double>& candidates = {8.0, 16.0});

}  // namespace kdvgas
