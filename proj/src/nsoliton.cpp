#include "kdvgas/nsoliton.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "kdvgas/errors.hpp"
#include "kdvgas/kdv_residual.hpp"

namespace kdvgas {

ResidueSystem assemble_system(const SolitonEnsemble& ensemble, double x, double t, double theta) {
  const int n = ensemble.size();
  if (n < 1 || static_cast<int>(ensemble.c_tilde.size()) != n) {
    throw DomainError("assemble_system: malformed ensemble");
  }
  ResidueSystem sys;
  sys.kappa.resize(n);
  sys.g.resize(n);
  for (int j = 0; j < n; ++j) {
    const double k = ensemble.kappa[j];
    const double bound = std::abs(2.0 * k * x) + std::abs(theta * k * k * k * t);
    if (bound > kMaxSolitonExponent) {
      std::ostringstream os;
      os << "assemble_system: exponent bound " << bound << " exceeds " << kMaxSolitonExponent
         << " at x=" << x << ", t=" << t;
      throw OverflowGuard(os.str());
    }
    const double expo = theta * k * k * k * t - 2.0 * k * x;
    sys.kappa(j) = k;
    // sqrt(c e^expo / N) without forming e^expo
    sys.g(j) = std::exp(0.5 * (expo + std::log(ensemble.c_tilde[j] / n)));
  }
  sys.A.resize(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      sys.A(j, k) = sys.g(j) * sys.g(k) / (sys.kappa(j) + sys.kappa(k));
    }
    sys.A(j, j) += 1.0;
  }
  sys.b = sys.g;
  return sys;
}

namespace {

Eigen::LLT<Eigen::MatrixXd> factor(ResidueSystem& sys) {
  Eigen::LLT<Eigen::MatrixXd> llt(sys.A);
  if (llt.info() != Eigen::Success) {
    throw ConditioningError("residue system is not numerically positive definite");
  }
  const double rc = llt.rcond();
  sys.condition = rc > 0.0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
  if (!(sys.condition <= kMaxCondition)) {
    std::ostringstream os;
    os << "residue system condition estimate " << sys.condition << " exceeds " << kMaxCondition;
    throw ConditioningError(os.str());
  }
  sys.z = llt.solve(sys.b);
  sys.beta = sys.g.cwiseProduct(sys.z);
  return llt;
}

}  // namespace

void factor_and_solve(ResidueSystem& sys) { factor(sys); }

double residue_sum(const SolitonEnsemble& ensemble, double x, double t, double theta) {
  ResidueSystem sys = assemble_system(ensemble, x, t, theta);
  factor(sys);
  return sys.beta.sum();
}

double solve_potential(const SolitonEnsemble& ensemble, double x, double t, double theta) {
  ResidueSystem sys = assemble_system(ensemble, x, t, theta);
  const auto llt = factor(sys);
  // d/dx: g' = -kappa g and A' = -g g^T, so A z' = -kappa g + g (g^T z).
  const double s = sys.g.dot(sys.z);
  const Eigen::VectorXd dg = -sys.kappa.cwiseProduct(sys.g);
  const Eigen::VectorXd dz = llt.solve(dg + s * sys.g);
  return 2.0 * (dg.dot(sys.z) + sys.g.dot(dz));
}

double one_soliton_closed_form(double eta, double c_tilde, double x, double t, double theta) {
  if (!(eta > 0.0) || !(c_tilde > 0.0)) {
    throw DomainError("one_soliton_closed_form: eta and c_tilde must be positive");
  }
  const double y = eta * x - 0.5 * theta * eta * eta * eta * t - 0.5 * std::log(c_tilde / (2.0 * eta));
  const double sech = 1.0 / std::cosh(y);
  return -2.0 * eta * eta * sech * sech;
}

double calibrate_time_exponent(const std::vector<double>& candidates) {
  if (candidates.empty()) throw DomainError("calibrate_time_exponent: no candidates");
  SolitonEnsemble one;
  one.kappa = {0.5};
  one.c_tilde = {1.0};
  double best = candidates.front();
  double best_res = std::numeric_limits<double>::infinity();
  for (double theta : candidates) {
    const Field u = [&](double x, double t) { return solve_potential(one, x, t, theta); };
    double res = 0.0;
    for (double x : {-1.0, 0.0, 0.5, 1.0, 2.0}) {
      res = std::max(res, std::abs(kdv_residual(u, x, 0.25, 5e-3, 5e-3, 4)));
    }
    if (res < best_res) {
      best_res = res;
      best = theta;
    }
  }
  if (!(best_res < 1e-6)) {
    throw ConvergenceError("calibrate_time_exponent: no candidate satisfies KdV");
  }
  return best;
}

}  // namespace kdvgas
