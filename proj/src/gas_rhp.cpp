#include "kdvgas/gas_rhp.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <type_traits>

#include <boost/multiprecision/mpfr.hpp>

#include "kdvgas/errors.hpp"
#include "kdvgas/quadrature.hpp"

namespace kdvgas {
namespace {

template <unsigned D>
using Mp = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<D>,
                                         boost::multiprecision::et_off>;

template <class T>
T two_pi_of() {
  using std::acos;
  return 2 * acos(T(-1));
}

// Dense symmetric matrix in row-major storage; only the lower triangle is factored.
template <class T>
struct Dense {
  int n = 0;
  std::vector<T> v;

  explicit Dense(int size) : n(size), v(static_cast<std::size_t>(size) * size) {}
  T& operator()(int i, int j) { return v[static_cast<std::size_t>(i) * n + j]; }
  const T& operator()(int i, int j) const { return v[static_cast<std::size_t>(i) * n + j]; }
};

// acc -= a * b without allocating a temporary in the multiprecision tiers
template <class T>
inline void sub_product(T& acc, const T& a, const T& b, T& scratch) {
  if constexpr (std::is_floating_point_v<T>) {
    acc -= a * b;
  } else {
    using boost::multiprecision::default_ops::eval_multiply;
    using boost::multiprecision::default_ops::eval_subtract;
    eval_multiply(scratch.backend(), a.backend(), b.backend());
    eval_subtract(acc.backend(), scratch.backend());
  }
}

template <class T>
bool cholesky(Dense<T>& A) {
  using std::sqrt;
  const int n = A.n;
  T scratch = 0;
  for (int j = 0; j < n; ++j) {
    T d = A(j, j);
    for (int k = 0; k < j; ++k) sub_product(d, A(j, k), A(j, k), scratch);
    if (!(d > 0)) return false;
    d = sqrt(d);
    A(j, j) = d;
    for (int i = j + 1; i < n; ++i) {
      T& acc = A(i, j);
      for (int k = 0; k < j; ++k) sub_product(acc, A(i, k), A(j, k), scratch);
      acc /= d;
    }
  }
  return true;
}

template <class T>
std::vector<T> cholesky_solve(const Dense<T>& L, std::vector<T> b) {
  const int n = L.n;
  T scratch = 0;
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < i; ++k) sub_product(b[i], L(i, k), b[k], scratch);
    b[i] /= L(i, i);
  }
  for (int i = n - 1; i >= 0; --i) {
    for (int k = i + 1; k < n; ++k) sub_product(b[i], L(k, i), b[k], scratch);
    b[i] /= L(i, i);
  }
  return b;
}

template <class T>
struct Assembled {
  std::vector<T> s;
  std::vector<T> a;
  Dense<T> A;
  explicit Assembled(int n) : s(n), a(n), A(n) {}
};

template <class T>
Assembled<T> assemble(const GasKernel& k) {
  using std::exp;
  using std::sqrt;
  const int n = k.grid.n;
  const T two_pi = two_pi_of<T>();
  const T x = k.x;
  const T t = k.t;
  Assembled<T> out(n);
  for (int i = 0; i < n; ++i) {
    const T s = k.grid.nodes[i];
    out.s[i] = s;
    const T expo = 8 * s * s * s * t - 2 * s * x;
    out.a[i] = sqrt(T(k.grid.weights[i]) * T(k.r_base[i])) * exp(expo / 2);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      T e = out.a[i] * out.a[j] / (two_pi * (out.s[i] + out.s[j]));
      if (i == j) e += 1;
      out.A(i, j) = e;
      out.A(j, i) = e;
    }
  }
  return out;
}

template <class T>
double min_eigenvalue(const Dense<T>& A) {
  // Inertia bisection: I + K - sigma I is positive definite iff sigma < min eig.
  auto pd = [&](double sigma) {
    Dense<T> B = A;
    for (int i = 0; i < B.n; ++i) B(i, i) -= sigma;
    return cholesky(B);
  };
  double lo = 1.0 - 1e-6;
  double hi = 1.0 + 1e-6;
  double step = 1e-6;
  while (!pd(lo)) {
    hi = lo;
    step *= 4.0;
    lo = 1.0 - step;
    if (step > 1e3) return lo;
  }
  step = 1e-6;
  while (pd(hi)) {
    lo = hi;
    step *= 4.0;
    hi = 1.0 + step;
    if (step > 1e300) return lo;
  }
  while (hi - lo > 1e-12 * std::max(1.0, std::abs(lo))) {
    const double mid = 0.5 * (lo + hi);
    (pd(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

template <class T>
FredholmSolve solve_impl(const GasKernel& k, bool with_min_eig) {
  using std::abs;
  using std::sqrt;
  const int n = k.grid.n;
  const T two_pi = two_pi_of<T>();
  Assembled<T> sys = assemble<T>(k);

  FredholmSolve out;
  out.exponent_max = k.exponent_max;
  out.digits = k.digits;
  if (with_min_eig) out.min_eig = min_eigenvalue(sys.A);

  Dense<T> L = sys.A;
  if (!cholesky(L)) {
    throw ConditioningError("gas kernel lost positive definiteness at working precision");
  }
  std::vector<T> b(n);
  for (int i = 0; i < n; ++i) b[i] = sys.a[i] / 2;
  const std::vector<T> y = cholesky_solve(L, b);

  T res2 = 0;
  T b2 = 0;
  for (int i = 0; i < n; ++i) {
    T r = -b[i];
    for (int j = 0; j < n; ++j) r += sys.A(i, j) * y[j];
    res2 += r * r;
    b2 += b[i] * b[i];
  }
  out.residual = b2 > 0 ? static_cast<double>(sqrt(res2 / b2)) : 0.0;
  if (!(out.residual <= 1e-12)) {
    std::ostringstream os;
    os << "gas solve residual " << out.residual << " above 1e-12";
    throw ConvergenceError(os.str());
  }

  T Q = 0;
  for (int i = 0; i < n; ++i) Q += sys.a[i] * y[i];
  std::vector<T> db(n);
  for (int i = 0; i < n; ++i) db[i] = -sys.s[i] * sys.a[i] / 2 + sys.a[i] * Q / two_pi;
  const std::vector<T> dy = cholesky_solve(L, db);
  T dQ = 0;
  for (int i = 0; i < n; ++i) dQ += sys.a[i] * (dy[i] - sys.s[i] * y[i]);

  out.h.resize(n);
  out.dh.resize(n);
  for (int i = 0; i < n; ++i) {
    const double sw = std::sqrt(k.grid.weights[i]);
    out.h[i] = static_cast<double>(y[i]) / sw;
    out.dh[i] = static_cast<double>(dy[i]) / sw;
  }
  out.integral = static_cast<double>(Q);
  out.d_integral = static_cast<double>(dQ);
  return out;
}

}  // namespace

NystromGrid NystromGrid::make(const GasSpectrum& spectrum, int n) {
  if (n < 2) throw DomainError("NystromGrid: need at least two nodes");
  const QuadratureRule q = gauss_legendre(n, spectrum.eta1, spectrum.eta2);
  NystromGrid g;
  g.n = n;
  g.nodes = q.nodes;
  g.weights = q.weights;
  return g;
}

int required_digits(double exponent_max) {
  if (exponent_max <= 16.0) return 0;
  const double need = 24.0 + exponent_max / std::numbers::ln10;
  if (need <= 50.0) return 50;
  if (need <= 100.0) return 100;
  if (need <= 200.0) return 200;
  return 350;
}

GasKernel build_kernel(const GasSpectrum& spectrum, const ReflectionCoefficient& r, double x,
                       double t, const NystromGrid& grid) {
  if (grid.n < 1 || grid.nodes.size() != static_cast<std::size_t>(grid.n)) {
    throw DomainError("build_kernel: malformed grid");
  }
  GasKernel k;
  k.spectrum = spectrum;
  k.grid = grid;
  k.x = x;
  k.t = t;
  k.zero = r.is_zero();
  k.r_base.resize(grid.n);
  k.exponent.resize(grid.n);
  k.exponent_max = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid.n; ++i) {
    const double s = grid.nodes[i];
    k.r_base[i] = r.r(s);
    k.exponent[i] = 8.0 * s * s * s * t - 2.0 * s * x;
    k.exponent_max = std::max(k.exponent_max, k.exponent[i]);
  }
  if (!k.zero && k.exponent_max > kMaxGasExponent) {
    std::ostringstream os;
    os << "build_kernel: exponent " << k.exponent_max << " exceeds " << kMaxGasExponent
       << " at x=" << x << ", t=" << t;
    throw OverflowGuard(os.str());
  }
  k.digits = k.zero ? 0 : required_digits(k.exponent_max);
  return k;
}

Eigen::MatrixXd GasKernel::matrix() const {
  const int n = grid.n;
  Eigen::MatrixXd M = Eigen::MatrixXd::Identity(n, n);
  if (zero) return M;
  std::vector<double> a(n);
  for (int i = 0; i < n; ++i) {
    a[i] = std::sqrt(grid.weights[i] * r_base[i]) * std::exp(0.5 * exponent[i]);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double e = a[i] * a[j] / (2.0 * std::numbers::pi * (grid.nodes[i] + grid.nodes[j]));
      M(i, j) += e;
      if (i != j) M(j, i) += e;
    }
  }
  return M;
}

std::vector<double> GasKernel::rhs() const {
  std::vector<double> b(grid.n, 0.0);
  if (zero) return b;
  for (int i = 0; i < grid.n; ++i) {
    b[i] = 0.5 * std::sqrt(grid.weights[i] * r_base[i]) * std::exp(0.5 * exponent[i]);
  }
  return b;
}

FredholmSolve solve_density(const GasKernel& kernel, bool with_min_eig) {
  if (kernel.zero) {
    FredholmSolve out;
    out.h.assign(kernel.grid.n, 0.0);
    out.dh.assign(kernel.grid.n, 0.0);
    out.exponent_max = kernel.exponent_max;
    if (with_min_eig) out.min_eig = 1.0;
    return out;
  }
  switch (kernel.digits) {
    case 0:
      return solve_impl<double>(kernel, with_min_eig);
    case 50:
      return solve_impl<Mp<50>>(kernel, with_min_eig);
    case 100:
      return solve_impl<Mp<100>>(kernel, with_min_eig);
    case 200:
      return solve_impl<Mp<200>>(kernel, with_min_eig);
    default:
      return solve_impl<Mp<350>>(kernel, with_min_eig);
  }
}

double positivity_report(const GasKernel& kernel) {
  if (kernel.zero) return 1.0;
  if (kernel.digits == 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(kernel.matrix(), Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
  }
  return *solve_density(kernel, true).min_eig;
}

GasResult gas_evaluate(const GasSpectrum& spectrum, const ReflectionCoefficient& r, double x,
                       double t, const GasOptions& options) {
  const GasKernel k = build_kernel(spectrum, r, x, t, NystromGrid::make(spectrum, options.n));
  const FredholmSolve s = solve_density(k);
  if (options.tol > 0.0 && !k.zero) {
    const GasKernel k2 =
        build_kernel(spectrum, r, x, t, NystromGrid::make(spectrum, 2 * options.n));
    const FredholmSolve s2 = solve_density(k2);
    const double diff = std::abs(s2.integral - s.integral);
    if (diff > options.tol) {
      std::ostringstream os;
      os << "gas solve: doubling n changed the integral by " << diff << " > " << options.tol;
      throw ConvergenceError(os.str());
    }
  }
  GasResult out;
  out.u = 2.0 / std::numbers::pi * s.d_integral;
  out.integral = s.integral;
  out.exponent_max = k.exponent_max;
  out.digits = k.digits;
  out.n = options.n;
  return out;
}

double evaluate_potential(const GasSpectrum& spectrum, const ReflectionCoefficient& r, double x,
                          double t, const GasOptions& options) {
  return gas_evaluate(spectrum, r, x, t, options).u;
}

}  // namespace kdvgas
