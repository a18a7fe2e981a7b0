#include "kdvgas/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "kdvgas/asymptotics.hpp"
#include "kdvgas/errors.hpp"
#include "kdvgas/gas_rhp.hpp"
#include "kdvgas/kdv_residual.hpp"
#include "kdvgas/nsoliton.hpp"
#include "kdvgas/special_functions.hpp"

namespace kdvgas {
namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string flag_kind(const std::exception& e) {
  if (dynamic_cast<const OverflowGuard*>(&e)) return "overflow";
  if (dynamic_cast<const ConditioningError*>(&e)) return "conditioning";
  if (dynamic_cast<const ConvergenceError*>(&e)) return "convergence";
  if (dynamic_cast<const RangeError*>(&e)) return "range";
  if (dynamic_cast<const DegeneracyError*>(&e)) return "degenerate";
  if (dynamic_cast<const PositivityError*>(&e)) return "positivity";
  if (dynamic_cast<const QuadratureError*>(&e)) return "quadrature";
  if (dynamic_cast<const NearZeroError*>(&e)) return "nearzero";
  return "error";
}

template <class F>
void parallel_for(std::size_t count, int threads, F&& body) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers =
      std::min<std::size_t>(count, threads > 0 ? static_cast<unsigned>(threads) : hw);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
}

double get_number(const nlohmann::json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) throw ConfigError(std::string("config: ") + key + " must be a number");
  return j.at(key).get<double>();
}

int get_int(const nlohmann::json& j, const char* key, int fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number_integer()) {
    throw ConfigError(std::string("config: ") + key + " must be an integer");
  }
  return j.at(key).get<int>();
}

}  // namespace

std::vector<double> GridSpec::xs() const {
  std::vector<double> out(nx);
  for (int i = 0; i < nx; ++i) out[i] = x_min + (x_max - x_min) * i / (nx - 1);
  return out;
}

const char* route_name(Route r) {
  switch (r) {
    case Route::exact:
      return "exact";
    case Route::gas:
      return "gas";
    case Route::asym:
      return "asym";
  }
  return "?";
}

std::vector<Route> parse_routes(const std::string& csv) {
  std::vector<Route> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    Route r;
    if (item == "exact") {
      r = Route::exact;
    } else if (item == "gas") {
      r = Route::gas;
    } else if (item == "asym") {
      r = Route::asym;
    } else {
      throw ConfigError("unknown route '" + item + "'");
    }
    if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
  }
  if (out.empty()) throw ConfigError("at least one route is required");
  return out;
}

ReflectionCoefficient RunConfig::make_reflection() const {
  return reflection_from_json(reflection, spectrum);
}

bool RunConfig::has_route(Route r) const {
  return std::find(routes.begin(), routes.end(), r) != routes.end();
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json routes_json = nlohmann::json::array();
  for (Route r : routes) routes_json.push_back(route_name(r));
  return {{"eta1", spectrum.eta1},
          {"eta2", spectrum.eta2},
          {"reflection", reflection},
          {"grid", {{"x_min", grid.x_min}, {"x_max", grid.x_max}, {"nx", grid.nx}, {"t", grid.t}}},
          {"routes", routes_json},
          {"N", N},
          {"n_nodes", n_nodes},
          {"threads", threads},
          {"output", {{"path", output}, {"format", format}}}};
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  RunConfig c;
  try {
    const nlohmann::json& band = j.contains("spectrum") ? j.at("spectrum") : j;
    const double e1 = get_number(band, "eta1", c.spectrum.eta1);
    const double e2 = get_number(band, "eta2", c.spectrum.eta2);
    c.spectrum = spectrum_from_json({{"eta1", e1}, {"eta2", e2}});
    if (j.contains("reflection")) c.reflection = j.at("reflection");
    c.make_reflection();

    if (j.contains("grid")) {
      const auto& g = j.at("grid");
      if (!g.is_object()) throw ConfigError("config: grid must be an object");
      c.grid.x_min = get_number(g, "x_min", c.grid.x_min);
      c.grid.x_max = get_number(g, "x_max", c.grid.x_max);
      c.grid.nx = get_int(g, "nx", c.grid.nx);
      if (g.contains("t")) {
        const auto& t = g.at("t");
        c.grid.t = t.is_array() ? t.get<std::vector<double>>() : std::vector<double>{t.get<double>()};
      }
    }
    if (j.contains("routes")) {
      const auto& r = j.at("routes");
      if (r.is_string()) {
        c.routes = parse_routes(r.get<std::string>());
      } else {
        std::string joined;
        for (const auto& item : r) joined += item.get<std::string>() + ",";
        c.routes = parse_routes(joined);
      }
    }
    c.N = get_int(j, "N", c.N);
    c.n_nodes = get_int(j, "n_nodes", c.n_nodes);
    c.threads = get_int(j, "threads", c.threads);
    if (j.contains("output")) {
      const auto& o = j.at("output");
      if (o.is_string()) {
        c.output = o.get<std::string>();
      } else {
        if (o.contains("path")) c.output = o.at("path").get<std::string>();
        if (o.contains("format")) c.format = o.at("format").get<std::string>();
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const PositivityError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }

  if (!(c.grid.nx >= 2)) throw ConfigError("config: grid.nx must be at least 2");
  if (!(std::isfinite(c.grid.x_min) && std::isfinite(c.grid.x_max) && c.grid.x_min < c.grid.x_max)) {
    throw ConfigError("config: need x_min < x_max");
  }
  if (c.grid.t.empty()) throw ConfigError("config: grid.t must not be empty");
  for (double t : c.grid.t) {
    if (!(std::isfinite(t) && t >= 0.0)) throw ConfigError("config: times must be finite and >= 0");
  }
  if (c.routes.empty()) throw ConfigError("config: routes must be non-empty");
  if (c.has_route(Route::exact) && c.N < 1) throw ConfigError("config: exact route needs N >= 1");
  if (c.n_nodes < 2) throw ConfigError("config: n_nodes must be at least 2");
  if (c.threads < 0) throw ConfigError("config: threads must be >= 0");
  if (c.format != "csv" && c.format != "json") throw ConfigError("config: format must be csv or json");
  return c;
}

RunConfig RunConfig::fig1() {
  RunConfig c;
  c.spectrum = GasSpectrum(0.5, 1.5);
  c.reflection = {{"kind", "constant"}, {"r1", 1.0}};
  c.grid.x_min = -160.0;
  c.grid.x_max = 120.0;
  c.grid.nx = 2801;
  c.grid.t = {10.0};
  c.routes = {Route::asym};
  c.output = "fig1.csv";
  return c;
}

EvalResult run_sweep(const RunConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const ReflectionCoefficient r = config.make_reflection();
  const GasSpectrum& sp = config.spectrum;

  std::optional<SolitonEnsemble> ensemble;
  std::string ensemble_error;
  if (config.has_route(Route::exact)) {
    try {
      ensemble = make_ensemble(config.N, sp, r);
    } catch (const Error& e) {
      ensemble_error = flag_kind(e);
    }
  }

  const std::vector<double> xs = config.grid.xs();
  const std::size_t nx = xs.size();
  std::vector<ComparisonRow> rows(nx * config.grid.t.size());
  GasOptions gopt;
  gopt.n = config.n_nodes;

  parallel_for(rows.size(), config.threads, [&](std::size_t idx) {
    ComparisonRow& row = rows[idx];
    row.t = config.grid.t[idx / nx];
    row.x = xs[idx % nx];
    try {
      row.region = region_name(whitham_state(row.x, row.t, sp).region);
    } catch (const RangeError&) {
      row.region = "none";
    }
    auto attempt = [&](Route route, std::optional<double>& slot) {
      try {
        switch (route) {
          case Route::exact:
            if (!ensemble) {
              row.flags.push_back("exact:" + ensemble_error);
              return;
            }
            slot = solve_potential(*ensemble, row.x, row.t);
            break;
          case Route::gas:
            slot = evaluate_potential(sp, r, row.x, row.t, gopt);
            break;
          case Route::asym:
            slot = u_asymptotic(row.x, row.t, sp, r).u;
            break;
        }
      } catch (const Error& e) {
        row.flags.push_back(std::string(route_name(route)) + ":" + flag_kind(e));
      }
    };
    if (config.has_route(Route::exact)) attempt(Route::exact, row.u_exact);
    if (config.has_route(Route::gas)) attempt(Route::gas, row.u_gas);
    if (config.has_route(Route::asym)) attempt(Route::asym, row.u_asym);
    if (!row.u_exact && !row.u_gas && !row.u_asym && !config.has_route(Route::asym)) {
      attempt(Route::asym, row.u_asym);
      if (row.u_asym) row.flags.push_back("fallback:asym");
    }
  });

  EvalResult out;
  out.rows = std::move(rows);
  nlohmann::json counts = nlohmann::json::object();
  for (Route route : {Route::exact, Route::gas, Route::asym}) {
    int computed = 0;
    for (const auto& row : out.rows) {
      const auto& slot =
          route == Route::exact ? row.u_exact : (route == Route::gas ? row.u_gas : row.u_asym);
      if (slot) ++computed;
    }
    counts[route_name(route)] = computed;
  }
  auto max_diff = [&](auto a, auto b) -> nlohmann::json {
    double m = -1.0;
    for (const auto& row : out.rows) {
      const auto& u = row.*a;
      const auto& v = row.*b;
      if (u && v) m = std::max(m, std::abs(*u - *v));
    }
    return m < 0.0 ? nlohmann::json(nullptr) : nlohmann::json(m);
  };
  int flagged = 0;
  for (const auto& row : out.rows) flagged += row.flags.empty() ? 0 : 1;
  out.summary = {
      {"config", config.to_json()},
      {"rows", out.rows.size()},
      {"flagged_rows", flagged},
      {"computed", counts},
      {"max_abs_diff",
       {{"exact_gas", max_diff(&ComparisonRow::u_exact, &ComparisonRow::u_gas)},
        {"gas_asym", max_diff(&ComparisonRow::u_gas, &ComparisonRow::u_asym)},
        {"exact_asym", max_diff(&ComparisonRow::u_exact, &ComparisonRow::u_asym)}}},
      {"elapsed_seconds",
       std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()}};
  return out;
}

std::string rows_to_csv(const std::vector<ComparisonRow>& rows) {
  std::ostringstream os;
  os << "x,t,u_exact,u_gas,u_asym,region,flags\n";
  auto opt = [](const std::optional<double>& v) { return v ? num(*v) : std::string(); };
  for (const auto& row : rows) {
    std::string flags;
    for (const auto& f : row.flags) flags += (flags.empty() ? "" : ";") + f;
    os << num(row.x) << ',' << num(row.t) << ',' << opt(row.u_exact) << ',' << opt(row.u_gas)
       << ',' << opt(row.u_asym) << ',' << row.region << ',' << flags << '\n';
  }
  return os.str();
}

nlohmann::json rows_to_json(const std::vector<ComparisonRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  auto opt = [](const std::optional<double>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
  };
  for (const auto& row : rows) {
    arr.push_back({{"x", row.x},
                   {"t", row.t},
                   {"u_exact", opt(row.u_exact)},
                   {"u_gas", opt(row.u_gas)},
                   {"u_asym", opt(row.u_asym)},
                   {"region", row.region},
                   {"flags", row.flags}});
  }
  return arr;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << text;
  f.close();
  if (!f) throw IoError("failed writing '" + path + "'");
}

EvalResult cmd_eval(const RunConfig& config) {
  EvalResult res = run_sweep(config);
  if (config.format == "json") {
    write_file(config.output, rows_to_json(res.rows).dump(1) + "\n");
  } else {
    write_file(config.output, rows_to_csv(res.rows));
  }
  write_file(config.output + ".summary.json", res.summary.dump(2) + "\n");
  return res;
}

std::vector<WhithamRow> cmd_whitham(const GasSpectrum& spectrum, int n_samples) {
  if (n_samples < 2) throw DomainError("cmd_whitham: need at least two samples");
  const double xc = xi_crit(spectrum);
  const double e2 = spectrum.eta2;
  std::vector<WhithamRow> rows(n_samples);
  for (int k = 0; k < n_samples; ++k) {
    WhithamRow& w = rows[k];
    w.xi = xc + (e2 * e2 - xc) * k / (n_samples - 1);
    if (k == n_samples - 1) {
      w.alpha = e2 * kMaxModulus;
      w.degenerate = true;
    } else {
      w.alpha = whitham_alpha_of_xi(w.xi, spectrum);
      w.degenerate = w.alpha >= e2 * kMaxModulus;
    }
    w.m_alpha = w.alpha / e2;
    w.period = 2.0 * elliptic_K(w.m_alpha) / e2;
    w.amplitude = 2.0 * w.alpha * w.alpha;
  }
  return rows;
}

std::string whitham_to_csv(const std::vector<WhithamRow>& rows) {
  std::ostringstream os;
  os << "xi,alpha,m_alpha,period,amplitude,degenerate\n";
  for (const auto& w : rows) {
    os << num(w.xi) << ',' << num(w.alpha) << ',' << num(w.m_alpha) << ',' << num(w.period) << ','
       << num(w.amplitude) << ',' << (w.degenerate ? 1 : 0) << '\n';
  }
  return os.str();
}

nlohmann::json whitham_to_json(const GasSpectrum& spectrum, const std::vector<WhithamRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& w : rows) {
    arr.push_back({{"xi", w.xi},
                   {"alpha", w.alpha},
                   {"m_alpha", w.m_alpha},
                   {"period", w.period},
                   {"amplitude", w.amplitude},
                   {"degenerate", w.degenerate}});
  }
  return {{"xi_crit", xi_crit(spectrum)},
          {"eta2_squared", spectrum.eta2 * spectrum.eta2},
          {"rows", arr}};
}

nlohmann::json cmd_phases(const RunConfig& config) {
  const GasSpectrum& sp = config.spectrum;
  const ReflectionCoefficient r = config.make_reflection();
  const EllipticData ed = make_elliptic_data(sp.modulus());
  nlohmann::json out = {{"eta1", sp.eta1},
                        {"eta2", sp.eta2},
                        {"modulus", ed.m},
                        {"K", ed.K},
                        {"E", ed.E},
                        {"two_tau_imag", ed.two_tau().imag()},
                        {"Omega_imag", frequency_Omega(sp).imag()},
                        {"kappa", kappa_constant(sp)},
                        {"xi_crit", xi_crit(sp)},
                        {"period", 2.0 * ed.K / sp.eta2}};
  if (!r.is_zero()) {
    const PhaseData p = phase_data(sp, r);
    out["phi"] = p.phi;
    out["Delta_real"] = p.Delta.real();
    out["Delta_imag"] = p.Delta.imag();
  }
  return out;
}

namespace {

CheckResult upper(std::string name, double value, double threshold) {
  return {std::move(name), value, threshold, std::isfinite(value) && value <= threshold};
}

CheckResult lower(std::string name, double value, double threshold) {
  return {std::move(name), value, threshold, std::isfinite(value) && value >= threshold};
}

}  // namespace

std::vector<CheckResult> cmd_validate(const RunConfig& config) {
  std::vector<CheckResult> out;
  const GasSpectrum& sp = config.spectrum;
  const ReflectionCoefficient r = config.make_reflection();
  const double e1 = sp.eta1;
  const double e2 = sp.eta2;

  {
    double worst = 0.0;
    for (int k = 1; k <= 9; ++k) {
      const double m = 0.1 * k;
      const double mp = complementary_modulus(m);
      const double K = elliptic_K(m), E = elliptic_E(m), Kp = elliptic_K(mp), Ep = elliptic_E(mp);
      worst = std::max(worst, std::abs(E * Kp + Ep * K - K * Kp - std::numbers::pi / 2));
    }
    out.push_back(upper("legendre_relation", worst, 1e-12));
  }
  {
    double worst = 0.0;
    for (double m : {0.2, 1.0 / 3.0, 0.8}) {
      const EllipticData ed = make_elliptic_data(m);
      for (int i = 0; i <= 100; ++i) {
        const double z = i / 100.0;
        const double lhs = dlog_theta3(z, ed.two_tau(), 2) / (4.0 * ed.K * ed.K);
        const double dn = jacobi_dn(2.0 * ed.K * z + ed.K, m);
        worst = std::max(worst, std::abs(lhs - (-ed.E / ed.K + dn * dn)));
      }
    }
    out.push_back(upper("theta_dn_identity", worst, 1e-10));
  }
  {
    SolitonEnsemble one;
    one.kappa = {1.0};
    one.c_tilde = {2.0};
    double worst = 0.0;
    for (int i = 0; i <= 200; ++i) {
      const double x = -10.0 + 0.1 * i;
      worst = std::max(worst, std::abs(solve_potential(one, x, 0.0) -
                                       one_soliton_closed_form(1.0, 2.0, x, 0.0)));
    }
    out.push_back(upper("one_soliton_exactness", worst, 1e-12));
  }
  {
    double worst = 2.0;
    const NystromGrid grid = NystromGrid::make(sp, 64);
    for (double t : {0.0, 0.5, 1.0}) {
      for (double x : {-20.0, -5.0, 0.0, 5.0}) {
        try {
          worst = std::min(worst, positivity_report(build_kernel(sp, r, x, t, grid)));
        } catch (const OverflowGuard&) {
        }
      }
    }
    out.push_back(lower("positivity_min_eig", worst, 1.0 - 1e-8));
  }
  {
    double worst = 0.0;
    GasOptions a;
    a.n = config.n_nodes;
    GasOptions b;
    b.n = 2 * config.n_nodes;
    for (auto [x, t] : {std::pair{-3.0, 0.0}, {0.0, 0.0}, {-4.0, 0.5}}) {
      worst = std::max(worst, std::abs(evaluate_potential(sp, r, x, t, a) -
                                       evaluate_potential(sp, r, x, t, b)));
    }
    out.push_back(upper("nystrom_refinement", worst, 1e-8));
  }
  {
    const double xc = xi_crit(sp);
    out.push_back(upper("alpha_at_xi_crit", std::abs(whitham_alpha_of_xi(xc, sp) - e1), 1e-10));
    int bad = 0;
    double prev = -std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 200; ++k) {
      const double xi = whitham_xi_of_alpha(e2 * k / 201.0, sp);
      if (!(xi > prev)) ++bad;
      prev = xi;
    }
    out.push_back(upper("whitham_monotone_violations", bad, 0));
    const GReport g = g_diagnostics(sp, GMode::Modulated, 0.5 * (xc + e2 * e2));
    out.push_back(upper("moment_residual", std::max(g.moment_q1, g.moment_q2), 1e-10));
    out.push_back(upper("g_sign_failures", g.sign_failures, 0));
    out.push_back(upper("omega_derivative_identity", *g.domega_error, 1e-6));
  }
  if (!r.is_zero()) {
    const double xc = xi_crit(sp);
    {
      // both closed forms at the seam alpha = eta1
      const ModulatedPhases mp = phases_modulated(e1, sp, r);
      const double phi = phase_phi(sp, r);
      const double K = elliptic_K(sp.modulus());
      double worst = 0.0;
      for (int i = 0; i < 20; ++i) {
        const double t = 1.0 + 0.1 * i;
        const double x = 4.0 * t * xc;
        const double base = x - 2.0 * (e1 * e1 + e2 * e2) * t;
        const double d1 = jacobi_dn(e2 * (base + mp.phi_tilde) + K, sp.modulus());
        const double d2 = jacobi_dn(e2 * (base + phi) + K, sp.modulus());
        worst = std::max(worst, 2.0 * e2 * e2 * std::abs(d1 * d1 - d2 * d2));
        worst = std::max(worst, std::abs(u_asymptotic(x * (1 + 1e-12), t, sp, r).u -
                                         u_asymptotic(x, t, sp, r).u));
      }
      out.push_back(upper("seam_continuity", worst, 1e-9));
    }
    {
      const PhaseData p = phase_data(sp, r);
      const ModulatedPhases mp = phases_modulated(0.5 * (e1 + e2), sp, r);
      const double err = std::max(std::abs(p.Delta - p.Omega * p.phi),
                                  std::abs(mp.Delta_tilde - mp.Omega_alpha * mp.phi_tilde));
      out.push_back(upper("phase_identity", err, 1e-10));
    }
    {
      double worst = 0.0;
      const double t = 10.0;
      for (int i = 0; i < 100; ++i) {
        const double x = 4.0 * t * (xc - 1.0) + (4.0 * t * (e2 * e2 - xc + 1.0)) * i / 99.0;
        worst = std::max(worst,
                         std::abs(u_asymptotic(x, t, sp, r).u - u_theta_form(x, t, sp, r)));
      }
      out.push_back(upper("dn_vs_theta", worst, 1e-9));
    }
    {
      // least-squares slope of log|u(x, 0)| on [4, 12]
      GasOptions o;
      o.n = config.n_nodes;
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      int n = 0;
      for (double x = 4.0; x <= 12.0 + 1e-9; x += 1.0) {
        const double y = std::log(std::abs(evaluate_potential(sp, r, x, 0.0, o)));
        sx += x, sy += y, sxx += x * x, sxy += x * y, ++n;
      }
      const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
      out.push_back(upper("forward_decay_slope", slope, -2.0 * e1 + 0.1));
    }
    {
      GasOptions o;
      o.n = config.n_nodes;
      const Field u = [&](double x, double t) { return evaluate_potential(sp, r, x, t, o); };
      double coarse = 0.0, fine = 0.0;
      for (auto [x, t] : {std::pair{0.0, 1.0}, {-4.0, 0.5}}) {
        const double h = 0.02;
        coarse = std::max(coarse, std::abs(kdv_residual(u, x, t, h, h, 2)));
        fine = std::max(fine, std::abs(kdv_residual(u, x, t, h / std::sqrt(2.0), h / std::sqrt(2.0), 2)));
      }
      const double ratio = fine / coarse;
      out.push_back({"kdv_residual_refinement_ratio", ratio, 0.5,
                     std::isfinite(ratio) && std::abs(ratio - 0.5) <= 0.25 * 0.5});
    }
  }
  {
    const EvalResult sweep = run_sweep(config);
    int populated = 0;
    bool finite = true;
    for (const auto& row : sweep.rows) {
      if (row.u_exact || row.u_gas || row.u_asym) ++populated;
      for (const auto* v : {&row.u_exact, &row.u_gas, &row.u_asym}) {
        if (*v && !std::isfinite(**v)) finite = false;
      }
    }
    const double frac = sweep.rows.empty() ? 0.0 : double(populated) / sweep.rows.size();
    out.push_back(lower("sweep_rows_populated", frac, 1.0));
    out.push_back({"sweep_values_finite", finite ? 1.0 : 0.0, 1.0, finite});
  }
  return out;
}

nlohmann::json checks_to_json(const std::vector<CheckResult>& checks) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : checks) {
    arr.push_back({{"check", c.check}, {"value", c.value}, {"threshold", c.threshold}, {"pass", c.pass}});
  }
  return arr;
}

}  // namespace kdvgas
