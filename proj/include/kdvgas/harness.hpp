#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kdvgas/spectral_model.hpp"

namespace kdvgas {

enum class Route { exact, gas, asym };

struct GridSpec {
  double x_min = -5.0;
  double x_max = 5.0;
  int nx = 101;
  std::vector<double> t = {0.0};

  std::vector<double> xs() const;
};

struct RunConfig {
  GasSpectrum spectrum;
  nlohmann::json reflection = {{"kind", "constant"}, {"r1", 1.0}};
  GridSpec grid;
  std::vector<Route> routes = {Route::gas, Route::asym};
  int N = 100;
  int n_nodes = 200;
  /// 0 selects the hardware concurrency.
  int threads = 0;
  std::string output = "kdvgas_out.csv";
  std::string format = "csv";

  ReflectionCoefficient make_reflection() const;
  bool has_route(Route r) const;
  nlohmann::json to_json() const;
  /// Throws ConfigError on any schema or invariant violation.
  static RunConfig from_json(const nlohmann::json& j);
  static RunConfig fig1();
};

std::vector<Route> parse_routes(const std::string& csv);
const char* route_name(Route r);

struct ComparisonRow {
  double x = 0.0;
  double t = 0.0;
  std::optional<double> u_exact;
  std::optional<double> u_gas;
  std::optional<double> u_asym;
  std::string region;
  std::vector<std::string> flags;
};

struct EvalResult {
  std::vector<ComparisonRow> rows;
  nlohmann::json summary;
};

/// Evaluates the sweep; guard failures become flags and never abort.
EvalResult run_sweep(const RunConfig& config);

std::string rows_to_csv(const std::vector<ComparisonRow>& rows);
nlohmann::json rows_to_json(const std::vector<ComparisonRow>& rows);

/// Writes the dataset and a sidecar <output>.summary.json; throws IoError.
EvalResult cmd_eval(const RunConfig& config);

struct WhithamRow {
  double xi = 0.0;
  double alpha = 0.0;
  double m_alpha = 0.0;
  double period = 0.0;
  double amplitude = 0.0;
  bool degenerate = false;
};

/// Rows from xi_crit to eta2^2 inclusive; the last row sits on the clamped edge.
std::vector<WhithamRow> cmd_whitham(const GasSpectrum& spectrum, int n_samples);
std::string whitham_to_csv(const std::vector<WhithamRow>& rows);
nlohmann::json whitham_to_json(const GasSpectrum& spectrum, const std::vector<WhithamRow>& rows);

nlohmann::json cmd_phases(const RunConfig& config);

struct CheckResult {
  std::string check;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

std::vector<CheckResult> cmd_validate(const RunConfig& config);
nlohmann::json checks_to_json(const std::vector<CheckResult>& checks);

/// Writes text to path, throwing IoError on failure.
void write_file(const std::string& path, const std::string& text);

}  // namespace kdvgas
