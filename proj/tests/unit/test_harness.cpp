#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "kdvgas/asymptotics.hpp"
#include "kdvgas/errors.hpp"
#include "kdvgas/harness.hpp"

using namespace kdvgas;

namespace {

RunConfig small_config() {
  nlohmann::json j = {{"eta1", 0.5},
                      {"eta2", 1.5},
                      {"grid", {{"x_min", -5.0}, {"x_max", 5.0}, {"nx", 21}, {"t", {0.0}}}},
                      {"routes", "exact,gas"},
                      {"N", 100}};
  return RunConfig::from_json(j);
}

std::string read(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("config defaults and echo") {
  const RunConfig c = RunConfig::from_json(nlohmann::json::object());
  CHECK(c.spectrum.eta1 == 0.5);
  CHECK(c.spectrum.eta2 == 1.5);
  CHECK(c.grid.nx == 101);
  CHECK(c.routes.size() == 2);
  const RunConfig back = RunConfig::from_json(c.to_json());
  CHECK(back.to_json() == c.to_json());
  const RunConfig nested = RunConfig::from_json({{"spectrum", {{"eta1", 0.2}, {"eta2", 0.9}}}});
  CHECK(nested.spectrum.eta2 == 0.9);
}

TEST_CASE("config rejection") {
  using J = nlohmann::json;
  CHECK_THROWS_AS(RunConfig::from_json({{"eta1", 1.5}, {"eta2", 0.5}}), ConfigError);
  CHECK_THROWS_AS(RunConfig::from_json({{"eta1", 1.0}, {"eta2", 1.0}}), ConfigError);
  CHECK_THROWS_AS(RunConfig::from_json({{"grid", {{"nx", 1}}}}), ConfigError);
  CHECK_THROWS_AS(RunConfig::from_json({{"grid", {{"x_min", 2.0}, {"x_max", 1.0}}}}), ConfigError);
  CHECK_THROWS_AS(RunConfig::from_json({{"grid", {{"t", J::array()}}}}), ConfigError);
  CHECK_THROWS_AS(RunConfig::from_json({{"grid", {{"t", {-1.0}}}}}), ConfigError);
  CHECK_THROWS_AS(RunConfig::from_json({{"routes", J::array()}}), ConfigError);
  CHECK_THROWS_AS(RunConfig::from_json({{"routes", "gas,teleport"}}), ConfigError);
  CHECK_THROWS_AS(RunConfig::from_json({{"routes", "exact"}, {"N", 0}}), ConfigError);
  CHECK_NOTHROW(RunConfig::from_json({{"routes", "gas"}, {"N", 0}}));
  CHECK_THROWS_AS(RunConfig::from_json({{"output", {{"format", "xml"}}}}), ConfigError);
  CHECK_THROWS_AS(RunConfig::from_json({{"N", "many"}}), ConfigError);
  CHECK_THROWS_AS(RunConfig::from_json({{"reflection", {{"kind", "constant"}, {"r1", -2.0}}}}),
                  ConfigError);
  CHECK_THROWS_AS(RunConfig::from_json(J::array()), ConfigError);
}

TEST_CASE("route parsing") {
  const auto r = parse_routes("asym, gas,asym");
  REQUIRE(r.size() == 2);
  CHECK(r[0] == Route::asym);
  CHECK(r[1] == Route::gas);
  CHECK(std::string(route_name(Route::exact)) == "exact");
  CHECK_THROWS_AS(parse_routes(""), ConfigError);
}

TEST_CASE("sweep order and summary") {
  RunConfig c = small_config();
  c.grid.t = {0.0, 0.25};
  c.grid.nx = 5;
  const EvalResult res = run_sweep(c);
  REQUIRE(res.rows.size() == 10);
  CHECK(res.rows[0].t == 0.0);
  CHECK(res.rows[4].t == 0.0);
  CHECK(res.rows[5].t == 0.25);
  CHECK(res.rows[1].x == doctest::Approx(-2.5));
  for (const auto& row : res.rows) {
    CHECK(row.u_exact.has_value());
    CHECK(row.u_gas.has_value());
    CHECK(row.flags.empty());
  }
  const auto d = res.summary["max_abs_diff"]["exact_gas"];
  REQUIRE(d.is_number());
  CHECK(d.get<double>() > 0.0);
  CHECK(d.get<double>() < 0.1);
  CHECK(res.summary["config"]["N"] == 100);
}

TEST_CASE("zero reflection through the gas route") {
  RunConfig c = small_config();
  c.routes = {Route::gas};
  c.reflection = {{"kind", "constant"}, {"r1", 0.0}};
  c.grid.t = {0.0, 50.0};
  for (const auto& row : run_sweep(c).rows) {
    REQUIRE(row.u_gas.has_value());
    CHECK(*row.u_gas == 0.0);
  }
}

TEST_CASE("exact route with zero reflection is flagged") {
  RunConfig c = small_config();
  c.reflection = {{"kind", "constant"}, {"r1", 0.0}};
  c.grid.nx = 3;
  for (const auto& row : run_sweep(c).rows) {
    CHECK_FALSE(row.u_exact.has_value());
    CHECK(row.u_gas.has_value());
    CHECK(row.flags.size() == 1);
    CHECK(row.flags[0] == "exact:positivity");
  }
}

TEST_CASE("overflow rows are flagged, never fatal") {
  RunConfig c = small_config();
  c.routes = {Route::gas};
  c.grid = {-200.0, 200.0, 9, {50.0}};
  const EvalResult res = run_sweep(c);
  for (const auto& row : res.rows) {
    CHECK_FALSE(row.u_gas.has_value());
    REQUIRE(row.u_asym.has_value());
    CHECK(row.flags[0] == "gas:overflow");
    CHECK(row.flags.back() == "fallback:asym");
  }
  CHECK(res.summary["flagged_rows"] == 9);
}

TEST_CASE("csv format and determinism across thread counts") {
  RunConfig c = small_config();
  c.routes = {Route::gas, Route::asym};
  c.grid = {-20.0, 4.0, 13, {0.0, 0.5}};
  c.threads = 1;
  const std::string one = rows_to_csv(run_sweep(c).rows);
  c.threads = 4;
  const std::string four = rows_to_csv(run_sweep(c).rows);
  CHECK(one == four);
  CHECK(one.rfind("x,t,u_exact,u_gas,u_asym,region,flags\n", 0) == 0);
  std::istringstream lines(one);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    CHECK(std::count(line.begin(), line.end(), ',') == 6);
    ++count;
  }
  CHECK(count == 27);
  // rows at t = 0, x >= 0 have no asymptotic value and say why
  CHECK(one.find("4,0,,") != std::string::npos);
  CHECK(one.find("asym:range") != std::string::npos);
}

TEST_CASE("json rows") {
  RunConfig c = small_config();
  c.grid.nx = 2;
  const auto j = rows_to_json(run_sweep(c).rows);
  REQUIRE(j.size() == 2);
  CHECK(j[0]["u_asym"].is_null());
  CHECK(j[0]["u_gas"].is_number());
}

TEST_CASE("cmd_eval writes the dataset and summary") {
  const auto dir = std::filesystem::temp_directory_path() / "kdvgas_harness_test";
  std::filesystem::create_directories(dir);
  RunConfig c = small_config();
  c.grid.nx = 3;
  c.output = (dir / "out.csv").string();
  cmd_eval(c);
  CHECK(read(dir / "out.csv").find("x,t,u_exact") == 0);
  const auto summary = nlohmann::json::parse(read(dir / "out.csv.summary.json"));
  CHECK(summary["rows"] == 3);
  c.format = "json";
  c.output = (dir / "out.json").string();
  cmd_eval(c);
  CHECK(nlohmann::json::parse(read(dir / "out.json")).size() == 3);
  c.output = (dir / "missing" / "deeper" / "out.csv").string();
  CHECK_THROWS_AS(cmd_eval(c), IoError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("whitham table") {
  const GasSpectrum sp(0.5, 1.5);
  const auto rows = cmd_whitham(sp, 50);
  REQUIRE(rows.size() == 50);
  CHECK(rows.front().xi == doctest::Approx(xi_crit(sp)));
  CHECK(std::abs(rows.front().alpha - 0.5) < 1e-10);
  CHECK(rows.back().xi == 2.25);
  CHECK(rows.back().alpha == doctest::Approx(1.5).epsilon(1e-9));
  CHECK(rows.back().degenerate);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].amplitude == doctest::Approx(2 * rows[i].alpha * rows[i].alpha));
    if (i > 0) CHECK(rows[i].alpha > rows[i - 1].alpha);
  }
  const auto j = whitham_to_json(sp, rows);
  CHECK(j["eta2_squared"] == 2.25);
  CHECK(whitham_to_csv(rows).rfind("xi,alpha,m_alpha,period,amplitude,degenerate\n", 0) == 0);
  CHECK_THROWS_AS(cmd_whitham(sp, 1), DomainError);
}

TEST_CASE("phases report") {
  const auto j = cmd_phases(RunConfig{});
  CHECK(j["phi"].get<double>() == doctest::Approx(-0.37193654124162284).epsilon(1e-12));
  CHECK(j["Omega_imag"].get<double>() < 0.0);
  RunConfig z;
  z.reflection = {{"kind", "constant"}, {"r1", 0.0}};
  CHECK_FALSE(cmd_phases(z).contains("phi"));
}

TEST_CASE("validate on the default and overflow configurations") {
  RunConfig c;
  c.grid = {-10.0, 10.0, 11, {0.0, 1.0}};
  for (const auto& check : cmd_validate(c)) {
    INFO(check.check << " = " << check.value);
    CHECK(check.pass);
  }
  c.routes = {Route::gas};
  c.grid = {-200.0, 200.0, 5, {50.0}};
  for (const auto& check : cmd_validate(c)) {
    INFO(check.check << " = " << check.value);
    CHECK(check.pass);
  }
  const auto j = checks_to_json(cmd_validate(c));
  CHECK(j[0].contains("threshold"));
}

TEST_CASE("write_file") {
  CHECK_THROWS_AS(write_file("/nonexistent-dir/x.csv", "a"), IoError);
}
