#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "kdvgas/errors.hpp"
#include "kdvgas/harness.hpp"

using namespace kdvgas;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitConfig = 2;
constexpr int kExitOther = 3;

struct Options {
  std::string config_path;
  std::string routes;
  std::string out;
  std::string format;
  int n_nodes = 0;
  int ensemble_n = 0;
  int threads = -1;
  int samples = 101;
};

RunConfig load_config(const Options& o, bool fig1) {
  nlohmann::json j = fig1 ? RunConfig::fig1().to_json() : nlohmann::json::object();
  if (!o.config_path.empty()) {
    std::ifstream f(o.config_path);
    if (!f) throw ConfigError("cannot read config '" + o.config_path + "'");
    nlohmann::json file;
    try {
      f >> file;
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("config parse error: ") + e.what());
    }
    if (!file.is_object()) throw ConfigError("config: expected a JSON object");
    j.merge_patch(file);
  }
  if (!o.routes.empty()) j["routes"] = o.routes;
  if (o.n_nodes > 0) j["n_nodes"] = o.n_nodes;
  if (o.ensemble_n != 0) j["N"] = o.ensemble_n;
  if (o.threads >= 0) j["threads"] = o.threads;
  if (!o.out.empty() || !o.format.empty()) {
    nlohmann::json out = j.contains("output") && j["output"].is_object() ? j["output"]
                                                                          : nlohmann::json::object();
    if (j.contains("output") && j["output"].is_string()) out["path"] = j["output"];
    if (!o.out.empty()) out["path"] = o.out;
    if (!o.format.empty()) out["format"] = o.format;
    j["output"] = out;
  }
  return RunConfig::from_json(j);
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_file(path, text);
  }
}

int run_eval(const Options& o, bool fig1) {
  RunConfig c = load_config(o, fig1);
  EvalResult r = cmd_eval(c);
  std::cout << r.summary.dump(2) << "\n";
  return kExitOk;
}

int run_whitham(const Options& o) {
  RunConfig c = load_config(o, false);
  auto rows = cmd_whitham(c.spectrum, o.samples);
  const bool json = c.format == "json";
  emit(o.out, json ? whitham_to_json(c.spectrum, rows).dump(2) + "\n" : whitham_to_csv(rows));
  return kExitOk;
}

int run_phases(const Options& o) {
  RunConfig c = load_config(o, false);
  emit(o.out, cmd_phases(c).dump(2) + "\n");
  return kExitOk;
}

int run_validate(const Options& o) {
  RunConfig c = load_config(o, false);
  auto checks = cmd_validate(c);
  bool ok = true;
  for (const auto& ch : checks) ok = ok && ch.pass;
  nlohmann::json report = {{"pass", ok}, {"checks", checks_to_json(checks)}};
  emit(o.out, report.dump(2) + "\n");
  return ok ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"KdV soliton gas evaluator"};
  app.require_subcommand(1);
  Options o;

  auto common = [&o](CLI::App* sub) {
    sub->add_option("--config", o.config_path, "JSON configuration file");
    sub->add_option("--out", o.out, "output path");
    sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--threads", o.threads, "worker threads (0 = all cores)");
  };
  auto sweep = [&o](CLI::App* sub) {
    sub->add_option("--routes", o.routes, "comma separated subset of exact,gas,asym");
    sub->add_option("--n-nodes", o.n_nodes, "quadrature nodes for the gas route");
    sub->add_option("--ensemble-n", o.ensemble_n, "soliton count for the exact route");
  };

  auto* eval = app.add_subcommand("eval", "evaluate u(x,t) on a grid");
  common(eval);
  sweep(eval);
  auto* fig1 = app.add_subcommand("fig1", "evaluate the t=10 reference profile");
  common(fig1);
  sweep(fig1);
  auto* whitham = app.add_subcommand("whitham", "tabulate the modulation parameter");
  common(whitham);
  whitham->add_option("--samples", o.samples, "number of rows")->check(CLI::Range(2, 1000000));
  auto* phases = app.add_subcommand("phases", "print frequencies and phase constants");
  common(phases);
  auto* validate = app.add_subcommand("validate", "run the invariant checks");
  common(validate);
  sweep(validate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*eval) return run_eval(o, false);
    if (*fig1) return run_eval(o, true);
    if (*whitham) return run_whitham(o);
    if (*phases) return run_phases(o);
    if (*validate) return run_validate(o);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DomainError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitOther;
  }
  return kExitOther;
}
