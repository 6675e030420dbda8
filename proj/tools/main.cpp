// levitrap command line: report | sweep | oracle | regression.
// The binary talks to the core exclusively through the shared-library C API.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "levitrap/levitrap.h"

namespace {

int exit_code_for(lvt_status status) {
  switch (status) {
    case LVT_OK:
      return 0;
    case LVT_ERR_INVALID_ARGUMENT:
    case LVT_ERR_PARSE:
    case LVT_ERR_VALIDATION:
      return 2;
    case LVT_ERR_UNSTABLE:
      return 3;
    case LVT_ERR_UNDERSAMPLED:
      return 4;
    case LVT_ERR_NO_CONVERGENCE:
      return 5;
    default:
      return 1;
  }
}

const char* status_name(lvt_status status) {
  switch (status) {
    case LVT_OK:
      return "ok";
    case LVT_ERR_INVALID_ARGUMENT:
      return "invalid_argument";
    case LVT_ERR_PARSE:
      return "parse";
    case LVT_ERR_VALIDATION:
      return "validation";
    case LVT_ERR_UNSTABLE:
      return "instability";
    case LVT_ERR_NO_CONVERGENCE:
      return "no_convergence";
    case LVT_ERR_UNDERSAMPLED:
      return "undersampled";
    case LVT_ERR_IO:
      return "io";
    default:
      return "internal";
  }
}

// Machine-readable error object on stderr, exit code per class.
int fail(lvt_status status, char* message) {
  std::string text = message ? message : "unknown error";
  lvt_string_free(message);
  std::string escaped;
  for (char c : text) {
    if (c == '"' || c == '\\') escaped += '\\';
    if (c == '\n') {
      escaped += "\\n";
      continue;
    }
    escaped += c;
  }
  std::cerr << "{\"error\": {\"code\": " << static_cast<int>(status) << ", \"type\": \""
            << status_name(status) << "\", \"message\": \"" << escaped << "\"}}\n";
  return exit_code_for(status);
}

int emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "{\"error\": {\"code\": 7, \"type\": \"io\", \"message\": \"cannot open "
              << out_path << "\"}}\n";
    return 1;
  }
  out << text;
  return 0;
}

struct ScenarioHandle {
  lvt_scenario* ptr = nullptr;
  ~ScenarioHandle() { lvt_scenario_free(ptr); }
};

lvt_status load_scenario(const std::string& config, ScenarioHandle& handle,
                         char** message) {
  if (config.rfind("builtin:", 0) == 0)
    return lvt_scenario_builtin(config.substr(8).c_str(), &handle.ptr, message);
  return lvt_scenario_from_file(config.c_str(), &handle.ptr, message);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"levitrap: levitated-nanoparticle trap and feedback-cooling analysis"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(lvt_version()));

  std::string config, out_path, format = "json";
  bool strict = false;

  auto* report = app.add_subcommand(
      "report", "evaluate the full pipeline for one scenario config");
  report->add_option("config", config,
                     "scenario JSON path (or builtin:<name>, e.g. builtin:70nm)")
      ->required();
  report->add_option("--format", format, "json or csv")->default_val("json");
  report->add_option("--out", out_path, "write to a file instead of stdout");
  report->add_flag("--strict", strict, "failed operating conditions become errors");

  std::vector<std::string> params;
  int threads = 0;
  auto* sweep = app.add_subcommand("sweep", "grid evaluation over 1-2 parameters, CSV out");
  sweep->add_option("config", config, "scenario JSON path (or builtin:<name>)")->required();
  sweep->add_option("--param", params, "name=start:stop:steps[:log] (repeatable, max 2)")
      ->required()
      ->expected(1, 2);
  sweep->add_option("--threads", threads, "worker threads (default: LEVITRAP_THREADS)");
  sweep->add_option("--out", out_path, "write to a file instead of stdout");

  std::string which = "all", dump_path, oracle_format = "text";
  std::uint64_t seed = 1;
  double duration = 0.0;
  auto* oracle = app.add_subcommand(
      "oracle", "stochastic verification suites against the closed forms");
  oracle->add_option("config", config, "scenario JSON path (or builtin:<name>)")->required();
  oracle->add_option("which", which, "psd | ladder | all")->default_val("all");
  oracle->add_option("--seed", seed, "stream seed")->default_val(1);
  oracle->add_option("--duration", duration, "photon-stream duration in seconds (0 = auto)");
  oracle->add_option("--dump", dump_path, "write the raw photon-stream dump here");
  oracle->add_option("--format", oracle_format, "text or json")->default_val("text");
  oracle->add_option("--out", out_path, "write to a file instead of stdout");

  std::string case_name = "all", regression_format = "table";
  auto* regression = app.add_subcommand(
      "regression", "compare computed values against the built-in references");
  regression->add_option("--case", case_name, "70nm | 180nm | all")->default_val("all");
  regression->add_option("--format", regression_format, "table, json or csv")
      ->default_val("table");
  regression->add_option("--out", out_path, "write to a file instead of stdout");

  CLI11_PARSE(app, argc, argv);

  char* message = nullptr;
  if (report->parsed()) {
    ScenarioHandle scenario;
    lvt_status status = load_scenario(config, scenario, &message);
    if (status != LVT_OK) return fail(status, message);
    lvt_report* rep = nullptr;
    status = lvt_report_compute(scenario.ptr, strict ? 1 : 0, &rep, &message);
    if (status != LVT_OK) return fail(status, message);
    char* text = nullptr;
    status = lvt_report_render(rep, format.c_str(), &text);
    lvt_report_free(rep);
    if (status != LVT_OK) return fail(status, message);
    std::string body(text);
    lvt_string_free(text);
    return emit(body, out_path);
  }

  if (sweep->parsed()) {
    ScenarioHandle scenario;
    lvt_status status = load_scenario(config, scenario, &message);
    if (status != LVT_OK) return fail(status, message);
    char* csv = nullptr;
    status = lvt_sweep_csv(scenario.ptr, params[0].c_str(),
                           params.size() > 1 ? params[1].c_str() : nullptr, threads,
                           &csv, &message);
    if (status != LVT_OK) return fail(status, message);
    std::string body(csv);
    lvt_string_free(csv);
    return emit(body, out_path);
  }

  if (oracle->parsed()) {
    ScenarioHandle scenario;
    lvt_status status = load_scenario(config, scenario, &message);
    if (status != LVT_OK) return fail(status, message);
    char* text = nullptr;
    int all_pass = 0;
    status = lvt_oracle_run(scenario.ptr, which.c_str(), seed, duration,
                            dump_path.empty() ? nullptr : dump_path.c_str(),
                            oracle_format.c_str(), &text, &all_pass, &message);
    if (status != LVT_OK) return fail(status, message);
    std::string body(text);
    lvt_string_free(text);
    const int rc = emit(body, out_path);
    return rc != 0 ? rc : (all_pass ? 0 : 1);
  }

  if (regression->parsed()) {
    char* text = nullptr;
    int tier1 = 0;
    lvt_status status = lvt_regression_run(case_name.c_str(), regression_format.c_str(),
                                           &text, &tier1, &message);
    if (status != LVT_OK) return fail(status, message);
    std::string body(text);
    lvt_string_free(text);
    const int rc = emit(body, out_path);
    return rc != 0 ? rc : (tier1 ? 0 : 1);
  }
  return 0;
}
