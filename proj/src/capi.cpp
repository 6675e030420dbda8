#include "levitrap/levitrap.h"

#include <cstring>
#include <string>

#include "errors.hpp"
#include "fixtures.hpp"
#include "json_io.hpp"
#include "oracle_suite.hpp"
#include "regression.hpp"
#include "report.hpp"
#include "scenario.hpp"
#include "sweep.hpp"

using namespace levitrap;

struct lvt_scenario {
  Scenario scenario;
};

struct lvt_report {
  nlohmann::json document;
};

namespace {

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_error(char** slot, const std::string& message) {
  if (slot) *slot = copy_string(message);
}

// Maps the exception hierarchy onto status codes; fn returns a status for
// the success path.
template <typename Fn>
lvt_status guarded(char** error_message, Fn&& fn) {
  if (error_message) *error_message = nullptr;
  try {
    return fn();
  } catch (const ParseError& e) {
    set_error(error_message, e.what());
    return LVT_ERR_PARSE;
  } catch (const ValidationError& e) {
    set_error(error_message, e.what());
    return LVT_ERR_VALIDATION;
  } catch (const InstabilityError& e) {
    set_error(error_message, e.what());
    return LVT_ERR_UNSTABLE;
  } catch (const ConvergenceError& e) {
    set_error(error_message, e.what());
    return LVT_ERR_NO_CONVERGENCE;
  } catch (const UndersampledError& e) {
    set_error(error_message, e.what());
    return LVT_ERR_UNDERSAMPLED;
  } catch (const std::exception& e) {
    set_error(error_message, e.what());
    return LVT_ERR_INTERNAL;
  }
}

}  // namespace

extern "C" {

const char* lvt_version(void) { return tool_version(); }

lvt_status lvt_scenario_from_json(const char* json_text, lvt_scenario** out,
                                  char** error_message) {
  if (!json_text || !out) return LVT_ERR_INVALID_ARGUMENT;
  return guarded(error_message, [&] {
    *out = new lvt_scenario{scenario_from_json(json_text)};
    return LVT_OK;
  });
}

lvt_status lvt_scenario_from_file(const char* path, lvt_scenario** out,
                                  char** error_message) {
  if (!path || !out) return LVT_ERR_INVALID_ARGUMENT;
  return guarded(error_message, [&] {
    *out = new lvt_scenario{scenario_from_file(path)};
    return LVT_OK;
  });
}

lvt_status lvt_scenario_builtin(const char* name, lvt_scenario** out,
                                char** error_message) {
  if (!name || !out) return LVT_ERR_INVALID_ARGUMENT;
  return guarded(error_message, [&] {
    *out = new lvt_scenario{builtin_scenario(name)};
    return LVT_OK;
  });
}

void lvt_scenario_free(lvt_scenario* scenario) { delete scenario; }

lvt_status lvt_report_compute(const lvt_scenario* scenario, int strict, lvt_report** out,
                              char** error_message) {
  if (!scenario || !out) return LVT_ERR_INVALID_ARGUMENT;
  return guarded(error_message, [&] {
    const PipelineResult result = run_pipeline(scenario->scenario, strict != 0);
    *out = new lvt_report{report_document(scenario->scenario, result)};
    return LVT_OK;
  });
}

lvt_status lvt_report_render(const lvt_report* report, const char* format,
                             char** out_text) {
  if (!report || !format || !out_text) return LVT_ERR_INVALID_ARGUMENT;
  return guarded(nullptr, [&] {
    *out_text = copy_string(render_report(report->document, format));
    return LVT_OK;
  });
}

lvt_status lvt_report_scalar(const lvt_report* report, const char* key, double* out) {
  if (!report || !key || !out) return LVT_ERR_INVALID_ARGUMENT;
  const nlohmann::json* node = &report->document;
  std::string path(key);
  size_t pos = 0;
  while (pos <= path.size()) {
    const size_t dot = path.find('.', pos);
    const std::string part = path.substr(pos, dot - pos);
    if (!node->is_object() || !node->contains(part)) return LVT_ERR_INVALID_ARGUMENT;
    node = &node->at(part);
    if (dot == std::string::npos) break;
    pos = dot + 1;
  }
  if (!node->is_number()) return LVT_ERR_INVALID_ARGUMENT;
  *out = node->get<double>();
  return LVT_OK;
}

void lvt_report_free(lvt_report* report) { delete report; }

lvt_status lvt_sweep_csv(const lvt_scenario* scenario, const char* spec1,
                         const char* spec2, int threads, char** out_csv,
                         char** error_message) {
  if (!scenario || !spec1 || !out_csv) return LVT_ERR_INVALID_ARGUMENT;
  return guarded(error_message, [&] {
    std::vector<SweepAxis> axes;
    axes.push_back(parse_sweep_axis(spec1));
    if (spec2) axes.push_back(parse_sweep_axis(spec2));
    *out_csv = copy_string(run_sweep(scenario->scenario, axes, threads));
    return LVT_OK;
  });
}

lvt_status lvt_oracle_run(const lvt_scenario* scenario, const char* which,
                          uint64_t seed, double duration, const char* dump_path,
                          const char* format, char** out_text, int* all_pass,
                          char** error_message) {
  if (!scenario || !which || !out_text) return LVT_ERR_INVALID_ARGUMENT;
  return guarded(error_message, [&] {
    const std::string what(which);
    std::vector<OracleRunResult> runs;
    if (what == "psd" || what == "all")
      runs.push_back(run_psd_oracle(scenario->scenario, seed, duration,
                                    dump_path ? dump_path : ""));
    if (what == "ladder" || what == "all") runs.push_back(run_ladder_oracle(seed));
    if (runs.empty())
      throw ParseError("unknown oracle selection '" + what +
                       "' (expected psd, ladder or all)");
    bool pass = true;
    for (const auto& r : runs) pass = pass && r.all_pass;
    if (all_pass) *all_pass = pass ? 1 : 0;
    const std::string fmt = format ? format : "text";
    if (fmt == "json")
      *out_text = copy_string(render_oracle_json(runs));
    else if (fmt == "text")
      *out_text = copy_string(render_oracle_text(runs));
    else
      throw ParseError("unknown format '" + fmt + "' (expected text or json)");
    return LVT_OK;
  });
}

lvt_status lvt_regression_run(const char* case_name, const char* format,
                              char** out_text, int* tier1_pass, char** error_message) {
  if (!case_name || !out_text) return LVT_ERR_INVALID_ARGUMENT;
  return guarded(error_message, [&] {
    const RegressionResult result = run_regression(case_name);
    if (tier1_pass) *tier1_pass = result.tier1_pass ? 1 : 0;
    const std::string fmt = format ? format : "table";
    if (fmt == "table")
      *out_text = copy_string(render_regression_table(result));
    else if (fmt == "json")
      *out_text = copy_string(render_regression_json(result));
    else if (fmt == "csv")
      *out_text = copy_string(render_regression_csv(result));
    else
      throw ParseError("unknown format '" + fmt + "' (expected table, json or csv)");
    return LVT_OK;
  });
}

void lvt_string_free(char* text) { delete[] text; }

}  // extern "C"
