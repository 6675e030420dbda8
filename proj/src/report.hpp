#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "feedback.hpp"
#include "scenario.hpp"

namespace levitrap {

// Everything the pipeline produces for one scenario.
struct PipelineResult {
  ValidationReport validation;
  Polarizability polarizability;
  OpticalCoefficients coeffs;
  std::array<double, 3> omega{};
  ThermalState thermal;
  RateSet rates;
  double pressure_critical = 0.0;  // Pa
  std::array<double, 3> occupation_no_feedback{};
  std::optional<NoiseFloor> noise;
  std::optional<FeedbackReport> feedback;
  std::optional<ConditionLedger> conditions;
  std::vector<std::string> warnings;
};

// Runs the full pipeline. Validation failures raise ValidationError;
// sub-critical damping raises InstabilityError. In strict mode, failed
// (non-exempt) operating conditions also raise ValidationError.
PipelineResult run_pipeline(const Scenario& s, bool strict = false);

// Deterministic document: sorted keys, %.12e floats. generated_at honors
// the LEVITRAP_TIMESTAMP environment variable so runs can be reproduced
// byte for byte.
nlohmann::json report_document(const Scenario& s, const PipelineResult& r);

std::string render_report(const nlohmann::json& doc, const std::string& format);

const char* tool_version();

}  // namespace levitrap
