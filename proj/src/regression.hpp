#pragma once

#include <string>
#include <vector>

namespace levitrap {

// One comparison of a computed quantity against the built-in reference
// value for the 70 nm / 180 nm test cases. Tier 1 rows gate the exit code;
// tier 2 rows must land within a factor of 20 and come with a gap
// decomposition; tier 0 rows are informational.
struct RegressionRow {
  std::string case_id;    // "70nm" or "180nm"
  std::string quantity;
  double computed = 0.0;
  double reference = 0.0;
  std::string unit;       // "rad/s", "K", "Pa", "1", "bool"
  int tier = 1;
  double tolerance = 0.0;  // relative tolerance for tier 1; 20.0 for tier 2 factors
  std::string tolerance_class;
  bool passed = false;
};

// Per (case, scheme, axis): the measured gap factors against the reference
// values, decomposed into an implied heating-rate factor and an implied
// noise-floor factor under the closed-form parameter dependence.
struct GapDecomposition {
  std::string case_id;
  std::string scheme;  // "parametric" or "hybrid"
  int axis = 0;
  double heating_factor = 0.0;
  double noise_factor = 0.0;
};

struct RegressionResult {
  std::vector<RegressionRow> rows;
  std::vector<GapDecomposition> decomposition;
  bool tier1_pass = false;
  bool tier2_pass = false;
};

// case_name: "70nm", "180nm" or "all" (aliases with a leading "sv-" or
// "§V-" are accepted).
RegressionResult run_regression(const std::string& case_name);

std::string render_regression_table(const RegressionResult& r);
std::string render_regression_json(const RegressionResult& r);
std::string render_regression_csv(const RegressionResult& r);

}  // namespace levitrap
