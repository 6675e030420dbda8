#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scenario.hpp"

namespace levitrap {

struct OracleCheck {
  std::string name;
  double estimate = 0.0;
  double standard_error = 0.0;
  double target = 0.0;
  double sigma_distance = 0.0;  // |estimate - target| / standard_error
  double relative_error = 0.0;  // 0 when the target is zero
  double relative_bound = 0.0;  // 0 means sigma-only check
  bool passed = false;
};

struct OracleRunResult {
  std::vector<OracleCheck> checks;
  bool all_pass = true;
  std::uint64_t seed = 0;
  double duration = 0.0;       // photon-stream duration actually used, s
  std::uint64_t events = 0;    // scatter events
};

// Monte-Carlo photon oracle against the closed-form coefficients: mean
// pressure, pressure floor, recoil floors and means, angular moments, and
// the classically-modulated response. duration <= 0 picks a duration with
// ~4e6 expected scatter events. dump_path, when nonempty, writes the raw
// stream dump.
OracleRunResult run_psd_oracle(const Scenario& s, std::uint64_t seed, double duration,
                               const std::string& dump_path = "");

// Exact-jump ladder simulations against the closed-form occupation on
// randomized admissible rate sets, plus one supercritical divergence run.
OracleRunResult run_ladder_oracle(std::uint64_t seed, int rate_sets = 10);

std::string render_oracle_text(const std::vector<OracleRunResult>& runs);
std::string render_oracle_json(const std::vector<OracleRunResult>& runs);

}  // namespace levitrap
