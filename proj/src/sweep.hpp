#pragma once

#include <string>
#include <vector>

#include "scenario.hpp"

namespace levitrap {

// One swept parameter, parsed from "name=start:stop:steps[:log]".
struct SweepAxis {
  std::string name;
  std::vector<double> values;
};

SweepAxis parse_sweep_axis(const std::string& spec);

// Names accepted by parse_sweep_axis / apply_parameter.
const std::vector<std::string>& sweep_parameter_whitelist();

void apply_parameter(Scenario& s, const std::string& name, double value);

// Evaluates the full pipeline on the (up to 2-parameter) grid and returns
// an RFC-4180 CSV table, one row per grid point, all report scalars as
// columns; failed points carry the error text instead of crashing. Threads
// come from LEVITRAP_THREADS (default: hardware parallelism); row order is
// deterministic regardless of scheduling.
std::string run_sweep(const Scenario& base, const std::vector<SweepAxis>& axes,
                      int threads = 0);

}  // namespace levitrap
