#pragma once

#include <string>
#include <vector>

#include "scenario.hpp"

namespace levitrap {

// Built-in scenarios used by the regression runner, the oracle defaults and
// the bundled config files:
//   70nm, 180nm                       base (no feedback)
//   70nm-parametric, 180nm-parametric filtered parametric plan at 0.1 of
//                                     the critical gain cube
//   70nm-hybrid-k1 / -k3, 180nm-...   hybrid plans at the optimum Coulomb gain
Scenario builtin_scenario(const std::string& name);

const std::vector<std::string>& builtin_scenario_names();

}  // namespace levitrap
