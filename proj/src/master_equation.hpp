#pragma once

#include <cstdint>
#include <vector>

#include "rates.hpp"

namespace levitrap {

struct MasterEquationSteadyState {
  std::vector<double> probabilities;  // P_0 .. P_n_max, normalized
  double mean = 0.0;
  double second_moment = 0.0;
  double tail_mass = 0.0;  // probability in the top 6 states
};

// Stationary distribution of the one-axis phonon rate equation on states
// 0..n_max (transitions m -> m+-1 and m -> m+-2 with the ladder rates),
// solved as the nullspace of the truncated generator with the
// normalization row replacing the last balance equation.
MasterEquationSteadyState master_equation_steady_state(const LadderRates& lr,
                                                       std::int64_t n_max);

// max(200, ceil(30 * closed-form mean)), capped at 2e6; throws when the
// cap is insufficient.
std::int64_t suggested_truncation(const LadderRates& lr);

}  // namespace levitrap
