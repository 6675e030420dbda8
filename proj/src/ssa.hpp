#pragma once

#include <cstdint>

#include "rates.hpp"

namespace levitrap {

struct SsaResult {
  double time_weighted_mean = 0.0;
  double standard_error = 0.0;  // batch-means estimate
  std::uint64_t jump_count = 0;
  bool diverged = false;  // state guard exceeded before the duration elapsed
  double simulated_time = 0.0;
};

// Exact-jump simulation of the one-axis phonon ladder. Burn-in
// 10/(gamma - 8 gamma_g) is discarded; the run must cover at least
// 50/(gamma - 8 gamma_g) or UndersampledError is thrown. For inadmissible
// rates (gamma <= 8 gamma_g) the run is expected to hit the state guard
// and reports diverged = true instead of throwing.
SsaResult ssa_fock_trajectory(const LadderRates& lr, double duration, std::uint64_t seed,
                              std::uint64_t state_guard = 100'000'000ull);

}  // namespace levitrap
