#include "ssa.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "errors.hpp"
#include "rng.hpp"

namespace levitrap {

SsaResult ssa_fock_trajectory(const LadderRates& lr, double duration, std::uint64_t seed,
                              std::uint64_t state_guard) {
  const bool admissible = lr.admissible();
  double burn_in = 0.0;
  if (admissible) {
    const double relax = lr.gamma() - 8.0 * lr.up2;
    burn_in = 10.0 / relax;
    if (duration < 50.0 / relax)
      throw UndersampledError(
          "ssa: duration must cover at least 50 relaxation times of the ladder");
  }

  Rng rng(seed, "ssa");
  SsaResult out;
  // Start near the expected occupation to shorten the transient; the
  // burn-in window is discarded either way.
  std::uint64_t m = 0;
  if (admissible) m = static_cast<std::uint64_t>(std::llround(ladder_occupation(lr)));

  constexpr int kBatches = 32;
  const double batch_span = (duration - burn_in) / kBatches;
  std::vector<double> batch_integral(kBatches, 0.0);
  double t = 0.0;
  const std::uint64_t jump_budget = 1'000'000'000ull;

  auto accumulate = [&](double from, double to, double state) {
    from = std::max(from, burn_in);
    if (to <= from) return;
    // split the occupancy interval across batch windows
    int b0 = static_cast<int>((from - burn_in) / batch_span);
    int b1 = static_cast<int>((to - burn_in) / batch_span);
    b0 = std::clamp(b0, 0, kBatches - 1);
    b1 = std::clamp(b1, 0, kBatches - 1);
    for (int b = b0; b <= b1; ++b) {
      const double lo = std::max(from, burn_in + b * batch_span);
      const double hi = std::min(to, burn_in + (b + 1) * batch_span);
      if (hi > lo) batch_integral[b] += state * (hi - lo);
    }
  };

  while (t < duration) {
    const double md = static_cast<double>(m);
    const double r_up1 = lr.up1 * (md + 1.0);
    const double r_down1 = lr.down1 * md;
    const double r_up2 = lr.up2 * (md + 1.0) * (md + 2.0);
    const double r_down2 = lr.down2 * md * (md - 1.0);
    const double total = r_up1 + r_down1 + r_up2 + r_down2;
    if (total <= 0.0) {
      accumulate(t, duration, md);
      t = duration;
      break;
    }
    const double dt = rng.exponential(total);
    const double t_next = std::min(t + dt, duration);
    accumulate(t, t_next, md);
    t = t_next;
    if (t >= duration) break;

    const double pick = rng.uniform() * total;
    if (pick < r_up1)
      m += 1;
    else if (pick < r_up1 + r_down1)
      m -= 1;
    else if (pick < r_up1 + r_down1 + r_up2)
      m += 2;
    else
      m -= 2;
    ++out.jump_count;

    if (m > state_guard) {
      out.diverged = true;
      break;
    }
    if (out.jump_count > jump_budget)
      throw UndersampledError("ssa: jump budget exhausted; lower the rates or duration");
  }
  out.simulated_time = t;

  double mean = 0.0;
  for (double b : batch_integral) mean += b;
  mean /= (duration - burn_in);
  out.time_weighted_mean = mean;

  double var = 0.0;
  for (double b : batch_integral) {
    const double bm = b / batch_span;
    var += (bm - mean) * (bm - mean);
  }
  var /= (kBatches - 1);
  out.standard_error = std::sqrt(var / kBatches);
  return out;
}

}  // namespace levitrap
