#include "rates.hpp"

#include <cmath>

#include "constants.hpp"
#include "errors.hpp"

namespace levitrap {

RateSet shot_noise_rates(const OpticalCoefficients& coeffs, const ParticleSpec& p,
                         const BeamSpec& beam, const ThermalState& thermal,
                         const std::array<double, 3>& feedback_gains) {
  RateSet r;
  r.omega = trap_frequencies(coeffs, p, beam);
  for (int i = 0; i < 3; ++i) {
    if (!(r.omega[i] > 0.0))
      throw ValidationError("shot-noise rates require positive trap frequencies");
  }
  const double mass = p.mass();
  const double hw0 = phys::hbar * beam.angular_frequency();
  const double power = beam.mean_power;
  const double power_psd = hw0 * power;  // S_PL, white, double-sided in omega

  for (int i = 0; i < 3; ++i) {
    const double a_i = coeffs.stiffness_per_watt[i];
    // Two algebraic routes to the same rate; they must agree because
    // omega^2 = A*P/M by construction.
    const double via_psd =
        a_i * a_i * power_psd / (16.0 * mass * mass * r.omega[i] * r.omega[i]);
    const double direct = a_i * hw0 / (16.0 * mass);
    if (std::abs(via_psd - direct) > 1e-10 * direct)
      throw Error("internal: the two gradient-noise rate forms disagree");
    r.gamma_g[i] = direct;

    const double b_prime = (i == 2) ? coeffs.pressure_noise_amp : 0.0;
    const double c_i = coeffs.recoil_noise_amp[i];
    const double force_psd = (b_prime * b_prime + c_i * c_i) * power_psd;
    r.gamma_r[i] = force_psd / (2.0 * phys::hbar * mass * r.omega[i]);

    const double x = phys::hbar * r.omega[i] /
                     (phys::boltzmann * thermal.effective_temperature);
    r.m_thermal[i] = 1.0 / std::expm1(x);

    r.linewidth[i] = 0.5 * (thermal.gamma + feedback_gains[i]);
  }
  r.gamma = thermal.gamma;
  r.gamma_cr = 8.0 * std::max({r.gamma_g[0], r.gamma_g[1], r.gamma_g[2]});
  return r;
}

double ladder_occupation(const LadderRates& lr) {
  const double gamma = lr.gamma();
  const double denominator = gamma - 8.0 * lr.up2;
  if (!(denominator > 0.0)) {
    const double ratio = gamma / (8.0 * lr.up2);
    throw InstabilityError(
        "trap unstable: damping at or below the critical level (gamma/gamma_cr = " +
            std::to_string(ratio) + ")",
        ratio);
  }
  return (lr.up1 + 4.0 * lr.up2) / denominator;
}

std::array<double, 3> steady_state_occupation(const RateSet& rates) {
  std::array<double, 3> m{};
  for (int i = 0; i < 3; ++i) {
    const double denominator = rates.gamma - 8.0 * rates.gamma_g[i];
    if (!(denominator > 0.0)) {
      const double ratio = rates.gamma / rates.gamma_cr;
      throw InstabilityError(
          "trap unstable: damping at or below the critical level (gamma/gamma_cr = " +
              std::to_string(ratio) + ")",
          ratio, i + 1);
    }
    m[i] = (rates.m_thermal[i] * rates.gamma + rates.gamma_r[i] + 4.0 * rates.gamma_g[i]) /
           denominator;
  }
  return m;
}

LadderRates ladder_rates(const RateSet& rates, int axis) {
  if (axis < 1 || axis > 3) throw ValidationError("axis must be 1, 2 or 3");
  const int i = axis - 1;
  LadderRates lr;
  lr.up1 = rates.m_thermal[i] * rates.gamma + rates.gamma_r[i];
  lr.down1 = rates.m_thermal[i] * rates.gamma + rates.gamma + rates.gamma_r[i];
  lr.up2 = rates.gamma_g[i];
  lr.down2 = rates.gamma_g[i];
  return lr;
}

}  // namespace levitrap
