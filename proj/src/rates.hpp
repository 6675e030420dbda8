#pragma once

#include <array>
#include <optional>

#include "optics.hpp"
#include "thermal.hpp"

namespace levitrap {

// Per-axis trap rates: mechanical frequencies, thermal occupations,
// trapping-force (gradient) shot-noise rates, radiation-pressure/recoil
// rates, the critical damping rate, and linewidths.
struct RateSet {
  std::array<double, 3> omega{};      // rad/s
  std::array<double, 3> m_thermal{};  // Bose occupation at the effective temperature
  std::array<double, 3> gamma_g{};    // trapping-force noise rate, 1/s
  std::array<double, 3> gamma_r{};    // pressure + recoil noise rate, 1/s
  double gamma_cr = 0.0;              // max_i(8 gamma_g_i)
  double gamma = 0.0;                 // intrinsic damping at the scenario pressure
  std::array<double, 3> linewidth{};  // delta_i = (gamma + gamma_fb_i)/2
};

// One-quantum / two-quantum ladder rates of the phonon rate equation for a
// single axis. A steady state exists iff gamma > 8 gamma_g.
struct LadderRates {
  double up1 = 0.0;    // m_th*gamma + gamma_r
  double down1 = 0.0;  // m_th*gamma + gamma + gamma_r
  double up2 = 0.0;    // gamma_g
  double down2 = 0.0;  // gamma_g

  double gamma() const { return down1 - up1; }
  bool admissible() const { return gamma() > 8.0 * up2; }
};

RateSet shot_noise_rates(const OpticalCoefficients& coeffs, const ParticleSpec& p,
                         const BeamSpec& beam, const ThermalState& thermal,
                         const std::array<double, 3>& feedback_gains = {0.0, 0.0, 0.0});

// Closed-form steady-state occupation per axis. Throws InstabilityError
// carrying gamma/gamma_cr when the damping is at or below critical.
std::array<double, 3> steady_state_occupation(const RateSet& rates);

// The same closed form for one generic ladder.
double ladder_occupation(const LadderRates& lr);

LadderRates ladder_rates(const RateSet& rates, int axis);

}  // namespace levitrap
