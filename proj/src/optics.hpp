#pragma once

#include <array>
#include <complex>

#include "scenario.hpp"

namespace levitrap {

struct Polarizability {
  std::complex<double> alpha;  // exact, F m^2
  double alpha_r = 0.0;        // low-loss real part, 4 pi eps0 a R^3
  double alpha_i = 0.0;        // low-loss imaginary part, 8 pi eps0 a^2 k0^3 R^6 / 3
  double cm_ratio = 0.0;       // a = (eps_R - 1)/(eps_R + 2)
};

// Classical coefficients of the trap: stiffness per watt (A_i), mean
// radiation pressure per watt (B), shot-noise pressure and recoil
// amplitudes (B', C_i), scattered/absorbed powers.
struct OpticalCoefficients {
  std::array<double, 3> stiffness_per_watt{};  // A_1, A_2, A_3  [N/(W m)]
  double pressure_per_watt = 0.0;              // B  [N/W]
  double pressure_noise_amp = 0.0;             // B'
  std::array<double, 3> recoil_noise_amp{};    // C_1, C_2, C_3
  double axial_wavenumber = 0.0;               // k_z [1/m]
  double scattered_power = 0.0;                // W
  double absorbed_power = 0.0;                 // W
};

// Normalized Gaussian-beam field E_inc/E0 at (x, y, z) relative to the
// focus, with Gouy and curvature phases included.
std::complex<double> incident_field(const BeamSpec& beam, double x, double y, double z);

Polarizability compute_polarizability(const ParticleSpec& p, const BeamSpec& beam);

OpticalCoefficients compute_coefficients(const ParticleSpec& p, const BeamSpec& beam);

// Omega_i = sqrt(A_i * P / M).
std::array<double, 3> trap_frequencies(const OpticalCoefficients& coeffs,
                                       const ParticleSpec& p, const BeamSpec& beam);

// Scattered power obtained by integrating the far-field dipole flux with
// the exact polarizability; the quadrature cross-check for scattered_power.
double scattered_power_quadrature(const ParticleSpec& p, const BeamSpec& beam,
                                  int panels = 2048);

}  // namespace levitrap
