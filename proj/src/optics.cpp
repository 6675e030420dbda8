#include "optics.hpp"

#include <cmath>

#include "constants.hpp"
#include "errors.hpp"

namespace levitrap {

std::complex<double> incident_field(const BeamSpec& beam, double x, double y, double z) {
  const double z0 = beam.rayleigh_range();
  const double w0 = beam.waist_radius();
  const double k0 = beam.wavenumber();
  const double expand = 1.0 + (z * z) / (z0 * z0);
  const double rho2 = x * x + y * y;
  const double amplitude = std::exp(-rho2 / (w0 * w0 * expand)) / std::sqrt(expand);
  // Wavefront curvature written with z in the numerator so the on-axis
  // focal plane (z = 0, infinite curvature radius) stays regular.
  const double curvature = k0 * rho2 * z / (2.0 * (z * z + z0 * z0));
  const double phase = k0 * z + curvature - std::atan(z / z0);
  return std::polar(amplitude, phase);
}

Polarizability compute_polarizability(const ParticleSpec& p, const BeamSpec& beam) {
  if (p.eps_real <= 1.0)
    throw ValidationError("polarizability requires eps_real > 1");
  Polarizability out;
  const std::complex<double> eps(p.eps_real, p.eps_imag);
  const double r3 = p.radius * p.radius * p.radius;
  const std::complex<double> alpha0 =
      4.0 * phys::pi * phys::vacuum_permittivity * r3 * (eps - 1.0) / (eps + 2.0);
  const double k0 = beam.wavenumber();
  const std::complex<double> radiative =
      std::complex<double>(0.0, 1.0) * (k0 * k0 * k0) * alpha0 /
      (6.0 * phys::pi * phys::vacuum_permittivity);
  out.alpha = alpha0 / (1.0 - radiative);
  out.cm_ratio = p.cm_ratio();
  out.alpha_r = 4.0 * phys::pi * phys::vacuum_permittivity * out.cm_ratio * r3;
  out.alpha_i = 8.0 * phys::pi * phys::vacuum_permittivity * out.cm_ratio * out.cm_ratio *
                (k0 * k0 * k0) * r3 * r3 / 3.0;
  return out;
}

OpticalCoefficients compute_coefficients(const ParticleSpec& p, const BeamSpec& beam) {
  OpticalCoefficients c;
  const double a = p.cm_ratio();
  const double na = beam.numerical_aperture;
  const double k0 = beam.wavenumber();
  const double r3 = p.radius * p.radius * p.radius;
  const double k03r3 = k0 * k0 * k0 * r3;  // the dimensionless size parameter cubed
  const double k04 = k0 * k0 * k0 * k0;
  const double na2 = na * na;
  const double na4 = na2 * na2;
  const double axial = 1.0 - 0.5 * na2;
  const double cl = phys::light_speed;

  c.stiffness_per_watt[0] = a * na4 * k04 * r3 / cl;
  c.stiffness_per_watt[1] = beam.asymmetry_xy * c.stiffness_per_watt[0];
  c.stiffness_per_watt[2] = a * na4 * na2 * k04 * r3 / (2.0 * cl);

  c.pressure_per_watt = 4.0 * a * a * axial * na2 * k03r3 * k03r3 / (3.0 * cl);
  c.pressure_noise_amp = 2.0 * a * axial * na * k03r3 / (std::sqrt(3.0) * cl);
  c.recoil_noise_amp[0] = 2.0 * a * na * k03r3 / (std::sqrt(15.0) * cl);
  c.recoil_noise_amp[1] = std::sqrt(2.0) * c.recoil_noise_amp[0];
  c.recoil_noise_amp[2] = c.recoil_noise_amp[1];

  c.axial_wavenumber = beam.axial_wavenumber();
  c.scattered_power = 4.0 * a * a * na2 * k03r3 * k03r3 * beam.mean_power / 3.0;
  c.absorbed_power = 6.0 * p.eps_imag * na2 * k03r3 * beam.mean_power /
                     ((p.eps_real + 2.0) * (p.eps_real + 2.0));
  return c;
}

std::array<double, 3> trap_frequencies(const OpticalCoefficients& coeffs,
                                       const ParticleSpec& p, const BeamSpec& beam) {
  const double mass = p.mass();
  std::array<double, 3> omega{};
  for (int i = 0; i < 3; ++i)
    omega[i] = std::sqrt(coeffs.stiffness_per_watt[i] * beam.mean_power / mass);
  return omega;
}

double scattered_power_quadrature(const ParticleSpec& p, const BeamSpec& beam, int panels) {
  // Far-field Poynting flux of the dipole pattern,
  //   |alpha|^2 NA^2 k0^6 P sin^2(theta') / (32 pi^3 eps0^2 r'^2),
  // integrated over the sphere with the exact polarizability.
  const Polarizability pol = compute_polarizability(p, beam);
  const double alpha2 = std::norm(pol.alpha);
  const double k0 = beam.wavenumber();
  const double k06 = std::pow(k0, 6);
  const double na2 = beam.numerical_aperture * beam.numerical_aperture;
  const double eps0 = phys::vacuum_permittivity;
  const double prefactor = alpha2 * na2 * k06 * beam.mean_power /
                           (32.0 * std::pow(phys::pi, 3) * eps0 * eps0);
  // integral over the sphere: 2*pi * int_0^pi sin^2 * sin dtheta (composite Simpson)
  const int n = panels % 2 == 0 ? panels : panels + 1;
  const double h = phys::pi / n;
  double sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double theta = i * h;
    const double f = std::pow(std::sin(theta), 3);
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    sum += w * f;
  }
  const double integral = phys::two_pi * sum * h / 3.0;
  return prefactor * integral;
}

}  // namespace levitrap
