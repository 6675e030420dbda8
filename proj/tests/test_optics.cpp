#include <doctest.h>

#include <cmath>
#include <complex>

#include "constants.hpp"
#include "errors.hpp"
#include "fixtures.hpp"
#include "optics.hpp"

using namespace levitrap;

namespace {

Scenario baseline() { return builtin_scenario("70nm"); }

// Gradient force from finite differences of the field intensity; the
// independent route from the beam profile to the stiffness coefficients.
double stiffness_from_field(const BeamSpec& beam, double alpha_r, int axis, double x,
                            double y, double z) {
  const double e0_sq =
      4.0 * phys::vacuum_impedance * beam.mean_power /
      (phys::pi * beam.waist_radius() * beam.waist_radius());
  auto intensity = [&](double px, double py, double pz) {
    return std::norm(incident_field(beam, px, py, pz));
  };
  const double h = 1e-10;
  double plus, minus, coord;
  switch (axis) {
    case 1:
      plus = intensity(x + h, y, z), minus = intensity(x - h, y, z), coord = x;
      break;
    case 2:
      plus = intensity(x, y + h, z), minus = intensity(x, y - h, z), coord = y;
      break;
    default:
      plus = intensity(x, y, z + h), minus = intensity(x, y, z - h), coord = z;
      break;
  }
  const double grad = (plus - minus) / (2.0 * h);
  const double force = 0.25 * alpha_r * grad * e0_sq;
  return -force / (beam.mean_power * coord);  // A_i = -g_i / (P x_i)
}

}  // namespace

TEST_CASE("incident field normalization, Rayleigh range and waist") {
  const BeamSpec beam = baseline().beam;
  const std::complex<double> at_focus = incident_field(beam, 0.0, 0.0, 0.0);
  CHECK(at_focus.real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(at_focus.imag() == doctest::Approx(0.0));
  CHECK(std::abs(incident_field(beam, 0.0, 0.0, beam.rayleigh_range())) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(std::abs(incident_field(beam, beam.waist_radius(), 0.0, 0.0)) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("incident field satisfies the paraxial wave equation") {
  // The slowly-varying envelope u = E * exp(-i k0 z) must obey
  // d2u/dx2 + d2u/dy2 + 2 i k0 du/dz = 0; this exercises the curvature and
  // Gouy phases, not just the magnitude.
  const BeamSpec beam = baseline().beam;
  const double k0 = beam.wavenumber();
  auto envelope = [&](double x, double y, double z) {
    return incident_field(beam, x, y, z) * std::polar(1.0, -k0 * z);
  };
  const double x = 0.3 * beam.waist_radius();
  const double y = -0.2 * beam.waist_radius();
  const double z = 0.4 * beam.rayleigh_range();
  const double h = 2e-9;
  const std::complex<double> center = envelope(x, y, z);
  const std::complex<double> lap_xy =
      (envelope(x + h, y, z) + envelope(x - h, y, z) + envelope(x, y + h, z) +
       envelope(x, y - h, z) - 4.0 * center) /
      (h * h);
  const double hz = 2e-9;
  const std::complex<double> dz = (envelope(x, y, z + hz) - envelope(x, y, z - hz)) /
                                  (2.0 * hz);
  const std::complex<double> residual = lap_xy + 2.0 * std::complex<double>(0.0, k0) * dz;
  CHECK(std::abs(residual) / std::abs(lap_xy) < 1e-3);
}

TEST_CASE("polarizability of the baseline particle") {
  const Scenario s = baseline();
  const Polarizability pol = compute_polarizability(s.particle, s.beam);
  CHECK(pol.cm_ratio == doctest::Approx(1.1 / 4.1).epsilon(1e-14));
  // low-loss forms track the exact polarizability at these parameters
  CHECK(pol.alpha.real() == doctest::Approx(pol.alpha_r).epsilon(0.01));
  CHECK(pol.alpha.imag() == doctest::Approx(pol.alpha_i).epsilon(0.01));
  CHECK_THROWS_AS(
      compute_polarizability(ParticleSpec{70e-9, 2200.0, 0.9, 0.0, 1.0, 1873.0}, s.beam),
      ValidationError);
}

TEST_CASE("lossless particle still has the scattering-loss imaginary part") {
  Scenario s = baseline();
  s.particle.eps_imag = 0.0;
  const Polarizability pol = compute_polarizability(s.particle, s.beam);
  CHECK(pol.alpha.imag() == doctest::Approx(pol.alpha_i).epsilon(1e-3));
}

TEST_CASE("alpha_r scales as the particle volume") {
  Scenario s = baseline();
  const Polarizability big = compute_polarizability(s.particle, s.beam);
  s.particle.radius /= 16.0;
  const Polarizability small = compute_polarizability(s.particle, s.beam);
  const double r3 = std::pow(16.0, 3);
  CHECK(big.alpha_r / small.alpha_r == doctest::Approx(r3).epsilon(1e-12));
}

TEST_CASE("coefficient identities") {
  const Scenario s = baseline();
  const OpticalCoefficients c = compute_coefficients(s.particle, s.beam);
  const double na = s.beam.numerical_aperture;
  CHECK(c.stiffness_per_watt[2] / c.stiffness_per_watt[0] ==
        doctest::Approx(na * na / 2.0).epsilon(1e-14));
  CHECK(c.stiffness_per_watt[1] == c.stiffness_per_watt[0]);  // asymmetry_xy = 1
  CHECK(c.recoil_noise_amp[1] ==
        doctest::Approx(std::sqrt(2.0) * c.recoil_noise_amp[0]).epsilon(1e-15));
  CHECK(c.recoil_noise_amp[2] == c.recoil_noise_amp[1]);
  // mean-pressure consistency: B*P equals k_z*P_s/omega0 exactly, and stays
  // within the absorbed-power correction when that term is included
  const double w0 = s.beam.angular_frequency();
  CHECK(c.pressure_per_watt * s.beam.mean_power ==
        doctest::Approx(c.axial_wavenumber * c.scattered_power / w0).epsilon(1e-12));
  const double with_absorption =
      c.axial_wavenumber * (c.scattered_power + c.absorbed_power) / w0;
  CHECK(std::abs(c.pressure_per_watt * s.beam.mean_power - with_absorption) /
            with_absorption <
        1e-3);
}

TEST_CASE("all coefficients vanish with the numerical aperture") {
  Scenario s = baseline();
  s.beam.numerical_aperture = 0.0;
  const OpticalCoefficients c = compute_coefficients(s.particle, s.beam);
  for (int i = 0; i < 3; ++i) {
    CHECK(c.stiffness_per_watt[i] == 0.0);
    CHECK(c.recoil_noise_amp[i] == 0.0);
  }
  CHECK(c.pressure_per_watt == 0.0);
  CHECK(c.pressure_noise_amp == 0.0);
  CHECK(c.scattered_power == 0.0);
  CHECK(c.absorbed_power == 0.0);
}

TEST_CASE("radius scaling of every coefficient") {
  Scenario s = baseline();
  const OpticalCoefficients a = compute_coefficients(s.particle, s.beam);
  s.particle.radius *= 2.0;
  const OpticalCoefficients b = compute_coefficients(s.particle, s.beam);
  CHECK(b.stiffness_per_watt[0] / a.stiffness_per_watt[0] ==
        doctest::Approx(8.0).epsilon(1e-12));
  CHECK(b.pressure_per_watt / a.pressure_per_watt == doctest::Approx(64.0).epsilon(1e-12));
  CHECK(b.pressure_noise_amp / a.pressure_noise_amp == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(b.recoil_noise_amp[0] / a.recoil_noise_amp[0] ==
        doctest::Approx(8.0).epsilon(1e-12));
  CHECK(b.scattered_power / a.scattered_power == doctest::Approx(64.0).epsilon(1e-12));
  CHECK(b.absorbed_power / a.absorbed_power == doctest::Approx(8.0).epsilon(1e-12));
}

TEST_CASE("trap frequencies: baseline values, scaling and degenerate limits") {
  const Scenario s = baseline();
  const OpticalCoefficients c = compute_coefficients(s.particle, s.beam);
  const auto omega = trap_frequencies(c, s.particle, s.beam);
  CHECK(omega[0] / phys::two_pi == doctest::Approx(367e3).epsilon(0.10));
  CHECK(omega[2] / phys::two_pi == doctest::Approx(208e3).epsilon(0.10));
  CHECK(omega[2] / omega[0] ==
        doctest::Approx(s.beam.numerical_aperture / std::sqrt(2.0)).epsilon(0.005));

  Scenario dark = s;
  dark.beam.mean_power = 0.0;
  const auto off = trap_frequencies(compute_coefficients(dark.particle, dark.beam),
                                    dark.particle, dark.beam);
  CHECK(off[0] == 0.0);
  CHECK(off[2] == 0.0);

  Scenario bright = s;
  bright.beam.mean_power *= 4.0;
  const auto quad = trap_frequencies(compute_coefficients(bright.particle, bright.beam),
                                     bright.particle, bright.beam);
  for (int i = 0; i < 3; ++i)
    CHECK(quad[i] == doctest::Approx(2.0 * omega[i]).epsilon(1e-14));
}

TEST_CASE("trap frequencies do not move under radius changes at fixed density") {
  Scenario s = baseline();
  const auto omega_small = trap_frequencies(compute_coefficients(s.particle, s.beam),
                                            s.particle, s.beam);
  s.particle.radius = 137e-9;
  const auto omega_big = trap_frequencies(compute_coefficients(s.particle, s.beam),
                                          s.particle, s.beam);
  for (int i = 0; i < 3; ++i)
    CHECK(omega_big[i] == doctest::Approx(omega_small[i]).epsilon(1e-12));
}

TEST_CASE("finite-difference gradient of the beam intensity reproduces the stiffness") {
  const Scenario s = baseline();
  const Polarizability pol = compute_polarizability(s.particle, s.beam);
  const OpticalCoefficients c = compute_coefficients(s.particle, s.beam);
  const double x = 3e-9, y = 2e-9, z = 4e-9;  // |r| < lambda/200
  for (int axis = 1; axis <= 3; ++axis) {
    const double a_fd = stiffness_from_field(s.beam, pol.alpha_r, axis, x, y, z);
    CHECK(a_fd == doctest::Approx(c.stiffness_per_watt[axis - 1]).epsilon(0.01));
  }
}

TEST_CASE("scattered power matches the far-field quadrature to 0.5%") {
  const Scenario s = baseline();
  const OpticalCoefficients c = compute_coefficients(s.particle, s.beam);
  const double quad = scattered_power_quadrature(s.particle, s.beam);
  CHECK(quad == doctest::Approx(c.scattered_power).epsilon(0.005));
}
