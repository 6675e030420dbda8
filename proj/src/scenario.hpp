#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "constants.hpp"

namespace levitrap {

// Dielectric sphere in the trap. All SI.
struct ParticleSpec {
  double radius = 0.0;          // m
  double mass_density = 0.0;    // kg/m^3
  double eps_real = 0.0;        // relative permittivity, real part
  double eps_imag = 0.0;        // relative permittivity, imaginary part
  double emissivity = 1.0;
  double melting_point = 1873.0;  // K

  double mass() const {
    return mass_density * (4.0 / 3.0) * phys::pi * radius * radius * radius;
  }
  // a = (eps_R - 1) / (eps_R + 2), the Clausius-Mossotti ratio.
  double cm_ratio() const { return (eps_real - 1.0) / (eps_real + 2.0); }
};

// Focused Gaussian trapping/illumination beam.
struct BeamSpec {
  double wavelength = 0.0;          // m
  double mean_power = 0.0;          // W
  double numerical_aperture = 0.0;  // in (0,1)
  double asymmetry_xy = 1.0;        // multiplies the y-axis stiffness coefficient

  double wavenumber() const { return phys::two_pi / wavelength; }
  double angular_frequency() const { return wavenumber() * phys::light_speed; }
  double rayleigh_range() const {
    return 2.0 / (wavenumber() * numerical_aperture * numerical_aperture);
  }
  double waist_radius() const { return 2.0 / (wavenumber() * numerical_aperture); }
  // Effective axial wavenumber k0 - 1/z0 = k0 (1 - NA^2/2).
  double axial_wavenumber() const {
    return wavenumber() * (1.0 - 0.5 * numerical_aperture * numerical_aperture);
  }
};

// Residual gas around the particle. Defaults are air at room temperature;
// the accommodation coefficient default is a calibration (see README).
struct GasSpec {
  double ambient_pressure = 0.0;      // Pa
  double ambient_temperature = 300.0; // K
  double molecule_mass = 4.81e-26;    // kg
  double heat_capacity_ratio = 1.4;
  double accommodation = 0.777;       // in [0,1]
};

// Photodetection geometry (effective distance/areas after the collimation
// optics). Areas and offsets in SI.
struct DetectionSpec {
  double effective_distance = 0.0;        // m
  std::array<double, 3> detector_area{};  // m^2, photodetectors for x1, x2, x3
  double offset_x = 0.0;                  // m, x-detector pair offset
  double offset_y = 0.0;                  // m, y-detector pair offset
  bool filtered = true;   // photocurrents narrowband-filtered around the resonances
  // If set, detector_area / offsets are replaced at evaluation time by the
  // paraxial bounds for the configured effective_distance.
  bool pin_areas_to_max = false;
};

enum class FeedbackScheme { none, parametric, hybrid };

// Per-axis gain prescription. Exactly one of the optionals is set.
struct GainRule {
  std::optional<double> explicit_value;              // rad/s
  std::optional<double> fraction_of_critical_cubed;  // gain^3 = f * critical^3
  std::optional<double> fraction_of_optimum;         // gain = f * optimum (Coulomb axis)

  static GainRule explicit_gain(double v) {
    GainRule r;
    r.explicit_value = v;
    return r;
  }
  static GainRule critical_fraction_cubed(double f) {
    GainRule r;
    r.fraction_of_critical_cubed = f;
    return r;
  }
  static GainRule optimum_fraction(double f) {
    GainRule r;
    r.fraction_of_optimum = f;
    return r;
  }
  bool empty() const {
    return !explicit_value && !fraction_of_critical_cubed && !fraction_of_optimum;
  }
};

struct FeedbackPlan {
  FeedbackScheme scheme = FeedbackScheme::none;
  int coulomb_axis = 3;  // 1..3, hybrid only
  std::array<GainRule, 3> gains{GainRule::explicit_gain(0.0),
                                GainRule::explicit_gain(0.0),
                                GainRule::explicit_gain(0.0)};
};

struct SolverSettings {
  double tolerance = 1e-10;   // fixed-point relative tolerance
  int max_iterations = 10000;
  double damping = 0.5;       // under-relaxation of the fixed-point update
};

struct Scenario {
  ParticleSpec particle;
  BeamSpec beam;
  GasSpec gas;
  std::optional<DetectionSpec> detection;
  std::optional<FeedbackPlan> feedback;
  SolverSettings solver;
};

struct ValidationCheck {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  std::vector<std::string> warnings;

  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
  std::string first_failure() const {
    for (const auto& c : checks)
      if (!c.passed) return c.name + ": " + c.detail;
    return {};
  }
};

// Checks every static invariant of the scenario records; report-only.
ValidationReport validate_scenario(const Scenario& s);

// Parses the canonical JSON scenario document. Unknown keys are an error;
// "<field>_unit" companions convert via units::to_si.
Scenario scenario_from_json(const std::string& text);
Scenario scenario_from_file(const std::string& path);

// Resolves pin_areas_to_max into concrete areas/offsets.
DetectionSpec resolved_detection(const BeamSpec& beam, const DetectionSpec& det);

}  // namespace levitrap
