#include "fixtures.hpp"

#include "errors.hpp"

namespace levitrap {

namespace {

Scenario base_case(double radius, double ambient_pressure) {
  Scenario s;
  s.particle.radius = radius;
  s.particle.mass_density = 2200.0;  // fused silica
  s.particle.eps_real = 2.1;
  s.particle.eps_imag = 1e-5;
  s.particle.emissivity = 1.0;
  s.particle.melting_point = 1873.0;

  s.beam.wavelength = 1.064e-6;
  s.beam.mean_power = 0.1;
  s.beam.numerical_aperture = 0.8;
  s.beam.asymmetry_xy = 1.0;

  s.gas.ambient_pressure = ambient_pressure;
  s.gas.ambient_temperature = 300.0;
  s.gas.molecule_mass = 4.81e-26;
  s.gas.heat_capacity_ratio = 1.4;
  s.gas.accommodation = 0.777;

  DetectionSpec det;
  det.effective_distance = 10.0 * s.beam.wavelength;
  det.pin_areas_to_max = true;
  det.filtered = true;
  s.detection = det;
  return s;
}

FeedbackPlan parametric_plan() {
  FeedbackPlan plan;
  plan.scheme = FeedbackScheme::parametric;
  for (auto& g : plan.gains) g = GainRule::critical_fraction_cubed(0.1);
  return plan;
}

FeedbackPlan hybrid_plan(int k) {
  FeedbackPlan plan;
  plan.scheme = FeedbackScheme::hybrid;
  plan.coulomb_axis = k;
  for (int i = 0; i < 3; ++i)
    plan.gains[i] = (i + 1 == k) ? GainRule::optimum_fraction(1.0)
                                 : GainRule::critical_fraction_cubed(0.1);
  return plan;
}

}  // namespace

const std::vector<std::string>& builtin_scenario_names() {
  static const std::vector<std::string> names = {
      "70nm",           "180nm",          "70nm-parametric", "180nm-parametric",
      "70nm-hybrid-k1", "70nm-hybrid-k3", "180nm-hybrid-k1", "180nm-hybrid-k3"};
  return names;
}

Scenario builtin_scenario(const std::string& name) {
  const bool small = name.rfind("70nm", 0) == 0;
  const bool large = name.rfind("180nm", 0) == 0;
  if (!small && !large)
    throw ParseError("unknown builtin scenario '" + name + "'");
  Scenario s = small ? base_case(70e-9, 7e-7) : base_case(180e-9, 2e-6);
  const std::string suffix = name.substr(small ? 4 : 5);
  if (suffix.empty()) return s;
  if (suffix == "-parametric") {
    s.feedback = parametric_plan();
  } else if (suffix == "-hybrid-k1") {
    s.feedback = hybrid_plan(1);
  } else if (suffix == "-hybrid-k3") {
    s.feedback = hybrid_plan(3);
  } else {
    throw ParseError("unknown builtin scenario '" + name + "'");
  }
  return s;
}

}  // namespace levitrap
