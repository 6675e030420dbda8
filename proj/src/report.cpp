#include "report.hpp"

#include <cstdlib>
#include <ctime>

#include "constants.hpp"
#include "errors.hpp"
#include "json_io.hpp"

namespace levitrap {

const char* tool_version() { return "1.0.0"; }

PipelineResult run_pipeline(const Scenario& s, bool strict) {
  PipelineResult r;
  r.validation = validate_scenario(s);
  if (!r.validation.passed())
    throw ValidationError("scenario validation failed: " + r.validation.first_failure());
  r.warnings = r.validation.warnings;

  r.polarizability = compute_polarizability(s.particle, s.beam);
  r.coeffs = compute_coefficients(s.particle, s.beam);
  r.omega = trap_frequencies(r.coeffs, s.particle, s.beam);

  r.thermal = thermal_state(s.particle, s.gas, r.coeffs.absorbed_power);
  if (r.thermal.melting)
    r.warnings.push_back("thermal: surface temperature reaches the melting point");
  else if (r.thermal.surface_temperature > 0.9 * s.particle.melting_point)
    r.warnings.push_back("thermal: surface temperature within 10% of the melting point");

  r.rates = shot_noise_rates(r.coeffs, s.particle, s.beam, r.thermal);
  r.pressure_critical =
      critical_pressure(s.particle, s.gas, r.coeffs.absorbed_power, r.rates.gamma_cr);
  r.occupation_no_feedback = steady_state_occupation(r.rates);

  if (s.detection) r.noise = noise_floors(s.particle, s.beam, *s.detection);

  const bool active_plan = s.feedback && s.feedback->scheme != FeedbackScheme::none;
  if (active_plan) {
    if (!r.noise)
      throw ValidationError("feedback analysis requires a detection section");
    r.feedback = occupations_with_feedback(r.rates, *r.noise, r.coeffs, s.particle.mass(),
                                           *s.feedback, s.solver);
    // linewidths with the resolved gains attached
    r.rates = shot_noise_rates(r.coeffs, s.particle, s.beam, r.thermal,
                               r.feedback->rates_at_convergence.gains);
    r.conditions = r.feedback->conditions;
  } else if (r.noise) {
    r.conditions = condition_ledger(r.rates, *r.noise, s.particle.mass(),
                                    {0.0, 0.0, 0.0}, FeedbackScheme::none, 0);
  }

  if (r.conditions) {
    for (const auto& e : r.conditions->entries) {
      if (!e.exempt && !e.passed)
        r.warnings.push_back("condition failed: " + e.name + " (margin " +
                             format_double(e.margin) + " < threshold " +
                             format_double(e.threshold) + ")");
    }
    if (strict && active_plan && !r.conditions->operable())
      throw ValidationError("strict mode: operating conditions not met; " +
                            std::to_string(r.warnings.size()) + " warning(s)");
  }
  return r;
}

namespace {

using nlohmann::json;

json scenario_echo(const Scenario& s) {
  json j;
  j["particle"] = {{"radius", s.particle.radius},
                   {"mass_density", s.particle.mass_density},
                   {"eps_real", s.particle.eps_real},
                   {"eps_imag", s.particle.eps_imag},
                   {"emissivity", s.particle.emissivity},
                   {"melting_point", s.particle.melting_point},
                   {"mass", s.particle.mass()}};
  j["beam"] = {{"wavelength", s.beam.wavelength},
               {"mean_power", s.beam.mean_power},
               {"numerical_aperture", s.beam.numerical_aperture},
               {"asymmetry_xy", s.beam.asymmetry_xy},
               {"wavenumber", s.beam.wavenumber()},
               {"angular_frequency", s.beam.angular_frequency()},
               {"rayleigh_range", s.beam.rayleigh_range()},
               {"waist_radius", s.beam.waist_radius()},
               {"axial_wavenumber", s.beam.axial_wavenumber()}};
  j["gas"] = {{"ambient_pressure", s.gas.ambient_pressure},
              {"ambient_temperature", s.gas.ambient_temperature},
              {"molecule_mass", s.gas.molecule_mass},
              {"heat_capacity_ratio", s.gas.heat_capacity_ratio},
              {"accommodation", s.gas.accommodation}};
  if (s.detection) {
    const DetectionSpec d = resolved_detection(s.beam, *s.detection);
    j["detection"] = {{"effective_distance", d.effective_distance},
                      {"a_d1", d.detector_area[0]},
                      {"a_d2", d.detector_area[1]},
                      {"a_d3", d.detector_area[2]},
                      {"X", d.offset_x},
                      {"Y", d.offset_y},
                      {"filtered", d.filtered}};
  }
  if (s.feedback) {
    json f;
    switch (s.feedback->scheme) {
      case FeedbackScheme::none:
        f["scheme"] = "none";
        break;
      case FeedbackScheme::parametric:
        f["scheme"] = "parametric";
        break;
      case FeedbackScheme::hybrid:
        f["scheme"] = "hybrid";
        f["coulomb_axis"] = s.feedback->coulomb_axis;
        break;
    }
    j["feedback"] = f;
  }
  return j;
}

json condition_json(const ConditionLedger& ledger) {
  json arr = json::array();
  for (const auto& e : ledger.entries) {
    arr.push_back({{"name", e.name},
                   {"margin", e.margin},
                   {"threshold", e.threshold},
                   {"passed", e.passed},
                   {"exempt", e.exempt}});
  }
  return {{"entries", arr}, {"operable", ledger.operable()}};
}

std::string timestamp() {
  if (const char* env = std::getenv("LEVITRAP_TIMESTAMP")) return env;
  std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&now));
  return buf;
}

}  // namespace

json report_document(const Scenario& s, const PipelineResult& r) {
  json doc;
  doc["tool"] = {{"name", "levitrap"}, {"version", tool_version()}};
  doc["generated_at"] = timestamp();
  doc["scenario"] = scenario_echo(s);
  doc["validation"] = {{"passed", r.validation.passed()}};

  doc["optics"] = {{"cm_ratio", r.polarizability.cm_ratio},
                   {"alpha_r", r.polarizability.alpha_r},
                   {"alpha_i", r.polarizability.alpha_i},
                   {"alpha_exact_re", r.polarizability.alpha.real()},
                   {"alpha_exact_im", r.polarizability.alpha.imag()},
                   {"A_1", r.coeffs.stiffness_per_watt[0]},
                   {"A_2", r.coeffs.stiffness_per_watt[1]},
                   {"A_3", r.coeffs.stiffness_per_watt[2]},
                   {"B", r.coeffs.pressure_per_watt},
                   {"B_prime", r.coeffs.pressure_noise_amp},
                   {"C_1", r.coeffs.recoil_noise_amp[0]},
                   {"C_2", r.coeffs.recoil_noise_amp[1]},
                   {"C_3", r.coeffs.recoil_noise_amp[2]},
                   {"k_z", r.coeffs.axial_wavenumber},
                   {"scattered_power", r.coeffs.scattered_power},
                   {"absorbed_power", r.coeffs.absorbed_power},
                   {"omega_1", r.omega[0]},
                   {"omega_2", r.omega[1]},
                   {"omega_3", r.omega[2]}};

  doc["thermal"] = {{"surface_temperature", r.thermal.surface_temperature},
                    {"emerging_temperature", r.thermal.emerging_temperature},
                    {"effective_temperature", r.thermal.effective_temperature},
                    {"gamma_impinging", r.thermal.gamma_impinging},
                    {"gamma_emerging", r.thermal.gamma_emerging},
                    {"gamma", r.thermal.gamma},
                    {"v_impinging", r.thermal.v_impinging},
                    {"v_emerging", r.thermal.v_emerging},
                    {"conduction_power", r.thermal.conduction_power},
                    {"radiation_power", r.thermal.radiation_power}};

  doc["rates"] = {{"gamma_g_1", r.rates.gamma_g[0]},
                  {"gamma_g_2", r.rates.gamma_g[1]},
                  {"gamma_g_3", r.rates.gamma_g[2]},
                  {"gamma_r_1", r.rates.gamma_r[0]},
                  {"gamma_r_2", r.rates.gamma_r[1]},
                  {"gamma_r_3", r.rates.gamma_r[2]},
                  {"gamma_cr", r.rates.gamma_cr},
                  {"gamma", r.rates.gamma},
                  {"m_thermal_1", r.rates.m_thermal[0]},
                  {"m_thermal_2", r.rates.m_thermal[1]},
                  {"m_thermal_3", r.rates.m_thermal[2]},
                  {"linewidth_1", r.rates.linewidth[0]},
                  {"linewidth_2", r.rates.linewidth[1]},
                  {"linewidth_3", r.rates.linewidth[2]},
                  {"pressure_critical", r.pressure_critical},
                  {"occupation_1", r.occupation_no_feedback[0]},
                  {"occupation_2", r.occupation_no_feedback[1]},
                  {"occupation_3", r.occupation_no_feedback[2]}};

  if (r.noise) {
    doc["noise"] = {{"S_n1", r.noise->s_n[0]},
                    {"S_n2", r.noise->s_n[1]},
                    {"S_n3", r.noise->s_n[2]},
                    {"effective_distance", r.noise->effective_distance},
                    {"filtered", r.noise->filtered}};
  }
  if (r.feedback) {
    const FeedbackReport& f = *r.feedback;
    json fb;
    fb["scheme"] = f.scheme == FeedbackScheme::hybrid ? "hybrid" : "parametric";
    if (f.coulomb_axis > 0) fb["coulomb_axis"] = f.coulomb_axis;
    fb["filtered"] = f.filtered;
    fb["iterations"] = f.iterations;
    fb["residual"] = f.residual;
    for (int i = 0; i < 3; ++i) {
      const std::string n = std::to_string(i + 1);
      fb["occupation_" + n] = f.occupation[i];
      fb["gain_" + n] = f.rates_at_convergence.gains[i];
      fb["gamma_g_fb_" + n] = f.rates_at_convergence.gamma_g_fb[i];
      fb["gamma_r_fb_" + n] = f.rates_at_convergence.gamma_r_fb[i];
      fb["variance_" + n] = f.rates_at_convergence.variance[i];
      fb["gain_critical_" + n] = std::isfinite(f.gain_critical[i])
                                     ? json(f.gain_critical[i])
                                     : json("unbounded");
    }
    if (f.coulomb_axis > 0) {
      fb["gain_optimum"] = f.gain_optimum;
      fb["occupation_minimum"] = f.occupation_minimum;
    }
    doc["feedback"] = fb;
  }
  if (r.conditions) doc["conditions"] = condition_json(*r.conditions);

  json warnings = json::array();
  for (const auto& w : r.warnings) warnings.push_back(w);
  doc["warnings"] = warnings;
  return doc;
}

std::string render_report(const json& doc, const std::string& format) {
  if (format == "json") return dump_deterministic(doc);
  if (format == "csv") return json_to_csv(doc);
  throw ParseError("unknown format '" + format + "' (expected json or csv)");
}

}  // namespace levitrap
