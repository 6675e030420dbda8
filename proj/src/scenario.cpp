#include "scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "detection.hpp"
#include "errors.hpp"
#include "units.hpp"

namespace levitrap {

namespace {

using nlohmann::json;

// Strict section reader: every key must be consumed, "<name>_unit"
// companions convert the paired value to SI.
class SectionReader {
 public:
  SectionReader(const json& obj, std::string section) : obj_(obj), section_(std::move(section)) {
    if (!obj.is_object())
      throw ParseError("section '" + section_ + "' must be an object");
  }

  bool has(const std::string& name) const { return obj_.contains(name); }

  double quantity(const std::string& name) {
    require(name);
    return quantity_or(name, 0.0);
  }

  double quantity_or(const std::string& name, double fallback) {
    if (!obj_.contains(name)) return fallback;
    consumed_.insert(name);
    double v = number(obj_.at(name), name);
    const std::string unit_key = name + "_unit";
    if (obj_.contains(unit_key)) {
      consumed_.insert(unit_key);
      if (!obj_.at(unit_key).is_string())
        throw ParseError(path(unit_key) + " must be a string");
      v = units::to_si(v, obj_.at(unit_key).get<std::string>());
    }
    return v;
  }

  double plain_number_or(const std::string& name, double fallback) {
    if (!obj_.contains(name)) return fallback;
    consumed_.insert(name);
    return number(obj_.at(name), name);
  }

  int integer_or(const std::string& name, int fallback) {
    if (!obj_.contains(name)) return fallback;
    consumed_.insert(name);
    if (!obj_.at(name).is_number_integer())
      throw ParseError(path(name) + " must be an integer");
    return obj_.at(name).get<int>();
  }

  bool boolean_or(const std::string& name, bool fallback) {
    if (!obj_.contains(name)) return fallback;
    consumed_.insert(name);
    if (!obj_.at(name).is_boolean())
      throw ParseError(path(name) + " must be a boolean");
    return obj_.at(name).get<bool>();
  }

  std::string string_or(const std::string& name, const std::string& fallback) {
    if (!obj_.contains(name)) return fallback;
    consumed_.insert(name);
    if (!obj_.at(name).is_string())
      throw ParseError(path(name) + " must be a string");
    return obj_.at(name).get<std::string>();
  }

  // Array of 3 numbers with optional shared "<name>_unit".
  std::array<double, 3> triple(const std::string& name) {
    require(name);
    consumed_.insert(name);
    const json& arr = obj_.at(name);
    if (!arr.is_array() || arr.size() != 3)
      throw ParseError(path(name) + " must be an array of 3 numbers");
    std::array<double, 3> out{};
    for (int i = 0; i < 3; ++i) out[i] = number(arr.at(i), name);
    const std::string unit_key = name + "_unit";
    if (obj_.contains(unit_key)) {
      consumed_.insert(unit_key);
      const std::string u = obj_.at(unit_key).get<std::string>();
      for (double& v : out) v = units::to_si(v, u);
    }
    return out;
  }

  void mark_consumed(const std::string& name) { consumed_.insert(name); }

  void finish() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      if (!consumed_.count(it.key()))
        throw ParseError("unknown key '" + section_ + "." + it.key() + "'");
    }
  }

  const json& raw() const { return obj_; }

 private:
  void require(const std::string& name) const {
    if (!obj_.contains(name))
      throw ParseError("missing required key '" + section_ + "." + name + "'");
  }
  std::string path(const std::string& name) const { return "'" + section_ + "." + name + "'"; }
  static double number(const json& v, const std::string& name) {
    if (!v.is_number()) throw ParseError("'" + name + "' must be a number");
    return v.get<double>();
  }

  const json& obj_;
  std::string section_;
  std::set<std::string> consumed_;
};

GainRule parse_gain_rule(const json& v, const std::string& where) {
  if (v.is_number()) return GainRule::explicit_gain(v.get<double>());
  if (!v.is_object()) throw ParseError(where + " must be a number or an object");
  GainRule r;
  int set_count = 0;
  for (auto it = v.begin(); it != v.end(); ++it) {
    const std::string& k = it.key();
    if (k == "value") {
      double g = it.value().get<double>();
      if (v.contains("unit")) g = units::to_si(g, v.at("unit").get<std::string>());
      r.explicit_value = g;
      ++set_count;
    } else if (k == "unit") {
      // consumed with "value"
    } else if (k == "fraction_of_critical_cubed") {
      r.fraction_of_critical_cubed = it.value().get<double>();
      ++set_count;
    } else if (k == "fraction_of_optimum") {
      r.fraction_of_optimum = it.value().get<double>();
      ++set_count;
    } else {
      throw ParseError("unknown key '" + where + "." + k + "'");
    }
  }
  if (set_count != 1)
    throw ParseError(where + " must set exactly one of value / fraction_of_critical_cubed / fraction_of_optimum");
  return r;
}

FeedbackPlan parse_feedback(const json& obj) {
  SectionReader r(obj, "feedback");
  FeedbackPlan plan;
  const std::string scheme = r.string_or("scheme", "none");
  if (scheme == "none")
    plan.scheme = FeedbackScheme::none;
  else if (scheme == "parametric")
    plan.scheme = FeedbackScheme::parametric;
  else if (scheme == "hybrid")
    plan.scheme = FeedbackScheme::hybrid;
  else
    throw ParseError("unknown feedback scheme '" + scheme + "'");
  plan.coulomb_axis = r.integer_or("coulomb_axis", 3);

  if (r.has("gains")) {
    r.mark_consumed("gains");
    const json& arr = obj.at("gains");
    if (!arr.is_array() || arr.size() != 3)
      throw ParseError("'feedback.gains' must be an array of 3 entries");
    std::string shared_unit;
    if (obj.contains("gains_unit")) {
      r.mark_consumed("gains_unit");
      shared_unit = obj.at("gains_unit").get<std::string>();
    }
    for (int i = 0; i < 3; ++i) {
      const json& g = arr.at(i);
      if (g.is_number() && !shared_unit.empty())
        plan.gains[i] = GainRule::explicit_gain(units::to_si(g.get<double>(), shared_unit));
      else
        plan.gains[i] = parse_gain_rule(g, "feedback.gains[" + std::to_string(i) + "]");
    }
  }
  r.finish();
  return plan;
}

}  // namespace

Scenario scenario_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("config root must be an object");

  static const std::set<std::string> known_sections = {"particle", "beam", "gas",
                                                       "detection", "feedback", "solver"};
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (!known_sections.count(it.key()))
      throw ParseError("unknown key '" + it.key() + "'");
  }
  for (const char* required : {"particle", "beam", "gas"}) {
    if (!doc.contains(required))
      throw ParseError("missing required section '" + std::string(required) + "'");
  }

  Scenario s;
  {
    SectionReader r(doc.at("particle"), "particle");
    s.particle.radius = r.quantity("radius");
    s.particle.mass_density = r.quantity("mass_density");
    s.particle.eps_real = r.plain_number_or("eps_real", 0.0);
    if (!r.has("eps_real")) throw ParseError("missing required key 'particle.eps_real'");
    s.particle.eps_imag = r.plain_number_or("eps_imag", 0.0);
    s.particle.emissivity = r.plain_number_or("emissivity", 1.0);
    s.particle.melting_point = r.quantity_or("melting_point", 1873.0);
    r.finish();
  }
  {
    SectionReader r(doc.at("beam"), "beam");
    s.beam.wavelength = r.quantity("wavelength");
    s.beam.mean_power = r.quantity("mean_power");
    s.beam.numerical_aperture = r.plain_number_or("numerical_aperture", 0.0);
    if (!r.has("numerical_aperture"))
      throw ParseError("missing required key 'beam.numerical_aperture'");
    s.beam.asymmetry_xy = r.plain_number_or("asymmetry_xy", 1.0);
    r.finish();
  }
  {
    SectionReader r(doc.at("gas"), "gas");
    s.gas.ambient_pressure = r.quantity("ambient_pressure");
    s.gas.ambient_temperature = r.quantity_or("ambient_temperature", 300.0);
    s.gas.molecule_mass = r.quantity_or("molecule_mass", 4.81e-26);
    s.gas.heat_capacity_ratio = r.plain_number_or("heat_capacity_ratio", 1.4);
    s.gas.accommodation = r.plain_number_or("accommodation", 0.777);
    r.finish();
  }
  if (doc.contains("detection")) {
    SectionReader r(doc.at("detection"), "detection");
    DetectionSpec d;
    d.effective_distance = r.quantity("effective_distance");
    d.pin_areas_to_max = r.boolean_or("pin_areas_to_max", false);
    if (d.pin_areas_to_max) {
      d.detector_area = {0.0, 0.0, 0.0};
    } else {
      d.detector_area[0] = r.quantity("a_d1");
      d.detector_area[1] = r.quantity("a_d2");
      d.detector_area[2] = r.quantity("a_d3");
      d.offset_x = r.quantity("X");
      d.offset_y = r.quantity("Y");
    }
    d.filtered = r.boolean_or("filtered", true);
    r.finish();
    s.detection = d;
  }
  if (doc.contains("feedback")) s.feedback = parse_feedback(doc.at("feedback"));
  if (doc.contains("solver")) {
    SectionReader r(doc.at("solver"), "solver");
    s.solver.tolerance = r.plain_number_or("tolerance", 1e-10);
    s.solver.max_iterations = r.integer_or("max_iterations", 10000);
    s.solver.damping = r.plain_number_or("damping", 0.5);
    r.finish();
  }
  return s;
}

Scenario scenario_from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return scenario_from_json(ss.str());
}

ValidationReport validate_scenario(const Scenario& s) {
  ValidationReport rep;
  auto check = [&rep](const std::string& name, bool ok, const std::string& detail) {
    rep.checks.push_back({name, ok, detail});
  };
  const ParticleSpec& p = s.particle;
  check("particle.radius_positive", p.radius > 0.0, "requires R > 0");
  check("particle.density_positive", p.mass_density > 0.0, "requires rho_p > 0");
  check("particle.eps_real_above_one", p.eps_real > 1.0, "requires eps_R > 1");
  check("particle.eps_imag_nonnegative", p.eps_imag >= 0.0, "requires eps_I >= 0");
  check("particle.emissivity_range", p.emissivity > 0.0 && p.emissivity <= 1.0,
        "requires 0 < emissivity <= 1");
  check("particle.mass_positive", !(p.radius > 0.0 && p.mass_density > 0.0) || p.mass() > 0.0,
        "derived mass must be positive");
  if (p.eps_real > 1.0 && p.eps_imag / p.eps_real > 1e-2)
    rep.warnings.push_back(
        "particle: eps_I/eps_R exceeds 1e-2; the low-loss polarizability forms degrade");

  const BeamSpec& b = s.beam;
  check("beam.wavelength_positive", b.wavelength > 0.0, "requires wavelength > 0");
  check("beam.power_nonnegative", b.mean_power >= 0.0, "requires mean_power >= 0");
  check("beam.numerical_aperture_range",
        b.numerical_aperture > 0.0 && b.numerical_aperture < 1.0, "requires 0 < NA < 1");
  if (b.wavelength > 0.0 && b.numerical_aperture > 0.0 && b.numerical_aperture < 1.0) {
    check("beam.axial_wavenumber_below_k0", b.axial_wavenumber() < b.wavenumber(),
          "requires k_z < k0");
  }
  check("beam.asymmetry_positive", b.asymmetry_xy > 0.0, "requires asymmetry_xy > 0");
  if (b.asymmetry_xy == 1.0)
    rep.warnings.push_back(
        "beam: asymmetry_xy = 1 makes the two transverse stiffnesses degenerate; "
        "frequency-separation conditions on the (1,2) pair cannot hold");

  const GasSpec& g = s.gas;
  check("gas.pressure_nonnegative", g.ambient_pressure >= 0.0, "requires P_am >= 0");
  check("gas.temperature_positive", g.ambient_temperature > 0.0, "requires T_am > 0");
  check("gas.molecule_mass_positive", g.molecule_mass > 0.0, "requires m > 0");
  check("gas.heat_capacity_ratio", g.heat_capacity_ratio > 1.0, "requires gamma_a > 1");
  check("gas.accommodation_range", g.accommodation >= 0.0 && g.accommodation <= 1.0,
        "requires 0 <= alpha_acc <= 1");

  if (s.detection) {
    const DetectionSpec det = resolved_detection(b, *s.detection);
    const double Z = det.effective_distance;
    check("detection.far_field", Z >= 10.0 * b.wavelength,
          "requires effective_distance >= 10*wavelength");
    const GeometryBounds bounds = max_allowed_geometry(b, Z);
    const double slack = 1.0 + 1e-12;
    check("detection.axial_area_bound", det.detector_area[2] <= bounds.area_3_max * slack,
          "requires a_d3 <= lambda0*Z/(5 pi)");
    check("detection.x_bound",
          det.offset_x * det.offset_x * det.detector_area[0] <= bounds.x2_area_1_max * slack,
          "requires X^2*a_d1 <= [lambda0*Z/(45 pi)]^2");
    check("detection.y_bound",
          det.offset_y * det.offset_y * det.detector_area[1] <= bounds.y2_area_2_max * slack,
          "requires Y^2*a_d2 <= [lambda0*Z/(45 pi)]^2");
    auto at_limit = [](double v, double bound) {
      return bound > 0.0 && v > 0.99 * bound;
    };
    if (at_limit(det.detector_area[2], bounds.area_3_max) ||
        at_limit(det.offset_x * det.offset_x * det.detector_area[0], bounds.x2_area_1_max) ||
        at_limit(det.offset_y * det.offset_y * det.detector_area[1], bounds.y2_area_2_max))
      rep.warnings.push_back("detection: geometry at the paraxial validity limit");
  }

  if (s.feedback && s.feedback->scheme != FeedbackScheme::none) {
    check("feedback.detection_present", s.detection.has_value(),
          "feedback analysis requires a detection section");
    if (s.feedback->scheme == FeedbackScheme::hybrid)
      check("feedback.coulomb_axis_range",
            s.feedback->coulomb_axis >= 1 && s.feedback->coulomb_axis <= 3,
            "requires coulomb_axis in {1,2,3}");
    for (int i = 0; i < 3; ++i) {
      const GainRule& r = s.feedback->gains[i];
      bool ok = true;
      if (r.explicit_value && *r.explicit_value < 0.0) ok = false;
      if (r.fraction_of_critical_cubed &&
          !(*r.fraction_of_critical_cubed > 0.0 && *r.fraction_of_critical_cubed < 1.0))
        ok = false;
      if (r.fraction_of_optimum && !(*r.fraction_of_optimum > 0.0)) ok = false;
      check("feedback.gain_rule_" + std::to_string(i + 1), ok,
            "gains must be >= 0; fractions of the critical cube must lie in (0,1)");
    }
  }

  check("solver.tolerance_positive", s.solver.tolerance > 0.0, "requires tolerance > 0");
  check("solver.damping_range", s.solver.damping > 0.0 && s.solver.damping <= 1.0,
        "requires damping in (0,1]");
  check("solver.max_iterations_positive", s.solver.max_iterations > 0,
        "requires max_iterations > 0");
  return rep;
}

}  // namespace levitrap
