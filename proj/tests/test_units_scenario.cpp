#include <doctest.h>

#include <cmath>

#include "constants.hpp"
#include "errors.hpp"
#include "fixtures.hpp"
#include "rng.hpp"
#include "scenario.hpp"
#include "units.hpp"

using namespace levitrap;

TEST_CASE("unit conversions are exact definitions") {
  CHECK(units::to_si(7e-9, "mbar") == doctest::Approx(7e-7).epsilon(1e-15));
  CHECK(units::to_si(100.0, "mW") == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(units::to_si(70.0, "nm") == doctest::Approx(70e-9).epsilon(1e-15));
  CHECK(units::to_si(10.64, "µm") == doctest::Approx(1.064e-5).epsilon(1e-15));
  CHECK(units::to_si(300.0, "K") == 300.0);
  CHECK(units::to_si(5.0, "Pa") == 5.0);
  CHECK(units::to_si(2.5, "W") == 2.5);
  CHECK(units::to_si(1.0, "rad/s") == 1.0);
  // a gain quoted as "2pi x 94 Hz"; 94 * 2pi checked by long multiplication
  CHECK(units::to_si(94.0, "Hz") == doctest::Approx(590.619418875).epsilon(1e-11));
}

TEST_CASE("unknown unit is rejected with the offending token") {
  CHECK_THROWS_WITH_AS(units::to_si(1.0, "furlong"), doctest::Contains("furlong"),
                       ParseError);
  CHECK(!units::is_known_unit("psi"));
}

TEST_CASE("to-SI then from-SI round-trips to 12 digits") {
  Rng rng(42, "unit-roundtrip");
  const char* all[] = {"nm", "µm", "um", "mW", "W", "mbar", "Pa", "K", "Hz", "rad/s"};
  for (const char* unit : all) {
    for (int n = 0; n < 50; ++n) {
      const double v = std::exp(rng.uniform(-20.0, 20.0));
      const double back = units::from_si(units::to_si(v, unit), unit);
      CHECK(back == doctest::Approx(v).epsilon(1e-12));
    }
  }
}

TEST_CASE("impedance, permittivity and light speed are mutually consistent") {
  CHECK(std::abs(phys::vacuum_impedance * phys::vacuum_permittivity * phys::light_speed -
                 1.0) < 1e-10);
}

TEST_CASE("scenario JSON parsing with unit suffixes") {
  const char* text = R"({
    "particle": {"radius": 70, "radius_unit": "nm", "mass_density": 2200,
                 "eps_real": 2.1, "eps_imag": 1e-5},
    "beam": {"wavelength": 1064, "wavelength_unit": "nm",
             "mean_power": 100, "mean_power_unit": "mW", "numerical_aperture": 0.8},
    "gas": {"ambient_pressure": 7e-9, "ambient_pressure_unit": "mbar"}
  })";
  const Scenario s = scenario_from_json(text);
  CHECK(s.particle.radius == doctest::Approx(70e-9));
  CHECK(s.beam.mean_power == doctest::Approx(0.1));
  CHECK(s.gas.ambient_pressure == doctest::Approx(7e-7));
  // defaults
  CHECK(s.particle.emissivity == 1.0);
  CHECK(s.particle.melting_point == 1873.0);
  CHECK(s.gas.ambient_temperature == 300.0);
  CHECK(s.gas.molecule_mass == doctest::Approx(4.81e-26));
  CHECK(s.gas.accommodation == doctest::Approx(0.777));
  CHECK(!s.detection.has_value());
  CHECK(!s.feedback.has_value());
}

TEST_CASE("unknown keys and malformed documents are rejected") {
  CHECK_THROWS_AS(scenario_from_json("not json"), ParseError);
  CHECK_THROWS_WITH_AS(
      scenario_from_json(
          R"({"particle": {"radius": 1, "mass_density": 1, "eps_real": 2, "bogus": 1},
              "beam": {"wavelength": 1e-6, "mean_power": 1, "numerical_aperture": 0.5},
              "gas": {"ambient_pressure": 1}})"),
      doctest::Contains("particle.bogus"), ParseError);
  CHECK_THROWS_WITH_AS(
      scenario_from_json(
          R"({"particle": {"radius": 1, "radius_unit": "lightyear", "mass_density": 1,
                           "eps_real": 2},
              "beam": {"wavelength": 1e-6, "mean_power": 1, "numerical_aperture": 0.5},
              "gas": {"ambient_pressure": 1}})"),
      doctest::Contains("lightyear"), ParseError);
  CHECK_THROWS_WITH_AS(scenario_from_json(R"({"beam": {}, "gas": {}})"),
                       doctest::Contains("particle"), ParseError);
}

TEST_CASE("baseline scenario passes every validation check") {
  const ValidationReport rep = validate_scenario(builtin_scenario("70nm"));
  CHECK(rep.passed());
  for (const auto& c : rep.checks) {
    INFO(c.name);
    CHECK(c.passed);
  }
  // the symmetric beam and the at-limit detector geometry are warned about
  CHECK(rep.warnings.size() >= 2);
}

TEST_CASE("far-field and paraxial violations fail validation") {
  Scenario s = builtin_scenario("70nm");
  s.detection->pin_areas_to_max = false;
  s.detection->effective_distance = s.beam.wavelength;  // far below 10*lambda
  s.detection->detector_area = {1e-14, 1e-14, 1e-14};
  s.detection->offset_x = s.detection->offset_y = 1e-7;
  ValidationReport rep = validate_scenario(s);
  bool far_field_failed = false;
  for (const auto& c : rep.checks)
    if (c.name == "detection.far_field" && !c.passed) far_field_failed = true;
  CHECK(far_field_failed);

  Scenario s2 = builtin_scenario("70nm");
  const double z = s2.detection->effective_distance;
  s2.detection->pin_areas_to_max = false;
  s2.detection->detector_area = {1e-15, 1e-15,
                                 2.0 * s2.beam.wavelength * z / (5.0 * phys::pi)};
  s2.detection->offset_x = s2.detection->offset_y = 1e-9;
  rep = validate_scenario(s2);
  bool axial_failed = false;
  for (const auto& c : rep.checks)
    if (c.name == "detection.axial_area_bound" && !c.passed) axial_failed = true;
  CHECK(axial_failed);
}

TEST_CASE("low-loss warning appears when eps_imag is large") {
  Scenario s = builtin_scenario("70nm");
  s.particle.eps_imag = 0.1;  // eps_I/eps_R ~ 0.05 > 1e-2
  const ValidationReport rep = validate_scenario(s);
  bool warned = false;
  for (const auto& w : rep.warnings)
    if (w.find("low-loss") != std::string::npos) warned = true;
  CHECK(warned);
}

TEST_CASE("bundled config files evaluate identically to the builtins") {
  struct Pair {
    const char* file;
    const char* builtin;
  };
  const Pair pairs[] = {{"configs/baseline_70nm.json", "70nm"},
                        {"configs/baseline_180nm.json", "180nm"},
                        {"configs/parametric_70nm.json", "70nm-parametric"},
                        {"configs/hybrid_70nm_k3.json", "70nm-hybrid-k3"}};
  for (const auto& p : pairs) {
    INFO(p.file);
    const Scenario loaded =
        scenario_from_file(std::string(LEVITRAP_SOURCE_DIR) + "/" + p.file);
    const Scenario builtin = builtin_scenario(p.builtin);
    CHECK(loaded.particle.radius == doctest::Approx(builtin.particle.radius).epsilon(1e-12));
    CHECK(loaded.beam.mean_power == doctest::Approx(builtin.beam.mean_power).epsilon(1e-12));
    CHECK(loaded.gas.ambient_pressure ==
          doctest::Approx(builtin.gas.ambient_pressure).epsilon(1e-12));
    REQUIRE(loaded.detection.has_value());
    CHECK(loaded.detection->effective_distance ==
          doctest::Approx(builtin.detection->effective_distance).epsilon(1e-12));
    CHECK(loaded.detection->pin_areas_to_max == builtin.detection->pin_areas_to_max);
    CHECK((loaded.feedback.has_value()) == (builtin.feedback.has_value()));
    if (loaded.feedback)
      CHECK(static_cast<int>(loaded.feedback->scheme) ==
            static_cast<int>(builtin.feedback->scheme));
  }
}

TEST_CASE("gain rules parse from numbers, objects and shared units") {
  const char* text = R"({
    "particle": {"radius": 70, "radius_unit": "nm", "mass_density": 2200, "eps_real": 2.1},
    "beam": {"wavelength": 1064, "wavelength_unit": "nm", "mean_power": 0.1,
             "numerical_aperture": 0.8},
    "gas": {"ambient_pressure": 7e-7},
    "feedback": {"scheme": "hybrid", "coulomb_axis": 3,
                 "gains": [{"fraction_of_critical_cubed": 0.1},
                           {"value": 0.05, "unit": "Hz"},
                           {"fraction_of_optimum": 1.0}]}
  })";
  const Scenario s = scenario_from_json(text);
  REQUIRE(s.feedback.has_value());
  CHECK(s.feedback->gains[0].fraction_of_critical_cubed == doctest::Approx(0.1));
  CHECK(*s.feedback->gains[1].explicit_value ==
        doctest::Approx(0.05 * phys::two_pi).epsilon(1e-12));
  CHECK(s.feedback->gains[2].fraction_of_optimum == doctest::Approx(1.0));
  CHECK_THROWS_AS(scenario_from_json(R"({
    "particle": {"radius": 70, "radius_unit": "nm", "mass_density": 2200, "eps_real": 2.1},
    "beam": {"wavelength": 1064, "wavelength_unit": "nm", "mean_power": 0.1,
             "numerical_aperture": 0.8},
    "gas": {"ambient_pressure": 7e-7},
    "feedback": {"scheme": "parametric",
                 "gains": [{"typo_rule": 1}, 0, 0]}})"),
                  ParseError);
}
