#include <doctest.h>

#include <cmath>

#include "constants.hpp"
#include "detection.hpp"
#include "errors.hpp"
#include "fixtures.hpp"

using namespace levitrap;

namespace {

NoiseFloor floors_for(const Scenario& s) {
  return noise_floors(s.particle, s.beam, *s.detection);
}

// log-log slope over a 3-point grid
double fitted_exponent(const std::array<double, 3>& x, const std::array<double, 3>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < 3; ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (3.0 * sxy - sx * sy) / (3.0 * sxx - sx * sx);
}

}  // namespace

TEST_CASE("noise floors scale inversely with power and detector area") {
  const Scenario s = builtin_scenario("70nm");
  const NoiseFloor base = floors_for(s);

  Scenario bright = s;
  bright.beam.mean_power *= 2.0;
  const NoiseFloor half = floors_for(bright);
  for (int i = 0; i < 3; ++i)
    CHECK(half.s_n[i] == doctest::Approx(0.5 * base.s_n[i]).epsilon(1e-12));

  Scenario wide = s;
  wide.detection->pin_areas_to_max = false;
  wide.detection->detector_area = resolved_detection(s.beam, *s.detection).detector_area;
  wide.detection->offset_x = resolved_detection(s.beam, *s.detection).offset_x;
  wide.detection->offset_y = resolved_detection(s.beam, *s.detection).offset_y;
  wide.detection->detector_area[2] *= 0.5;  // halve a_d3, stay inside the bound
  const NoiseFloor doubled = floors_for(wide);
  CHECK(doubled.s_n[2] == doctest::Approx(2.0 * base.s_n[2]).epsilon(1e-12));
  CHECK(doubled.s_n[0] == doctest::Approx(base.s_n[0]).epsilon(1e-12));
}

TEST_CASE("axial-to-transverse floor ratio matches the closed-form ratio") {
  const Scenario s = builtin_scenario("70nm");
  const NoiseFloor nf = floors_for(s);
  const DetectionSpec det = resolved_detection(s.beam, *s.detection);
  const double z0 = s.beam.rayleigh_range();
  const double k0 = s.beam.wavenumber();
  const double z = det.effective_distance;
  const double expected = z0 * z0 * k0 * k0 * det.offset_x * det.offset_x *
                          det.detector_area[0] /
                          (0.5 * z * z * det.detector_area[2]);
  CHECK(nf.s_n[2] / nf.s_n[0] == doctest::Approx(expected).epsilon(1e-12));
  CHECK(nf.s_n[2] < nf.s_n[0]);  // the axial channel is the quiet one
}

TEST_CASE("transverse floors coincide for symmetric geometry") {
  const Scenario s = builtin_scenario("70nm");
  const NoiseFloor nf = floors_for(s);
  CHECK(nf.s_n[0] == doctest::Approx(nf.s_n[1]).epsilon(1e-14));
}

TEST_CASE("paraxial bounds and the balanced transverse choice") {
  const Scenario s = builtin_scenario("70nm");
  const double z = 10.0 * s.beam.wavelength;
  const GeometryBounds b = max_allowed_geometry(s.beam, z);
  CHECK(b.area_3_max ==
        doctest::Approx(s.beam.wavelength * z / (5.0 * phys::pi)).epsilon(1e-14));
  CHECK(b.balanced_transverse ==
        doctest::Approx(s.beam.wavelength * z / (45.0 * phys::pi)).epsilon(1e-14));
  CHECK(b.x2_area_1_max ==
        doctest::Approx(b.balanced_transverse * b.balanced_transverse).epsilon(1e-14));
  const GeometryBounds b2 = max_allowed_geometry(s.beam, 2.0 * z);
  CHECK(b2.area_3_max == doctest::Approx(2.0 * b.area_3_max).epsilon(1e-14));
}

TEST_CASE("floors pinned to the bounds scale as Z and Z^2") {
  const Scenario s = builtin_scenario("70nm");
  std::array<double, 3> zs{10.0 * s.beam.wavelength, 30.0 * s.beam.wavelength,
                           90.0 * s.beam.wavelength};
  std::array<double, 3> sn1{}, sn3{};
  for (int i = 0; i < 3; ++i) {
    Scenario v = s;
    v.detection->effective_distance = zs[i];
    v.detection->pin_areas_to_max = true;
    const NoiseFloor nf = floors_for(v);
    sn1[i] = nf.s_n[0];
    sn3[i] = nf.s_n[2];
  }
  CHECK(fitted_exponent(zs, sn3) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(fitted_exponent(zs, sn1) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("floors fall with the sixth power of the radius") {
  const Scenario small = builtin_scenario("70nm");
  Scenario large = small;
  large.particle.radius *= 2.0;
  const NoiseFloor a = floors_for(small);
  const NoiseFloor b = floors_for(large);
  for (int i = 0; i < 3; ++i)
    CHECK(a.s_n[i] / b.s_n[i] == doctest::Approx(64.0).epsilon(1e-12));
}

TEST_CASE("geometry violations are rejected with the violated bound named") {
  Scenario s = builtin_scenario("70nm");
  s.detection->pin_areas_to_max = false;
  const GeometryBounds b = max_allowed_geometry(s.beam, s.detection->effective_distance);
  s.detection->detector_area = {b.balanced_transverse, b.balanced_transverse,
                                2.0 * b.area_3_max};
  s.detection->offset_x = s.detection->offset_y = std::sqrt(b.balanced_transverse);
  CHECK_THROWS_WITH_AS(floors_for(s), doctest::Contains("a_d3"), ValidationError);

  Scenario far = builtin_scenario("70nm");
  far.detection->effective_distance = 5.0 * far.beam.wavelength;
  CHECK_THROWS_WITH_AS(floors_for(far), doctest::Contains("far-field"), ValidationError);

  Scenario off = builtin_scenario("70nm");
  off.detection->pin_areas_to_max = false;
  off.detection->detector_area = {b.balanced_transverse, b.balanced_transverse,
                                  b.area_3_max};
  off.detection->offset_x = 3.0 * std::sqrt(b.balanced_transverse);
  off.detection->offset_y = std::sqrt(b.balanced_transverse);
  CHECK_THROWS_WITH_AS(floors_for(off), doctest::Contains("X^2*a_d1"), ValidationError);
}
