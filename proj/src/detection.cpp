#include "detection.hpp"

#include <cmath>
#include <string>

#include "constants.hpp"
#include "errors.hpp"

namespace levitrap {

GeometryBounds max_allowed_geometry(const BeamSpec& beam, double effective_distance) {
  GeometryBounds b;
  const double lz = beam.wavelength * effective_distance;
  b.area_3_max = lz / (5.0 * phys::pi);
  b.balanced_transverse = lz / (45.0 * phys::pi);
  b.x2_area_1_max = b.balanced_transverse * b.balanced_transverse;
  b.y2_area_2_max = b.x2_area_1_max;
  return b;
}

DetectionSpec resolved_detection(const BeamSpec& beam, const DetectionSpec& det) {
  if (!det.pin_areas_to_max) return det;
  DetectionSpec r = det;
  const GeometryBounds b = max_allowed_geometry(beam, det.effective_distance);
  r.detector_area = {b.balanced_transverse, b.balanced_transverse, b.area_3_max};
  r.offset_x = std::sqrt(b.balanced_transverse);
  r.offset_y = std::sqrt(b.balanced_transverse);
  r.pin_areas_to_max = false;
  return r;
}

NoiseFloor noise_floors(const ParticleSpec& p, const BeamSpec& beam,
                        const DetectionSpec& det_in) {
  const DetectionSpec det = resolved_detection(beam, det_in);
  const double Z = det.effective_distance;
  if (Z < 10.0 * beam.wavelength)
    throw ValidationError("detection geometry: effective_distance below the far-field bound 10*wavelength");
  const GeometryBounds b = max_allowed_geometry(beam, Z);
  // A hair of slack so geometry placed exactly at a bound passes.
  const double slack = 1.0 + 1e-12;
  if (det.detector_area[2] > b.area_3_max * slack)
    throw ValidationError("detection geometry: a_d3 above the paraxial bound lambda0*Z/(5 pi)");
  if (det.offset_x * det.offset_x * det.detector_area[0] > b.x2_area_1_max * slack)
    throw ValidationError("detection geometry: X^2*a_d1 above the paraxial bound [lambda0*Z/(45 pi)]^2");
  if (det.offset_y * det.offset_y * det.detector_area[1] > b.y2_area_2_max * slack)
    throw ValidationError("detection geometry: Y^2*a_d2 above the paraxial bound [lambda0*Z/(45 pi)]^2");

  const double a = p.cm_ratio();
  const double R = p.radius;
  const double k0 = beam.wavenumber();
  const double w0 = beam.waist_radius();
  const double z0 = beam.rayleigh_range();
  const double hw0 = phys::hbar * beam.angular_frequency();
  const double r3 = R * R * R;
  const double r6 = r3 * r3;
  const double k04 = k0 * k0 * k0 * k0;
  const double k06 = k04 * k0 * k0;

  NoiseFloor nf;
  nf.effective_distance = Z;
  nf.offset_x = det.offset_x;
  nf.offset_y = det.offset_y;
  nf.detector_area = det.detector_area;
  nf.filtered = det.filtered;

  // Axial channel: single on-axis detector.
  nf.s_n[2] = phys::pi * hw0 * w0 * w0 * z0 * z0 * Z * Z /
              (8.0 * a * a * k04 * r6 * beam.mean_power * det.detector_area[2]);
  // Transverse channels: balanced detector pairs, hence the extra 0.5.
  const double z4 = Z * Z * Z * Z;
  const double common = 0.5 * phys::pi * hw0 * w0 * w0 /
                        (8.0 * a * a * k06 * r6 * beam.mean_power);
  nf.s_n[0] = common * z4 / (det.offset_x * det.offset_x * det.detector_area[0]);
  nf.s_n[1] = common * z4 / (det.offset_y * det.offset_y * det.detector_area[1]);

  for (int i = 0; i < 3; ++i) {
    if (!std::isfinite(nf.s_n[i]) || nf.s_n[i] <= 0.0)
      throw ValidationError("detection geometry: noise floor for axis " +
                            std::to_string(i + 1) + " is not finite and positive");
  }
  return nf;
}

}  // namespace levitrap
