#pragma once

#include <array>

#include "scenario.hpp"

namespace levitrap {

// White position-equivalent measurement-noise floors, double-sided in
// angular frequency (m^2 s).
struct NoiseFloor {
  std::array<double, 3> s_n{};  // S_n1, S_n2, S_n3
  // geometry echo
  double effective_distance = 0.0;
  double offset_x = 0.0;
  double offset_y = 0.0;
  std::array<double, 3> detector_area{};
  bool filtered = true;
};

// Paraxial-validity bounds on the detection geometry at a given effective
// distance, and the balanced choice that attains the transverse bound.
struct GeometryBounds {
  double area_3_max = 0.0;          // m^2
  double x2_area_1_max = 0.0;       // m^4
  double y2_area_2_max = 0.0;       // m^4
  double balanced_transverse = 0.0; // X^2 = a_d1 = lambda0 Z / (45 pi)
};

GeometryBounds max_allowed_geometry(const BeamSpec& beam, double effective_distance);

// Closed-form noise floors for the (resolved) detection geometry.
// Throws ValidationError naming the violated bound if the geometry is
// outside its validity region.
NoiseFloor noise_floors(const ParticleSpec& p, const BeamSpec& beam,
                        const DetectionSpec& det);

}  // namespace levitrap
