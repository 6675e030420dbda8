#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "optics.hpp"

namespace levitrap {

enum class StreamKind { scatter, absorb };

// Poisson photon-event stream. Scatter streams carry the final-direction
// angles of each photon in the dipole frame (zenith along the polarization
// axis x1); absorb streams carry times only.
struct PhotonEventStream {
  StreamKind kind = StreamKind::scatter;
  double duration = 0.0;        // s
  double rate = 0.0;            // events/s
  std::uint64_t seed = 0;
  std::vector<double> times;    // sorted, within [0, duration)
  std::vector<double> cos_zenith;   // scatter only
  std::vector<double> azimuth;      // scatter only

  // Final-wavevector component along axis (1..3) for event index e.
  double wavevector_component(const BeamSpec& beam, size_t e, int axis) const;
};

struct PhotonStreams {
  PhotonEventStream scatter;
  PhotonEventStream absorb;
};

// Two independent Poisson streams at rates P_s/(hbar w0) and P_a/(hbar w0);
// scatter directions drawn from the dipole radiation density
// 3 sin^3(theta)/(8 pi). Requires >= 1e5 expected scatter events; guards at
// 1e9 events.
PhotonStreams simulate_photon_streams(const OpticalCoefficients& coeffs,
                                      const BeamSpec& beam, double duration,
                                      std::uint64_t seed);

// Inverse-CDF sampler for the zenith density (3/4) sin^3(theta) built as a
// monotone cubic table; exposed for distribution tests.
class ZenithSampler {
 public:
  explicit ZenithSampler(int knots = 4096);
  double sample(double u) const;       // u in [0,1] -> theta in [0,pi]
  static double cdf(double theta);     // closed form, for verification

 private:
  std::vector<double> theta_;   // knot values on the uniform u grid
  std::vector<double> slope_;   // monotone Hermite tangents d theta / d u
  double du_;
};

// Raw-stream binary dump: 16-byte header ("LVTR", u32 version, u64 count),
// then per event a little-endian record (f64 time, 3x f64 momentum impulse).
// Scatter events carry hbar*(k_z ez - k'); absorb events carry hbar*k_z ez.
void dump_streams(const PhotonStreams& streams, const BeamSpec& beam,
                  const std::string& path);

struct StreamDumpRecord {
  double time;
  double impulse[3];
};
std::vector<StreamDumpRecord> read_stream_dump(const std::string& path);

}  // namespace levitrap
