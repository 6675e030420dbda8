#include "photon_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#include "constants.hpp"
#include "errors.hpp"
#include "rng.hpp"

namespace levitrap {

double ZenithSampler::cdf(double theta) {
  const double c = std::cos(theta);
  return 0.25 * c * c * c - 0.75 * c + 0.5;
}

ZenithSampler::ZenithSampler(int knots) {
  const int n = std::max(knots, 16);
  theta_.resize(n + 1);
  slope_.resize(n + 1);
  du_ = 1.0 / n;
  theta_[0] = 0.0;
  theta_[n] = phys::pi;
  for (int k = 1; k < n; ++k) {
    const double u = k * du_;
    // invert the closed-form CDF by bisection + Newton
    double lo = 0.0, hi = phys::pi, t = theta_[k - 1];
    for (int it = 0; it < 100; ++it) {
      const double f = cdf(t) - u;
      if (f > 0.0)
        hi = t;
      else
        lo = t;
      const double pdf = 0.75 * std::pow(std::sin(t), 3);
      double next = pdf > 0.0 ? t - f / pdf : 0.5 * (lo + hi);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      if (std::abs(next - t) < 1e-15) {
        t = next;
        break;
      }
      t = next;
    }
    theta_[k] = t;
  }
  // Monotone Hermite tangents: analytic d theta/du = 1/pdf, clamped to
  // three times the neighboring secants (Fritsch-Carlson bound). The pdf
  // vanishes at both endpoints, so those tangents fall back to the clamp.
  for (int k = 0; k <= n; ++k) {
    const double pdf = 0.75 * std::pow(std::sin(theta_[k]), 3);
    double tangent = pdf > 0.0 ? 1.0 / pdf : std::numeric_limits<double>::infinity();
    double limit = std::numeric_limits<double>::infinity();
    if (k > 0) limit = std::min(limit, 3.0 * (theta_[k] - theta_[k - 1]) / du_);
    if (k < n) limit = std::min(limit, 3.0 * (theta_[k + 1] - theta_[k]) / du_);
    slope_[k] = std::min(tangent, limit);
  }
}

double ZenithSampler::sample(double u) const {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return phys::pi;
  const int n = static_cast<int>(theta_.size()) - 1;
  int k = std::min(static_cast<int>(u / du_), n - 1);
  const double t = (u - k * du_) / du_;
  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1;
  const double h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2;
  const double h11 = t3 - t2;
  return h00 * theta_[k] + h10 * du_ * slope_[k] + h01 * theta_[k + 1] +
         h11 * du_ * slope_[k + 1];
}

namespace {

PhotonEventStream poisson_stream(StreamKind kind, double rate, double duration,
                                 std::uint64_t seed, const char* label) {
  PhotonEventStream s;
  s.kind = kind;
  s.duration = duration;
  s.rate = rate;
  s.seed = seed;
  if (rate <= 0.0 || duration <= 0.0) return s;
  const double expected = rate * duration;
  if (expected > 1e9) throw Error("photon stream: event count would exceed the 1e9 guard");
  s.times.reserve(static_cast<size_t>(expected + 5.0 * std::sqrt(expected) + 16.0));
  Rng rng(seed, label);
  double t = rng.exponential(rate);
  while (t < duration) {
    s.times.push_back(t);
    t += rng.exponential(rate);
  }
  return s;
}

}  // namespace

PhotonStreams simulate_photon_streams(const OpticalCoefficients& coeffs,
                                      const BeamSpec& beam, double duration,
                                      std::uint64_t seed) {
  const double hw0 = phys::hbar * beam.angular_frequency();
  const double scatter_rate = coeffs.scattered_power / hw0;
  const double absorb_rate = coeffs.absorbed_power / hw0;
  if (scatter_rate * duration < 1e5)
    throw UndersampledError(
        "photon streams: fewer than 1e5 expected scatter events; increase the duration");

  PhotonStreams out;
  out.scatter = poisson_stream(StreamKind::scatter, scatter_rate, duration, seed, "scatter");
  out.absorb = poisson_stream(StreamKind::absorb, absorb_rate, duration, seed, "absorb");

  static const ZenithSampler sampler;
  Rng rng(seed, "directions");
  const size_t n = out.scatter.times.size();
  out.scatter.cos_zenith.resize(n);
  out.scatter.azimuth.resize(n);
  for (size_t e = 0; e < n; ++e) {
    out.scatter.cos_zenith[e] = std::cos(sampler.sample(rng.uniform()));
    out.scatter.azimuth[e] = rng.uniform(0.0, phys::two_pi);
  }
  return out;
}

double PhotonEventStream::wavevector_component(const BeamSpec& beam, size_t e,
                                               int axis) const {
  const double k0 = beam.wavenumber();
  const double c = cos_zenith[e];
  const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
  switch (axis) {
    case 1:
      return k0 * c;  // zenith along the polarization axis
    case 2:
      return k0 * s * std::cos(azimuth[e]);
    case 3:
      return k0 * s * std::sin(azimuth[e]);
    default:
      throw ValidationError("axis must be 1, 2 or 3");
  }
}

void dump_streams(const PhotonStreams& streams, const BeamSpec& beam,
                  const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open dump file '" + path + "'");
  const std::uint32_t version = 1;
  const std::uint64_t count =
      streams.scatter.times.size() + streams.absorb.times.size();
  out.write("LVTR", 4);
  out.write(reinterpret_cast<const char*>(&version), 4);
  out.write(reinterpret_cast<const char*>(&count), 8);

  const double hkz = phys::hbar * beam.axial_wavenumber();
  auto write_record = [&out](double time, double i1, double i2, double i3) {
    double rec[4] = {time, i1, i2, i3};
    out.write(reinterpret_cast<const char*>(rec), sizeof(rec));
  };
  // merge the two sorted streams by time
  size_t is = 0, ia = 0;
  const auto& sc = streams.scatter;
  const auto& ab = streams.absorb;
  while (is < sc.times.size() || ia < ab.times.size()) {
    const bool take_scatter =
        ia >= ab.times.size() || (is < sc.times.size() && sc.times[is] <= ab.times[ia]);
    if (take_scatter) {
      const double h = phys::hbar;
      write_record(sc.times[is], -h * sc.wavevector_component(beam, is, 1),
                   -h * sc.wavevector_component(beam, is, 2),
                   hkz - h * sc.wavevector_component(beam, is, 3));
      ++is;
    } else {
      write_record(ab.times[ia], 0.0, 0.0, hkz);
      ++ia;
    }
  }
}

std::vector<StreamDumpRecord> read_stream_dump(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open dump file '" + path + "'");
  char magic[4];
  std::uint32_t version = 0;
  std::uint64_t count = 0;
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(&version), 4);
  in.read(reinterpret_cast<char*>(&count), 8);
  if (!in || std::memcmp(magic, "LVTR", 4) != 0)
    throw ParseError("stream dump: bad magic");
  if (version != 1) throw ParseError("stream dump: unsupported version");
  std::vector<StreamDumpRecord> records(count);
  for (auto& r : records) {
    double rec[4];
    in.read(reinterpret_cast<char*>(rec), sizeof(rec));
    if (!in) throw ParseError("stream dump: truncated record section");
    r.time = rec[0];
    r.impulse[0] = rec[1];
    r.impulse[1] = rec[2];
    r.impulse[2] = rec[3];
  }
  return records;
}

}  // namespace levitrap
