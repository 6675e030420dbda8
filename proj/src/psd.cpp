#include "psd.hpp"

#include <cmath>
#include <complex>
#include <mutex>

#include <fftw3.h>

#include "constants.hpp"
#include "errors.hpp"

namespace levitrap {

namespace {

std::mutex fftw_plan_mutex;  // FFTW planning is not thread-safe

}  // namespace

PsdEstimate estimate_impulse_psd(const std::vector<double>& times,
                                 const std::vector<double>& weights, double duration,
                                 const PsdBinning& binning) {
  if (binning.segments < 32)
    throw ValidationError("psd: fewer than 32 averaging segments");
  if (binning.segment_bins < 16 || (binning.segment_bins & (binning.segment_bins - 1)) != 0)
    throw ValidationError("psd: segment_bins must be a power of two >= 16");
  if (times.size() != weights.size())
    throw ValidationError("psd: times and weights must have equal length");
  if (duration <= 0.0) throw ValidationError("psd: duration must be positive");

  const int k_seg = binning.segments;
  const int len = binning.segment_bins;
  const std::uint64_t total_bins = static_cast<std::uint64_t>(k_seg) * len;
  const double dt = duration / static_cast<double>(total_bins);

  // Bin the impulse train as a rate signal (weight / dt per bin). Counts in
  // disjoint bins of a Poisson train are independent, so the binned series
  // is exactly white and no window correction is needed.
  std::vector<double> series(total_bins, 0.0);
  double total_weight = 0.0, total_weight_sq = 0.0;
  for (size_t e = 0; e < times.size(); ++e) {
    auto bin = static_cast<std::uint64_t>(times[e] / dt);
    if (bin >= total_bins) bin = total_bins - 1;
    series[bin] += weights[e] / dt;
    total_weight += weights[e];
    total_weight_sq += weights[e] * weights[e];
  }

  PsdEstimate out;
  out.events = times.size();
  out.mean_force = total_weight / duration;
  out.mean_force_se = std::sqrt(total_weight_sq) / duration;

  const int n_freq = len / 2 + 1;
  std::vector<double> in(len);
  std::vector<std::complex<double>> spectrum(n_freq);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_plan_mutex);
    plan = fftw_plan_dft_r2c_1d(len, in.data(),
                                reinterpret_cast<fftw_complex*>(spectrum.data()),
                                FFTW_ESTIMATE);
  }

  out.frequency.resize(n_freq - 1);
  out.density.assign(n_freq - 1, 0.0);
  const double seg_duration = len * dt;
  for (int k = 1; k < n_freq; ++k)
    out.frequency[k - 1] = phys::two_pi * k / seg_duration;

  std::vector<double> segment_floor(k_seg, 0.0);
  const int fit_lo = 3;  // skip DC and the first two bins
  for (int s = 0; s < k_seg; ++s) {
    const double* src = series.data() + static_cast<std::uint64_t>(s) * len;
    double mean = 0.0;
    for (int i = 0; i < len; ++i) mean += src[i];
    mean /= len;
    for (int i = 0; i < len; ++i) in[i] = src[i] - mean;
    fftw_execute(plan);
    double acc = 0.0;
    int used = 0;
    for (int k = 1; k < n_freq; ++k) {
      const double p = dt * std::norm(spectrum[k]) / len;
      out.density[k - 1] += p / k_seg;
      if (k >= fit_lo && k < n_freq - 1) {
        acc += p;
        ++used;
      }
    }
    segment_floor[s] = acc / used;
  }
  {
    std::lock_guard<std::mutex> lock(fftw_plan_mutex);
    fftw_destroy_plan(plan);
  }

  double floor = 0.0;
  for (double f : segment_floor) floor += f;
  floor /= k_seg;
  double var = 0.0;
  for (double f : segment_floor) var += (f - floor) * (f - floor);
  var /= (k_seg - 1);
  out.floor = floor;
  out.floor_se = std::sqrt(var / k_seg);
  return out;
}

PsdEstimate radiation_pressure_psd(const PhotonStreams& streams, const BeamSpec& beam,
                                   const PsdBinning& binning) {
  const double impulse = phys::hbar * beam.axial_wavenumber();
  std::vector<double> times;
  times.reserve(streams.scatter.times.size() + streams.absorb.times.size());
  times.insert(times.end(), streams.scatter.times.begin(), streams.scatter.times.end());
  times.insert(times.end(), streams.absorb.times.begin(), streams.absorb.times.end());
  std::vector<double> weights(times.size(), impulse);
  return estimate_impulse_psd(times, weights, streams.scatter.duration, binning);
}

PsdEstimate recoil_psd(const PhotonEventStream& scatter, const BeamSpec& beam, int axis,
                       const PsdBinning& binning) {
  std::vector<double> weights(scatter.times.size());
  for (size_t e = 0; e < weights.size(); ++e)
    weights[e] = -phys::hbar * scatter.wavevector_component(beam, e, axis);
  return estimate_impulse_psd(scatter.times, weights, scatter.duration, binning);
}

}  // namespace levitrap
