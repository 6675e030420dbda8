#pragma once

#include <cstdint>
#include <vector>

#include "photon_oracle.hpp"

namespace levitrap {

struct PsdBinning {
  int segments = 64;        // Bartlett averaging segments (>= 32)
  int segment_bins = 32768; // bins per segment, power of two
};

// Averaged-periodogram estimate of an impulse train's spectrum, double-sided
// in angular frequency: S(w) = FT of the autocovariance, so a Poisson train
// of weight w at rate r has the white floor w^2 r. The fitted floor excludes
// the DC bin and the first two bins; its standard error comes from the
// spread across segments.
struct PsdEstimate {
  std::vector<double> frequency;  // rad/s grid (k >= 1)
  std::vector<double> density;    // averaged periodogram
  double floor = 0.0;
  double floor_se = 0.0;
  double mean_force = 0.0;        // total impulse / duration
  double mean_force_se = 0.0;     // shot-noise error of the mean
  std::uint64_t events = 0;
};

// Spectrum of sum_e weight_e * delta(t - time_e) over [0, duration).
PsdEstimate estimate_impulse_psd(const std::vector<double>& times,
                                 const std::vector<double>& weights, double duration,
                                 const PsdBinning& binning);

// Radiation-pressure train: impulse hbar*k_z per scattered or absorbed photon.
PsdEstimate radiation_pressure_psd(const PhotonStreams& streams, const BeamSpec& beam,
                                   const PsdBinning& binning);

// Recoil train along one axis: impulse -hbar*k'_axis per scattered photon.
PsdEstimate recoil_psd(const PhotonEventStream& scatter, const BeamSpec& beam, int axis,
                       const PsdBinning& binning);

}  // namespace levitrap
