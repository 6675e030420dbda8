#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "detection.hpp"
#include "rates.hpp"

namespace levitrap {

// Feedback-induced rates at one self-consistency state.
struct FeedbackRates {
  std::array<double, 3> gamma_g_fb{};   // measurement-noise gradient rate
  std::array<double, 3> gamma_r_fb{};   // measurement-noise pressure/Coulomb rate
  std::array<double, 3> variance{};     // x^2 expectation per axis, m^2
  std::array<double, 3> gains{};        // resolved feedback gains, rad/s
};

struct ConditionEntry {
  std::string name;
  double margin = 0.0;    // factor by which the inequality is satisfied
  double threshold = 0.0;
  bool passed = false;
  bool exempt = false;    // hybrid Coulomb-axis exemptions
};

struct ConditionLedger {
  std::vector<ConditionEntry> entries;
  bool operable() const {
    for (const auto& e : entries)
      if (!e.exempt && !e.passed) return false;
    return true;
  }
};

struct FeedbackReport {
  FeedbackScheme scheme = FeedbackScheme::none;
  int coulomb_axis = 0;  // 0 when not hybrid
  bool filtered = true;
  std::array<double, 3> occupation{};       // converged mean phonon numbers
  FeedbackRates rates_at_convergence;
  std::array<double, 3> gain_critical{};    // infinity on the Coulomb axis
  double gain_optimum = 0.0;                // hybrid only
  double occupation_minimum = 0.0;          // hybrid only
  ConditionLedger conditions;
  int iterations = 0;
  double residual = 0.0;
};

// Cube root of (m_th*Gamma + Gamma_r)*Gamma*hbar / (2 M Omega S_n) per
// axis; the hybrid Coulomb axis has no critical value (infinity).
std::array<double, 3> critical_feedback_rates(const RateSet& rates, const NoiseFloor& nf,
                                              double mass,
                                              std::optional<int> coulomb_axis = {});

struct CoulombOptimum {
  double gain = 0.0;               // rad/s
  double occupation = 0.0;         // minimum mean phonon number
  double sweep_gain_at_min = 0.0;  // golden-section check over [0.1, 10] x gain
};

CoulombOptimum optimum_coulomb_gain(const RateSet& rates, const NoiseFloor& nf,
                                    double mass, int axis);

// Occupation of the Coulomb-cooled axis as a function of the gain (the
// large-gain closed form whose minimum sits at the optimum).
double coulomb_axis_occupation(const RateSet& rates, const NoiseFloor& nf, double mass,
                               int axis, double gain);

ConditionLedger condition_ledger(const RateSet& rates, const NoiseFloor& nf, double mass,
                                 const std::array<double, 3>& gains,
                                 FeedbackScheme scheme, int coulomb_axis,
                                 double threshold = 10.0);

// Resolves the plan's gain rules against the critical/optimum values.
std::array<double, 3> resolve_gains(const RateSet& rates, const NoiseFloor& nf,
                                    double mass, const FeedbackPlan& plan);

// Feedback-induced rates for a given occupation state (one leg of the
// self-consistency map).
FeedbackRates feedback_rates_at(const RateSet& rates, const NoiseFloor& nf,
                                const OpticalCoefficients& coeffs, double mass,
                                FeedbackScheme scheme, int coulomb_axis, bool filtered,
                                const std::array<double, 3>& gains,
                                const std::array<double, 3>& occupation);

// Damped fixed-point solve of the occupations with feedback (the
// measurement-noise rates depend on the variances, hence on the
// occupations). Throws InstabilityError when a denominator closes. The
// optical coefficients supply the cross-feed ratios A_i/A_j and B/A_j of
// the unfiltered scheme.
// initial_guess overrides the built-in seed (used to probe the fixed
// point's basin).
FeedbackReport occupations_with_feedback(const RateSet& rates, const NoiseFloor& nf,
                                         const OpticalCoefficients& coeffs, double mass,
                                         const FeedbackPlan& plan,
                                         const SolverSettings& settings,
                                         const std::array<double, 3>* initial_guess = nullptr);

// Scaling study of the hybrid minimum occupation along one parameter.
enum class SweepParameter { mean_power, radius, numerical_aperture };
enum class PressurePolicy { fixed, pinned_multiple_of_critical };

struct ScalingPoint {
  double parameter = 0.0;
  double occupation_minimum = 0.0;
  bool melting = false;  // flagged and excluded from the verdict
};

struct ScalingStudy {
  std::vector<ScalingPoint> points;
  bool strictly_decreasing = false;
  bool strictly_increasing = false;
};

ScalingStudy scaling_study(const Scenario& scenario, int axis, SweepParameter parameter,
                           const std::vector<double>& grid,
                           PressurePolicy policy = PressurePolicy::fixed,
                           double critical_multiple = 10.0);

}  // namespace levitrap
