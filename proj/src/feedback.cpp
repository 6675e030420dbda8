#include "feedback.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "constants.hpp"
#include "errors.hpp"

namespace levitrap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double heating_sum(const RateSet& r, int i) {
  return r.m_thermal[i] * r.gamma + r.gamma_r[i];
}

}  // namespace

std::array<double, 3> critical_feedback_rates(const RateSet& rates, const NoiseFloor& nf,
                                              double mass, std::optional<int> coulomb_axis) {
  std::array<double, 3> out{};
  for (int i = 0; i < 3; ++i) {
    if (coulomb_axis && *coulomb_axis == i + 1) {
      out[i] = kInf;  // the Coulomb force feeds no gradient noise back
      continue;
    }
    const double cubed = heating_sum(rates, i) * rates.gamma * phys::hbar /
                         (2.0 * mass * rates.omega[i] * nf.s_n[i]);
    out[i] = std::cbrt(cubed);
  }
  return out;
}

double coulomb_axis_occupation(const RateSet& rates, const NoiseFloor& nf, double mass,
                               int axis, double gain) {
  const int i = axis - 1;
  const double noise_heating =
      mass * rates.omega[i] * gain * gain * nf.s_n[i] / (2.0 * phys::hbar);
  return (heating_sum(rates, i) + noise_heating) / gain;
}

CoulombOptimum optimum_coulomb_gain(const RateSet& rates, const NoiseFloor& nf,
                                    double mass, int axis) {
  if (axis < 1 || axis > 3) throw ValidationError("coulomb axis must be 1, 2 or 3");
  const int i = axis - 1;
  CoulombOptimum out;
  const double h = heating_sum(rates, i);
  out.gain = std::sqrt(h * 2.0 * phys::hbar / (mass * rates.omega[i] * nf.s_n[i]));
  out.occupation =
      2.0 * std::sqrt(h * mass * rates.omega[i] * nf.s_n[i] / (2.0 * phys::hbar));

  // Golden-section check that the closed-form gain really minimizes the
  // occupation over [0.1, 10] x gain.
  double lo = 0.1 * out.gain, hi = 10.0 * out.gain;
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = hi - phi * (hi - lo), b = lo + phi * (hi - lo);
  double fa = coulomb_axis_occupation(rates, nf, mass, axis, a);
  double fb = coulomb_axis_occupation(rates, nf, mass, axis, b);
  while ((hi - lo) > 1e-6 * out.gain) {
    if (fa < fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - phi * (hi - lo);
      fa = coulomb_axis_occupation(rates, nf, mass, axis, a);
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + phi * (hi - lo);
      fb = coulomb_axis_occupation(rates, nf, mass, axis, b);
    }
  }
  out.sweep_gain_at_min = 0.5 * (lo + hi);
  return out;
}

std::array<double, 3> resolve_gains(const RateSet& rates, const NoiseFloor& nf,
                                    double mass, const FeedbackPlan& plan) {
  std::optional<int> k;
  if (plan.scheme == FeedbackScheme::hybrid) k = plan.coulomb_axis;
  const std::array<double, 3> critical = critical_feedback_rates(rates, nf, mass, k);

  std::array<double, 3> gains{};
  for (int i = 0; i < 3; ++i) {
    const GainRule& rule = plan.gains[i];
    if (rule.explicit_value) {
      gains[i] = *rule.explicit_value;
    } else if (rule.fraction_of_critical_cubed) {
      if (!std::isfinite(critical[i]))
        throw ValidationError(
            "gain rule: the Coulomb axis has no critical value; give an explicit gain or a "
            "fraction of the optimum");
      gains[i] = std::cbrt(*rule.fraction_of_critical_cubed) * critical[i];
    } else if (rule.fraction_of_optimum) {
      if (!k || *k != i + 1)
        throw ValidationError(
            "gain rule: fraction_of_optimum applies only to the hybrid Coulomb axis");
      gains[i] = *rule.fraction_of_optimum * optimum_coulomb_gain(rates, nf, mass, *k).gain;
    } else {
      gains[i] = 0.0;
    }
  }
  return gains;
}

ConditionLedger condition_ledger(const RateSet& rates, const NoiseFloor& nf, double mass,
                                 const std::array<double, 3>& gains,
                                 FeedbackScheme scheme, int coulomb_axis,
                                 double threshold) {
  ConditionLedger ledger;
  const bool hybrid = scheme == FeedbackScheme::hybrid;
  // Solver tolerances can leave a nominally exact margin a few ulp under
  // the threshold; compare with a 1e-6 relative slack.
  auto pass = [threshold](double margin) { return margin >= threshold * (1.0 - 1e-6); };
  std::array<double, 3> delta{};
  for (int i = 0; i < 3; ++i) delta[i] = 0.5 * (rates.gamma + gains[i]);

  for (int j = 0; j < 3; ++j) {
    for (int i = j + 1; i < 3; ++i) {
      ConditionEntry e;
      e.name = "frequency_separation_" + std::to_string(j + 1) + std::to_string(i + 1);
      e.margin = std::abs(rates.omega[j] - rates.omega[i]) / (delta[j] + delta[i]);
      e.threshold = threshold;
      e.passed = pass(e.margin);
      ledger.entries.push_back(e);
    }
  }
  for (int j = 0; j < 3; ++j) {
    ConditionEntry e;
    e.name = "sideband_separation_" + std::to_string(j + 1);
    e.margin = std::abs(2.0 * rates.omega[j] - rates.omega[2]) / (2.0 * delta[j] + delta[2]);
    e.threshold = threshold;
    e.exempt = hybrid && (j + 1 == coulomb_axis);
    e.passed = pass(e.margin);
    ledger.entries.push_back(e);
  }
  {
    ConditionEntry e;
    e.name = "damping_above_critical";
    e.margin = rates.gamma / rates.gamma_cr;
    e.threshold = threshold;
    e.passed = pass(e.margin);
    ledger.entries.push_back(e);
  }
  std::optional<int> k;
  if (hybrid) k = coulomb_axis;
  const std::array<double, 3> critical = critical_feedback_rates(rates, nf, mass, k);
  for (int i = 0; i < 3; ++i) {
    ConditionEntry e;
    e.name = "gain_below_critical_" + std::to_string(i + 1);
    e.threshold = threshold;
    e.exempt = hybrid && (i + 1 == coulomb_axis);
    if (gains[i] <= 0.0 || !std::isfinite(critical[i]))
      e.margin = kInf;
    else
      e.margin = std::pow(critical[i] / gains[i], 3);
    e.passed = pass(e.margin);
    ledger.entries.push_back(e);
  }
  return ledger;
}

FeedbackRates feedback_rates_at(const RateSet& rates, const NoiseFloor& nf,
                                const OpticalCoefficients& coeffs, double mass,
                                FeedbackScheme scheme, int coulomb_axis, bool filtered,
                                const std::array<double, 3>& gains,
                                const std::array<double, 3>& occupation) {
  FeedbackRates out;
  out.gains = gains;
  for (int i = 0; i < 3; ++i)
    out.variance[i] =
        (2.0 * occupation[i] + 1.0) * phys::hbar / (2.0 * mass * rates.omega[i]);

  const bool hybrid = scheme == FeedbackScheme::hybrid;
  const int k = hybrid ? coulomb_axis : 0;

  if (filtered) {
    for (int i = 0; i < 3; ++i) {
      if (hybrid && i + 1 == k) continue;  // no gradient feed-through on the Coulomb axis
      out.gamma_g_fb[i] = gains[i] * gains[i] * nf.s_n[i] / (4.0 * out.variance[i]);
    }
    // filtering localizes the fed-back noise around the resonances, which
    // removes the pressure cross-term entirely
  } else {
    // Unfiltered: every parametric channel j feeds gradient noise into
    // every axis with weight (A_i/A_j)^2 and pressure noise into the
    // axial mode with weight (B/A_j)^2.
    for (int i = 0; i < 3; ++i) {
      double acc = 0.0;
      for (int j = 0; j < 3; ++j) {
        if (hybrid && j + 1 == k) continue;
        const double a_ji = coeffs.stiffness_per_watt[i] / coeffs.stiffness_per_watt[j];
        acc += a_ji * a_ji * gains[j] * gains[j] * nf.s_n[j] / (4.0 * out.variance[j]);
      }
      out.gamma_g_fb[i] = acc;
    }
    double acc = 0.0;
    for (int j = 0; j < 3; ++j) {
      if (hybrid && j + 1 == k) continue;
      const double b_j = coeffs.pressure_per_watt / coeffs.stiffness_per_watt[j];
      acc += b_j * b_j * gains[j] * gains[j] * nf.s_n[j] / out.variance[j];
    }
    out.gamma_r_fb[2] += mass * rates.omega[2] * acc / (2.0 * phys::hbar);
  }
  if (hybrid) {
    // Coulomb-force measurement noise is additive (no x^2 modulation).
    out.gamma_r_fb[k - 1] += mass * rates.omega[k - 1] * gains[k - 1] * gains[k - 1] *
                             nf.s_n[k - 1] / (2.0 * phys::hbar);
  }
  return out;
}

namespace {

// One evaluation of the self-consistency map: occupations -> fed-back
// noise rates -> occupations.
std::array<double, 3> evaluate_map(const RateSet& rates, const NoiseFloor& nf,
                                   const OpticalCoefficients& coeffs, double mass,
                                   FeedbackScheme scheme, int coulomb_axis, bool filtered,
                                   const std::array<double, 3>& gains,
                                   const std::array<double, 3>& occupation,
                                   FeedbackRates* out_rates) {
  const FeedbackRates fb = feedback_rates_at(rates, nf, coeffs, mass, scheme,
                                             coulomb_axis, filtered, gains, occupation);
  std::array<double, 3> next{};
  for (int i = 0; i < 3; ++i) {
    const double numerator =
        (rates.m_thermal[i] * rates.gamma + rates.gamma_r[i] + 4.0 * rates.gamma_g[i]) +
        (fb.gamma_r_fb[i] + 4.0 * fb.gamma_g_fb[i]);
    const double denominator =
        ((rates.gamma + gains[i]) - 8.0 * rates.gamma_g[i]) - 8.0 * fb.gamma_g_fb[i];
    if (!(denominator > 0.0))
      throw InstabilityError(
          "feedback-driven instability: gain above critical on axis " +
              std::to_string(i + 1),
          denominator / rates.gamma, i + 1);
    next[i] = numerator / denominator;
  }
  if (out_rates) *out_rates = fb;
  return next;
}

}  // namespace

FeedbackReport occupations_with_feedback(const RateSet& rates, const NoiseFloor& nf,
                                         const OpticalCoefficients& coeffs, double mass,
                                         const FeedbackPlan& plan,
                                         const SolverSettings& settings,
                                         const std::array<double, 3>* initial_guess) {
  if (plan.scheme == FeedbackScheme::none)
    throw ValidationError("occupations_with_feedback requires an active scheme");
  const bool hybrid = plan.scheme == FeedbackScheme::hybrid;
  if (hybrid && (plan.coulomb_axis < 1 || plan.coulomb_axis > 3))
    throw ValidationError("hybrid scheme requires coulomb_axis in {1,2,3}");

  FeedbackReport report;
  report.scheme = plan.scheme;
  report.coulomb_axis = hybrid ? plan.coulomb_axis : 0;
  report.filtered = nf.filtered;

  const std::array<double, 3> gains = resolve_gains(rates, nf, mass, plan);
  std::optional<int> k;
  if (hybrid) k = plan.coulomb_axis;
  report.gain_critical = critical_feedback_rates(rates, nf, mass, k);
  if (hybrid) {
    const CoulombOptimum opt = optimum_coulomb_gain(rates, nf, mass, plan.coulomb_axis);
    report.gain_optimum = opt.gain;
    report.occupation_minimum = opt.occupation;
  }
  report.conditions =
      condition_ledger(rates, nf, mass, gains, plan.scheme, plan.coulomb_axis);

  // Seed with the simplified closed form at zero fed-back noise.
  std::array<double, 3> occupation{};
  for (int i = 0; i < 3; ++i)
    occupation[i] =
        (rates.m_thermal[i] * rates.gamma + rates.gamma_r[i]) / (rates.gamma + gains[i]);
  if (initial_guess) occupation = *initial_guess;

  const bool all_zero = gains[0] == 0.0 && gains[1] == 0.0 && gains[2] == 0.0;
  if (all_zero) {
    // The map no longer depends on the occupations; one evaluation is the
    // exact fixed point and reproduces the no-feedback closed form bit for
    // bit.
    report.occupation = evaluate_map(rates, nf, coeffs, mass, plan.scheme,
                                     plan.coulomb_axis, nf.filtered, gains, occupation,
                                     &report.rates_at_convergence);
    report.iterations = 1;
    report.residual = 0.0;
    return report;
  }

  double residual = kInf;
  int it = 0;
  std::ostringstream history;
  for (; it < settings.max_iterations; ++it) {
    const std::array<double, 3> next = evaluate_map(
        rates, nf, coeffs, mass, plan.scheme, plan.coulomb_axis, nf.filtered, gains,
        occupation, nullptr);
    residual = 0.0;
    for (int i = 0; i < 3; ++i)
      residual = std::max(residual,
                          std::abs(next[i] - occupation[i]) / std::max(next[i], 1e-300));
    for (int i = 0; i < 3; ++i)
      occupation[i] = (1.0 - settings.damping) * occupation[i] + settings.damping * next[i];
    if (it < 16 || it % 100 == 0) history << " " << residual;
    if (residual < settings.tolerance) break;
  }
  if (residual >= settings.tolerance)
    throw ConvergenceError("feedback fixed point did not converge; residual history:" +
                           history.str());

  // Converged: evaluate once more to freeze the rates at the fixed point.
  report.occupation = evaluate_map(rates, nf, coeffs, mass, plan.scheme, plan.coulomb_axis,
                                   nf.filtered, gains, occupation,
                                   &report.rates_at_convergence);
  report.iterations = it + 1;
  report.residual = residual;
  for (int i = 0; i < 3; ++i)
    if (!(report.occupation[i] > 0.0))
      throw Error("feedback solve produced a nonpositive occupation");
  return report;
}

ScalingStudy scaling_study(const Scenario& scenario, int axis, SweepParameter parameter,
                           const std::vector<double>& grid, PressurePolicy policy,
                           double critical_multiple) {
  if (!scenario.detection)
    throw ValidationError("scaling study requires a detection section");
  ScalingStudy study;
  for (double value : grid) {
    Scenario s = scenario;
    switch (parameter) {
      case SweepParameter::mean_power:
        s.beam.mean_power = value;
        break;
      case SweepParameter::radius:
        s.particle.radius = value;
        break;
      case SweepParameter::numerical_aperture:
        s.beam.numerical_aperture = value;
        break;
    }
    const OpticalCoefficients coeffs = compute_coefficients(s.particle, s.beam);
    ThermalState thermal = thermal_state(s.particle, s.gas, coeffs.absorbed_power);
    RateSet rates = shot_noise_rates(coeffs, s.particle, s.beam, thermal);
    if (policy == PressurePolicy::pinned_multiple_of_critical) {
      const double p_cr =
          critical_pressure(s.particle, s.gas, coeffs.absorbed_power, rates.gamma_cr);
      s.gas.ambient_pressure = critical_multiple * p_cr;
      thermal = thermal_state(s.particle, s.gas, coeffs.absorbed_power);
      rates = shot_noise_rates(coeffs, s.particle, s.beam, thermal);
    }
    ScalingPoint point;
    point.parameter = value;
    point.melting = thermal.melting;
    if (!point.melting) {
      const NoiseFloor nf = noise_floors(s.particle, s.beam, *s.detection);
      point.occupation_minimum =
          optimum_coulomb_gain(rates, nf, s.particle.mass(), axis).occupation;
    }
    study.points.push_back(point);
  }

  bool decreasing = true, increasing = true;
  const ScalingPoint* prev = nullptr;
  for (const auto& p : study.points) {
    if (p.melting) continue;
    if (prev) {
      if (!(p.occupation_minimum < prev->occupation_minimum)) decreasing = false;
      if (!(p.occupation_minimum > prev->occupation_minimum)) increasing = false;
    }
    prev = &p;
  }
  study.strictly_decreasing = decreasing;
  study.strictly_increasing = increasing;
  return study;
}

}  // namespace levitrap
