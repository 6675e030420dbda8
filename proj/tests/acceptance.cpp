// Acceptance suite: every gate criterion evaluated with its tolerance and
// runtime budget, one verdict line each. Exit code = number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "constants.hpp"
#include "detection.hpp"
#include "feedback.hpp"
#include "fixtures.hpp"
#include "master_equation.hpp"
#include "optics.hpp"
#include "oracle_suite.hpp"
#include "photon_oracle.hpp"
#include "psd.hpp"
#include "rates.hpp"
#include "regression.hpp"
#include "report.hpp"
#include "rng.hpp"
#include "ssa.hpp"
#include "thermal.hpp"

using namespace levitrap;

namespace {

int failures = 0;

void verdict(const std::string& name, bool pass, const std::string& detail = "") {
  std::printf("%-4s %s%s%s\n", pass ? "PASS" : "FAIL", name.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  if (!pass) ++failures;
}

bool within(double value, double reference, double rel_tol) {
  return std::abs(value - reference) <= rel_tol * std::abs(reference);
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

struct Stack {
  Scenario scenario;
  OpticalCoefficients coeffs;
  ThermalState thermal;
  RateSet rates;
  NoiseFloor noise;
  double mass;
};

Stack prepare(const std::string& name) {
  Stack st;
  st.scenario = builtin_scenario(name);
  st.coeffs = compute_coefficients(st.scenario.particle, st.scenario.beam);
  st.thermal = thermal_state(st.scenario.particle, st.scenario.gas, st.coeffs.absorbed_power);
  st.rates = shot_noise_rates(st.coeffs, st.scenario.particle, st.scenario.beam, st.thermal);
  st.noise = noise_floors(st.scenario.particle, st.scenario.beam, *st.scenario.detection);
  st.mass = st.scenario.particle.mass();
  return st;
}

void criterion_1_trap_frequencies() {
  const Scenario s = builtin_scenario("70nm");
  const auto t0 = std::chrono::steady_clock::now();
  const OpticalCoefficients c = compute_coefficients(s.particle, s.beam);
  const auto omega = trap_frequencies(c, s.particle, s.beam);
  const double elapsed = ms_since(t0);
  const bool pass = within(omega[0], phys::two_pi * 367e3, 0.10) &&
                    within(omega[2], phys::two_pi * 208e3, 0.10) &&
                    within(omega[2] / omega[0], 0.8 / std::sqrt(2.0), 0.005) &&
                    elapsed < 1.0;
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "omega_1=2pi x %.1f kHz, omega_3=2pi x %.1f kHz, ratio %.4f, %.3f ms",
                omega[0] / phys::two_pi / 1e3, omega[2] / phys::two_pi / 1e3,
                omega[2] / omega[0], elapsed);
  verdict("1: trap frequencies within 10%, ratio NA/sqrt(2) within 0.5%, <1 ms", pass,
          detail);
}

void criterion_2_critical_rate() {
  const Stack st = prepare("70nm");
  const auto t0 = std::chrono::steady_clock::now();
  const RateSet rates = shot_noise_rates(st.coeffs, st.scenario.particle,
                                         st.scenario.beam, st.thermal);
  const double elapsed = ms_since(t0);

  Scenario bright = st.scenario;
  bright.beam.mean_power *= 2.0;
  const RateSet rates_bright =
      shot_noise_rates(compute_coefficients(bright.particle, bright.beam), bright.particle,
                       bright.beam, st.thermal);
  const Stack large = prepare("180nm");

  const bool pass = within(rates.gamma_cr, phys::two_pi * 791e-9, 0.15) &&
                    std::abs(rates_bright.gamma_cr / rates.gamma_cr - 1.0) < 1e-10 &&
                    std::abs(large.rates.gamma_cr / rates.gamma_cr - 1.0) < 1e-10 &&
                    elapsed < 1.0;
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "gamma_cr=2pi x %.1f nHz, power dev %.1e, radius dev %.1e, %.3f ms",
                rates.gamma_cr / phys::two_pi * 1e9,
                rates_bright.gamma_cr / rates.gamma_cr - 1.0,
                large.rates.gamma_cr / rates.gamma_cr - 1.0, elapsed);
  verdict("2: critical damping rate within 15%, invariant to power/radius at 1e-10", pass,
          detail);
}

void criterion_3_critical_pressure() {
  const Stack small = prepare("70nm");
  const auto t0 = std::chrono::steady_clock::now();
  const double p70 = critical_pressure(small.scenario.particle, small.scenario.gas,
                                       small.coeffs.absorbed_power, small.rates.gamma_cr);
  const double elapsed = ms_since(t0);
  const Stack large = prepare("180nm");
  const double p180 = critical_pressure(large.scenario.particle, large.scenario.gas,
                                        large.coeffs.absorbed_power, large.rates.gamma_cr);
  const bool pass =
      within(p70, 7e-8, 0.25) && within(p180, 2e-7, 0.25) && elapsed < 10.0;
  char detail[160];
  std::snprintf(detail, sizeof(detail), "%.3g / %.3g mbar, %.2f ms", p70 / 100.0,
                p180 / 100.0, elapsed);
  verdict("3: critical ambient pressures within 25%, <10 ms", pass, detail);
}

void criterion_4_temperatures() {
  const auto t0 = std::chrono::steady_clock::now();
  const Stack small = prepare("70nm");
  const Stack large = prepare("180nm");
  const double elapsed = ms_since(t0);
  const bool pass = within(small.thermal.surface_temperature, 1467.0, 0.02) &&
                    within(small.thermal.effective_temperature, 697.0, 0.05) &&
                    within(large.thermal.surface_temperature, 1857.0, 0.02) &&
                    within(large.thermal.effective_temperature, 866.0, 0.05) &&
                    elapsed < 20.0;
  char detail[160];
  std::snprintf(detail, sizeof(detail), "T_s=%.0f/%.0f K, T=%.0f/%.0f K, %.2f ms",
                small.thermal.surface_temperature, large.thermal.surface_temperature,
                small.thermal.effective_temperature, large.thermal.effective_temperature,
                elapsed);
  verdict("4: surface temperatures within 2%, bath temperatures within 5%", pass, detail);
}

void tier_2_feedback_figures() {
  const RegressionResult r = run_regression("all");
  bool quantities = true, qualitative = true;
  for (const auto& row : r.rows) {
    if (row.tier != 2) continue;
    if (row.unit == "bool") {
      qualitative = qualitative && row.passed;
    } else {
      quantities = quantities && row.passed;
    }
  }
  const bool decomposed = r.decomposition.size() == 8;
  verdict("T2a: feedback figures within a factor of 20 of the reference values",
          quantities);
  verdict("T2b: qualitative ordering (axial channel coldest, hybrid k=3 < 100) exact",
          qualitative);
  std::string detail;
  for (const auto& d : r.decomposition) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%s/%s/k%d: H=%.2g S=%.2g; ", d.case_id.c_str(),
                  d.scheme.c_str(), d.axis, d.heating_factor, d.noise_factor);
    detail += buf;
  }
  verdict("T2c: per-quantity gap decomposition (heating, noise-floor) emitted",
          decomposed, detail);
}

// The two-quantum channel fattens the stationary tail near criticality;
// grow the truncation until the mean stabilizes before comparing.
double converged_master_mean(const LadderRates& lr) {
  std::int64_t n = suggested_truncation(lr);
  double previous = -1.0;
  while (n <= 2'000'000) {
    try {
      const auto ss = master_equation_steady_state(lr, n);
      if (previous > 0.0 && std::abs(ss.mean - previous) <= 1e-8 * ss.mean)
        return ss.mean;
      previous = ss.mean;
    } catch (const ConvergenceError&) {
      previous = -1.0;
    }
    n *= 2;
  }
  return previous;
}

void criterion_5_nullspace_property() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(515, "acceptance-eq2");
  bool pass = true;
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    LadderRates lr;
    const double m_th = rng.uniform(0.0, 50.0);
    const double gamma_r = rng.uniform(0.0, 20.0);
    const double gamma_g = rng.uniform(0.0, 0.1);
    lr.up1 = m_th + gamma_r;
    lr.down1 = m_th + 1.0 + gamma_r;
    lr.up2 = lr.down2 = gamma_g;
    const double closed = ladder_occupation(lr);
    const double mean = converged_master_mean(lr);
    const double rel = std::abs(mean - closed) / closed;
    worst = std::max(worst, rel);
    pass = pass && rel <= 1e-6;
  }
  const double elapsed = ms_since(t0);
  pass = pass && elapsed < 30e3;
  char detail[120];
  std::snprintf(detail, sizeof(detail), "worst relative deviation %.2e over 100 sets, %.1f s",
                worst, elapsed / 1e3);
  verdict("5: closed form == truncated master-equation mean to 1e-6 on 100 rate sets",
          pass, detail);
}

void criterion_6_ssa() {
  const OracleRunResult run = run_ladder_oracle(515, 10);
  bool sigma_pass = true, divergence = false;
  for (const auto& c : run.checks) {
    if (c.name == "ssa_supercritical_divergence")
      divergence = c.passed;
    else
      sigma_pass = sigma_pass && c.passed;
  }
  verdict("6: ssa trajectory mean within 3 sigma of the closed form on 10 rate sets",
          sigma_pass);
  verdict("6b: supercritical two-quantum pumping (gamma_g/gamma > 1/8) diverges",
          divergence);
}

void criterion_7_photon_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  const OracleRunResult run = run_psd_oracle(builtin_scenario("70nm"), 515, 0.0);
  const double elapsed = ms_since(t0);
  bool pass = run.all_pass && run.events >= 1'000'000 && elapsed < 120e3;
  std::string failed;
  for (const auto& c : run.checks)
    if (!c.passed) failed += c.name + " ";
  char detail[160];
  std::snprintf(detail, sizeof(detail), "%llu events, %.1f s%s%s",
                static_cast<unsigned long long>(run.events), elapsed / 1e3,
                failed.empty() ? "" : ", failed: ", failed.c_str());
  verdict("7: photon Monte Carlo matches mean/floors within 5% at 3 sigma, <2 min", pass,
          detail);
}

void criterion_8_field_gradient() {
  const Scenario s = builtin_scenario("70nm");
  const Polarizability pol = compute_polarizability(s.particle, s.beam);
  const OpticalCoefficients c = compute_coefficients(s.particle, s.beam);
  const double e0_sq = 4.0 * phys::vacuum_impedance * s.beam.mean_power /
                       (phys::pi * s.beam.waist_radius() * s.beam.waist_radius());
  const double x = 3e-9, y = 2e-9, z = 4e-9;
  auto intensity = [&](double px, double py, double pz) {
    return std::norm(incident_field(s.beam, px, py, pz));
  };
  const double h = 1e-10;
  const double g1 = 0.25 * pol.alpha_r * e0_sq *
                    (intensity(x + h, y, z) - intensity(x - h, y, z)) / (2.0 * h);
  const double g2 = 0.25 * pol.alpha_r * e0_sq *
                    (intensity(x, y + h, z) - intensity(x, y - h, z)) / (2.0 * h);
  const double g3 = 0.25 * pol.alpha_r * e0_sq *
                    (intensity(x, y, z + h) - intensity(x, y, z - h)) / (2.0 * h);
  const bool pass =
      within(-g1 / (s.beam.mean_power * x), c.stiffness_per_watt[0], 0.01) &&
      within(-g2 / (s.beam.mean_power * y), c.stiffness_per_watt[1], 0.01) &&
      within(-g3 / (s.beam.mean_power * z), c.stiffness_per_watt[2], 0.01);
  verdict("8: finite-difference beam-intensity gradient reproduces A_i to 1%", pass);
}

void criterion_9_scaling_laws() {
  const Scenario s = builtin_scenario("70nm");
  bool pass = true;
  std::string detail;

  {  // S_n ~ 1/P and 1/R^6
    Scenario bright = s;
    bright.beam.mean_power *= 2.0;
    Scenario big = s;
    big.particle.radius *= 2.0;
    const NoiseFloor base = noise_floors(s.particle, s.beam, *s.detection);
    const NoiseFloor half = noise_floors(bright.particle, bright.beam, *bright.detection);
    const NoiseFloor r6 = noise_floors(big.particle, big.beam, *big.detection);
    for (int i = 0; i < 3; ++i) {
      pass = pass && within(half.s_n[i], 0.5 * base.s_n[i], 1e-9);
      pass = pass && within(r6.s_n[i], base.s_n[i] / 64.0, 1e-9);
    }
    if (!pass) detail += "noise-floor power/radius scaling ";
  }
  {  // S_n3 ~ Z, S_n1 ~ Z^2 at pinned bounds
    std::array<double, 3> zs{10 * s.beam.wavelength, 30 * s.beam.wavelength,
                             90 * s.beam.wavelength};
    std::array<double, 3> sn1{}, sn3{};
    for (int i = 0; i < 3; ++i) {
      Scenario v = s;
      v.detection->effective_distance = zs[i];
      const NoiseFloor nf = noise_floors(v.particle, v.beam, *v.detection);
      sn1[i] = nf.s_n[0];
      sn3[i] = nf.s_n[2];
    }
    const bool linear = within(sn3[1] / sn3[0], 3.0, 1e-6) &&
                        within(sn3[2] / sn3[1], 3.0, 1e-6);
    const bool quadratic = within(sn1[1] / sn1[0], 9.0, 1e-6) &&
                           within(sn1[2] / sn1[1], 9.0, 1e-6);
    if (!(linear && quadratic)) detail += "Z scaling ";
    pass = pass && linear && quadratic;
  }
  {  // hybrid axial minimum strictly decreasing in power, radius, NA
    const bool power = scaling_study(s, 3, SweepParameter::mean_power, {0.05, 0.1, 0.2})
                           .strictly_decreasing;
    const bool radius = scaling_study(s, 3, SweepParameter::radius, {70e-9, 120e-9, 180e-9})
                            .strictly_decreasing;
    const bool na = scaling_study(s, 3, SweepParameter::numerical_aperture, {0.7, 0.8, 0.9})
                        .strictly_decreasing;
    if (!(power && radius && na)) detail += "m_min decrease ";
    pass = pass && power && radius && na;
  }
  {  // transverse minimum increases with NA when the damping margin is pinned
    const bool na_up =
        scaling_study(s, 1, SweepParameter::numerical_aperture, {0.7, 0.8, 0.9},
                      PressurePolicy::pinned_multiple_of_critical, 10.0)
            .strictly_increasing;
    if (!na_up) detail += "m_min_1 NA increase ";
    pass = pass && na_up;
  }
  verdict("9: scaling laws (noise floors, Z exponents, minimum-occupation monotonicity)",
          pass, detail);
}

void criterion_10_zero_gain_and_residuals() {
  bool exact = true, residuals = true;
  for (const char* name : {"70nm", "180nm"}) {
    const Stack st = prepare(name);
    FeedbackPlan plan;
    plan.scheme = FeedbackScheme::parametric;
    for (auto& g : plan.gains) g = GainRule::explicit_gain(0.0);
    const FeedbackReport rep = occupations_with_feedback(
        st.rates, st.noise, st.coeffs, st.mass, plan, st.scenario.solver);
    const auto direct = steady_state_occupation(st.rates);
    for (int i = 0; i < 3; ++i) exact = exact && rep.occupation[i] == direct[i];
  }
  for (const char* name :
       {"70nm-parametric", "180nm-parametric", "70nm-hybrid-k1", "70nm-hybrid-k3",
        "180nm-hybrid-k1", "180nm-hybrid-k3"}) {
    const PipelineResult r = run_pipeline(builtin_scenario(name));
    residuals = residuals && r.feedback && r.feedback->residual < 1e-10;
  }
  verdict("10a: zero-gain feedback path equals the no-feedback path bit for bit", exact);
  verdict("10b: fixed-point residual < 1e-10 at convergence on all reference scenarios",
          residuals);
}

void criterion_11_optimum_identities() {
  bool identity = true, located = true;
  for (const char* name : {"70nm", "180nm"}) {
    const Stack st = prepare(name);
    for (int k = 1; k <= 3; ++k) {
      const CoulombOptimum opt = optimum_coulomb_gain(st.rates, st.noise, st.mass, k);
      const double heating =
          st.rates.m_thermal[k - 1] * st.rates.gamma + st.rates.gamma_r[k - 1];
      identity = identity &&
                 std::abs(opt.occupation * opt.gain - 2.0 * heating) <=
                     1e-10 * 2.0 * heating;
      located = located && std::abs(opt.sweep_gain_at_min - opt.gain) <= 1e-3 * opt.gain;
    }
  }
  verdict("11a: product identity m_min * gain_opt = 2(m_th*gamma + gamma_r) to 1e-10",
          identity);
  verdict("11b: swept minimum located at the closed-form optimum within 0.1%", located);
}

}  // namespace

int main() {
  std::printf("acceptance suite (tool version %s)\n", tool_version());
  criterion_1_trap_frequencies();
  criterion_2_critical_rate();
  criterion_3_critical_pressure();
  criterion_4_temperatures();
  tier_2_feedback_figures();
  criterion_5_nullspace_property();
  criterion_6_ssa();
  criterion_7_photon_oracle();
  criterion_8_field_gradient();
  criterion_9_scaling_laws();
  criterion_10_zero_gain_and_residuals();
  criterion_11_optimum_identities();
  std::printf("%s (%d failure%s)\n", failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES",
              failures, failures == 1 ? "" : "s");
  return failures;
}
