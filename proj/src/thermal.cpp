#include "thermal.hpp"

#include <cmath>

#include "constants.hpp"
#include "errors.hpp"

namespace levitrap {

namespace {

double mean_speed(double temperature, double molecule_mass) {
  return std::sqrt(8.0 * phys::boltzmann * temperature / (phys::pi * molecule_mass));
}

// Conduction + radiation emitted at surface temperature t.
double heat_loss(const ParticleSpec& p, const GasSpec& g, double t) {
  const double area = 4.0 * phys::pi * p.radius * p.radius;
  const double v_im = mean_speed(g.ambient_temperature, g.molecule_mass);
  const double conduction = (g.heat_capacity_ratio + 1.0) * g.ambient_pressure * v_im /
                            (8.0 * (g.heat_capacity_ratio - 1.0) * g.ambient_temperature) *
                            g.accommodation * area * (t - g.ambient_temperature);
  const double t4 = t * t * t * t;
  const double ta4 = std::pow(g.ambient_temperature, 4);
  const double radiation = p.emissivity * phys::stefan_boltzmann * area * (t4 - ta4);
  return conduction + radiation;
}

}  // namespace

double solve_surface_temperature(const ParticleSpec& p, const GasSpec& g,
                                 double absorbed_power) {
  if (absorbed_power < 0.0)
    throw ValidationError("absorbed power must be nonnegative");
  if (absorbed_power == 0.0) return g.ambient_temperature;

  const double t_max = 1.0e4;
  if (heat_loss(p, g, t_max) < absorbed_power)
    throw Error("particle overheats: no heat-balance root below 10^4 K");

  // heat_loss is strictly increasing in t, so bisection is safe; Newton
  // steps inside the bracket speed up the tail.
  double lo = g.ambient_temperature, hi = t_max;
  double t = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double f = heat_loss(p, g, t) - absorbed_power;
    if (f > 0.0)
      hi = t;
    else
      lo = t;
    // derivative of the loss (conduction slope + radiation slope)
    const double area = 4.0 * phys::pi * p.radius * p.radius;
    const double v_im = mean_speed(g.ambient_temperature, g.molecule_mass);
    const double dcond = (g.heat_capacity_ratio + 1.0) * g.ambient_pressure * v_im /
                         (8.0 * (g.heat_capacity_ratio - 1.0) * g.ambient_temperature) *
                         g.accommodation * area;
    const double drad = 4.0 * p.emissivity * phys::stefan_boltzmann * area * t * t * t;
    double next = t - f / (dcond + drad);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - t) <= 1e-10 * t) {
      t = next;
      break;
    }
    t = next;
  }
  return t;
}

EpsteinDamping epstein_damping(const ParticleSpec& p, const GasSpec& g,
                               double surface_temperature) {
  EpsteinDamping d;
  d.emerging_temperature =
      g.ambient_temperature + g.accommodation * (surface_temperature - g.ambient_temperature);
  d.v_impinging = mean_speed(g.ambient_temperature, g.molecule_mass);
  d.v_emerging = mean_speed(d.emerging_temperature, g.molecule_mass);
  const double gas_density =
      g.molecule_mass * g.ambient_pressure / (phys::boltzmann * g.ambient_temperature);
  const double area = 4.0 * phys::pi * p.radius * p.radius;
  const double mass = p.mass();
  d.gamma_impinging = gas_density * d.v_impinging * area / (3.0 * mass);
  d.gamma_emerging = phys::pi * gas_density * d.v_emerging * area / (24.0 * mass);
  d.gamma = d.gamma_impinging + d.gamma_emerging;
  return d;
}

double effective_temperature(double gamma_impinging, double gamma_emerging,
                             double ambient_temperature, double emerging_temperature) {
  const double gamma = gamma_impinging + gamma_emerging;
  if (gamma <= 0.0)
    throw ValidationError("effective temperature requires a positive total damping");
  return (gamma_impinging * ambient_temperature + gamma_emerging * emerging_temperature) /
         gamma;
}

ThermalState thermal_state(const ParticleSpec& p, const GasSpec& g, double absorbed_power) {
  ThermalState st;
  st.surface_temperature = solve_surface_temperature(p, g, absorbed_power);
  st.melting = st.surface_temperature >= p.melting_point;
  const EpsteinDamping d = epstein_damping(p, g, st.surface_temperature);
  st.emerging_temperature = d.emerging_temperature;
  st.gamma_impinging = d.gamma_impinging;
  st.gamma_emerging = d.gamma_emerging;
  st.gamma = d.gamma;
  st.v_impinging = d.v_impinging;
  st.v_emerging = d.v_emerging;
  if (st.gamma > 0.0)
    st.effective_temperature = effective_temperature(
        d.gamma_impinging, d.gamma_emerging, g.ambient_temperature, d.emerging_temperature);
  else
    st.effective_temperature = g.ambient_temperature;

  const double area = 4.0 * phys::pi * p.radius * p.radius;
  st.conduction_power = (g.heat_capacity_ratio + 1.0) * g.ambient_pressure * d.v_impinging /
                        (8.0 * (g.heat_capacity_ratio - 1.0) * g.ambient_temperature) *
                        g.accommodation * area *
                        (st.surface_temperature - g.ambient_temperature);
  st.radiation_power = p.emissivity * phys::stefan_boltzmann * area *
                       (std::pow(st.surface_temperature, 4) -
                        std::pow(g.ambient_temperature, 4));
  return st;
}

double critical_pressure(const ParticleSpec& p, const GasSpec& gas_template,
                         double absorbed_power, double gamma_target) {
  if (gamma_target <= 0.0)
    throw ValidationError("critical pressure requires a positive damping target");

  GasSpec g = gas_template;
  // Damping is near-linear in pressure (T_s couples back only through
  // conduction), so the proportional update converges in a few rounds.
  double pressure = 1e-6;
  for (int it = 0; it < 200; ++it) {
    g.ambient_pressure = pressure;
    const ThermalState st = thermal_state(p, g, absorbed_power);
    if (st.gamma <= 0.0) throw Error("critical pressure: damping vanished during the solve");
    const double next = pressure * gamma_target / st.gamma;
    const bool done = std::abs(next - pressure) <= 1e-8 * pressure;
    pressure = next;
    if (done) break;
  }
  return pressure;
}

}  // namespace levitrap
