#pragma once

#include "scenario.hpp"

namespace levitrap {

// Heat-balance and free-molecular (Epstein) damping state at one ambient
// pressure. Rates in 1/s.
struct ThermalState {
  double surface_temperature = 0.0;   // T_s, K
  double emerging_temperature = 0.0;  // T_em, K
  double effective_temperature = 0.0; // T (bath mix), K
  double gamma_impinging = 0.0;       // damping from impinging molecules
  double gamma_emerging = 0.0;        // damping from emerging molecules
  double gamma = 0.0;                 // total intrinsic damping
  double v_impinging = 0.0;           // mean molecular speed at T_am, m/s
  double v_emerging = 0.0;            // mean molecular speed at T_em, m/s
  double conduction_power = 0.0;      // W, at the solved T_s
  double radiation_power = 0.0;       // W
  bool melting = false;               // T_s reached the melting point
};

// Unique root of absorbed power = gas conduction + thermal radiation,
// bracketed in [T_am, 1e4 K]. Throws Error("particle overheats") when no
// root exists below 1e4 K.
double solve_surface_temperature(const ParticleSpec& p, const GasSpec& g,
                                 double absorbed_power);

struct EpsteinDamping {
  double gamma_impinging = 0.0;
  double gamma_emerging = 0.0;
  double gamma = 0.0;
  double v_impinging = 0.0;
  double v_emerging = 0.0;
  double emerging_temperature = 0.0;
};

EpsteinDamping epstein_damping(const ParticleSpec& p, const GasSpec& g,
                               double surface_temperature);

double effective_temperature(double gamma_impinging, double gamma_emerging,
                             double ambient_temperature, double emerging_temperature);

// Full thermal state at the gas spec's own pressure.
ThermalState thermal_state(const ParticleSpec& p, const GasSpec& g, double absorbed_power);

// Pressure at which the total damping reaches gamma_target, solved by
// fixed-point over the coupled (T_s, gamma) dependence to 1e-8 relative.
double critical_pressure(const ParticleSpec& p, const GasSpec& gas_template,
                         double absorbed_power, double gamma_target);

}  // namespace levitrap
