#pragma once

// CODATA 2018 SI values. Everything downstream is strict SI; rates are
// kept in rad/s (equivalently 1/s) internally.
namespace levitrap::phys {

inline constexpr double hbar = 1.054571817e-34;           // J s
inline constexpr double boltzmann = 1.380649e-23;         // J/K
inline constexpr double light_speed = 2.99792458e8;       // m/s
inline constexpr double vacuum_permittivity = 8.8541878128e-12;  // F/m
inline constexpr double vacuum_impedance = 376.730313668;        // ohm
inline constexpr double stefan_boltzmann = 5.670374419e-8;       // W m^-2 K^-4
inline constexpr double elementary_charge = 1.602176634e-19;     // C
inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

}  // namespace levitrap::phys
