#pragma once

#include <string_view>

namespace levitrap::units {

// Converts value in `unit` to SI. Length -> m, power -> W, pressure -> Pa,
// temperature -> K, rate -> rad/s. "Hz" is a rate unit here: a value f in Hz
// means the rate 2*pi*f rad/s, matching the usual "2 pi x f Hz" notation.
double to_si(double value, std::string_view unit);

// Inverse of to_si.
double from_si(double value, std::string_view unit);

bool is_known_unit(std::string_view unit);

}  // namespace levitrap::units
