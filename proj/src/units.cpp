#include "units.hpp"

#include <optional>
#include <string>

#include "constants.hpp"
#include "errors.hpp"

namespace levitrap::units {

namespace {

// Multiplicative factor unit -> SI. Conversions are exact definitions
// (1 mbar = 100 Pa, 1 Hz = 2*pi rad/s), so to_si/from_si round-trip to
// machine precision.
std::optional<double> factor(std::string_view unit) {
  if (unit == "nm") return 1e-9;
  if (unit == "µm" || unit == "um") return 1e-6;
  if (unit == "mW") return 1e-3;
  if (unit == "W") return 1.0;
  if (unit == "mbar") return 100.0;
  if (unit == "Pa") return 1.0;
  if (unit == "K") return 1.0;
  if (unit == "Hz") return phys::two_pi;
  if (unit == "rad/s") return 1.0;
  return std::nullopt;
}

}  // namespace

double to_si(double value, std::string_view unit) {
  auto f = factor(unit);
  if (!f) throw ParseError("unknown unit '" + std::string(unit) + "'");
  return value * *f;
}

double from_si(double value, std::string_view unit) {
  auto f = factor(unit);
  if (!f) throw ParseError("unknown unit '" + std::string(unit) + "'");
  return value / *f;
}

bool is_known_unit(std::string_view unit) { return factor(unit).has_value(); }

}  // namespace levitrap::units
