#pragma once

#include <numbers>

// Unit conventions used throughout:
//   - times in microseconds
//   - angular frequencies in rad/us
//   - config files and CSV columns carry linear frequencies in MHz
// The 2*pi conversion happens in exactly one place: the two helpers below.

namespace mollow {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// linear MHz -> angular rad/us
constexpr double rad_per_us(double f_mhz) { return two_pi * f_mhz; }

// angular rad/us -> linear MHz
constexpr double to_mhz(double omega) { return omega / two_pi; }

// Wrap an angle into [0, 2*pi).
double wrap_angle(double phi);

}  // namespace mollow
