#pragma once

#include <numbers>

namespace su11 {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline constexpr double angular_frequency(double wavelength_m) {
  return kTwoPi * kSpeedOfLight / wavelength_m;
}

inline constexpr double wavelength_of(double omega) { return kTwoPi * kSpeedOfLight / omega; }

}  // namespace su11
