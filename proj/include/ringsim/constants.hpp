#pragma once

namespace ringsim {

inline constexpr double speed_of_light = 299792458.0;  // m/s
inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

// User-facing frequencies are plain MHz; everything internal is angular (rad/s).
inline constexpr double rad_per_mhz = two_pi * 1e6;

inline constexpr double mhz_to_rad(double f_mhz) { return f_mhz * rad_per_mhz; }
inline constexpr double rad_to_mhz(double w) { return w / rad_per_mhz; }

}  // namespace ringsim
