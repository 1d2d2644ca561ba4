#pragma once

#include <numbers>

namespace micropump {

// All internal state is SI (m, s, kg, Pa, m^3/s).  Conversions live here so
// the bench units used at the config/CSV boundary (mm, degrees, ul/min)
// stay out of the physics code.

inline constexpr double kPi = std::numbers::pi;

inline constexpr double mm_to_m(double mm) { return mm * 1e-3; }
inline constexpr double m_to_mm(double m) { return m * 1e3; }

inline constexpr double um_to_m(double um) { return um * 1e-6; }

inline constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

// 1 m^3/s = 1e9 ul/s = 6e10 ul/min.
inline constexpr double m3s_to_ul_min(double q) { return q * 6e10; }
inline constexpr double ul_min_to_m3s(double q) { return q / 6e10; }

inline constexpr double ul_to_m3(double v) { return v * 1e-9; }
inline constexpr double m3_to_ul(double v) { return v * 1e9; }

inline constexpr double m_s_to_mm_s(double v) { return v * 1e3; }
inline constexpr double mm_s_to_m_s(double v) { return v * 1e-3; }

}  // namespace micropump
