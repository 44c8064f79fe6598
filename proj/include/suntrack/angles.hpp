#pragma once

#include <cmath>
#include <numbers>

namespace suntrack {

inline constexpr double kDegToRad = std::numbers::pi / 180.0;
inline constexpr double kRadToDeg = 180.0 / std::numbers::pi;

/// Wraps an angle in degrees to [0, 360).
inline double wrap_360(double deg) {
    double r = std::fmod(deg, 360.0);
    if (r < 0.0) r += 360.0;
    // fmod of a tiny negative value can round up to exactly 360
    if (r >= 360.0) r -= 360.0;
    return r;
}

/// Wraps an angle in degrees to (-180, 180].
inline double wrap_180(double deg) {
    double r = wrap_360(deg);
    if (r > 180.0) r -= 360.0;
    return r;
}

} // namespace suntrack
