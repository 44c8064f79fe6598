#include "suntrack/optics.hpp"

#include <cmath>
#include <stdexcept>

#include "suntrack/angles.hpp"

namespace suntrack {

namespace {

struct Vec3 {
    double e, n, u;
};

double dot(const Vec3 &a, const Vec3 &b) { return a.e * b.e + a.n * b.n + a.u * b.u; }

// East-north-up unit vector for a clockwise-from-north azimuth and elevation.
Vec3 direction(double azimuth_deg, double elevation_deg) {
    const double az = azimuth_deg * kDegToRad;
    const double el = elevation_deg * kDegToRad;
    return {std::sin(az) * std::cos(el), std::cos(az) * std::cos(el), std::sin(el)};
}

} // namespace

void ConcentratorSpec::validate() const {
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
    if (!(eta_peak > 0.0 && eta_peak <= 1.0)) throw std::invalid_argument("eta_peak must be in (0, 1]");
    if (!(rolloff_sharpness > 0.0)) throw std::invalid_argument("rolloff sharpness must be positive");
}

ConcentratorSpec ConcentratorSpec::contracted(double factor) const {
    if (!(factor > 0.0)) throw std::invalid_argument("contraction factor must be positive");
    ConcentratorSpec out = *this;
    out.alpha *= factor;
    return out;
}

CellProjection project_sun(const SolarAngles &sun, const TrackerPose &pose,
                           const PlatformFrame &frame, const ConcentratorSpec &spec) {
    const double wing_azimuth = orientation_to_azimuth(pose.theta_ori, frame) * kDegToRad;
    const double wing_elevation = pose.theta_ele * kDegToRad;
    const double sa = std::sin(wing_azimuth), ca = std::cos(wing_azimuth);
    const double se = std::sin(wing_elevation), ce = std::cos(wing_elevation);

    const Vec3 normal{sa * ce, ca * ce, se};
    const Vec3 x_axis{ca, -sa, 0.0};
    const Vec3 y_axis{-sa * se, -ca * se, ce};

    const Vec3 s = direction(sun.azimuth, sun.elevation);
    const double depth = dot(s, normal);
    return {std::atan2(dot(s, x_axis), depth) * kRadToDeg + spec.mount_dx,
            std::atan2(dot(s, y_axis), depth) * kRadToDeg + spec.mount_dy};
}

double profile_value(double u, double alpha, double sharpness) {
    // f(alpha) = 0.9  =>  (alpha / u0)^(2k) = 1/9
    const double u0 = alpha * std::pow(9.0, 1.0 / (2.0 * sharpness));
    return 1.0 / (1.0 + std::pow(std::abs(u) / u0, 2.0 * sharpness));
}

double relative_efficiency(const CellProjection &p, const ConcentratorSpec &spec) {
    return profile_value(p.x, spec.alpha, spec.rolloff_sharpness) *
           profile_value(p.y, spec.alpha, spec.rolloff_sharpness);
}

bool inside_region(const CellProjection &p, double half_width) {
    if (!(half_width > 0.0)) throw std::invalid_argument("region half width must be positive");
    return std::abs(p.x) <= half_width && std::abs(p.y) <= half_width;
}

} // namespace suntrack
