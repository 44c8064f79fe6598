#pragma once

#include "suntrack/ephemeris.hpp"
#include "suntrack/frames.hpp"
#include "suntrack/kinematics.hpp"

namespace suntrack {

/// Angular position of the concentrated sun beam on the virtual cell, degrees.
/// (0, 0) is perfect pointing; +x means the sun lies towards increasing
/// azimuth, +y towards increasing elevation.
struct CellProjection {
    double x = 0.0;
    double y = 0.0;
};

struct ConcentratorSpec {
    double alpha = 1.14;            // half-acceptance angle, deg (efficiency at 90% of peak)
    double eta_peak = 0.20;         // absolute DC conversion efficiency at perfect pointing
    double rolloff_sharpness = 4.0; // k in 1 / (1 + (|u|/u0)^(2k))
    double mount_dx = 0.0;          // module-to-wing misalignment, deg
    double mount_dy = 0.0;

    void validate() const;

    /// Copy with alpha scaled by `factor` (inverter-coupled contraction).
    ConcentratorSpec contracted(double factor) const;
};

/// Expresses the sun direction in the wing frame. The wing normal points along
/// the pose (orientation mapped to azimuth through `frame`); x and y are the
/// sun vector's angles along the wing's azimuthal and elevation tangent axes,
/// plus the mount misalignment.
CellProjection project_sun(const SolarAngles &sun, const TrackerPose &pose,
                           const PlatformFrame &frame, const ConcentratorSpec &spec);

/// One-dimensional flat-top profile, 1 at u = 0 and 0.9 at |u| = alpha.
double profile_value(double u, double alpha, double sharpness);

/// Separable f(x) * f(y) in [0, 1].
double relative_efficiency(const CellProjection &p, const ConcentratorSpec &spec);

/// Closed square |x| <= half_width && |y| <= half_width.
bool inside_region(const CellProjection &p, double half_width);

} // namespace suntrack
