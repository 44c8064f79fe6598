#pragma once

namespace suntrack {

/// Heading of the tracker platform frame {0}: the geographic azimuth (clockwise
/// from north, same sense as SolarAngles::azimuth) of the orientation zero.
/// 180 points the platform to geographic south.
struct PlatformFrame {
    double z_rotation = 180.0;
};

/// Builds a platform frame from a rotation-matrix angle about the upward Z axis
/// (right-handed, counter-clockwise seen from above). The two conventions agree
/// at 180 and mirror each other elsewhere: 181 here is a heading of 179.
PlatformFrame platform_frame_from_rotation_matrix(double z_rotation_ccw_deg);

/// Tracker orientation coordinate for a geographic azimuth, in (-180, 180].
double azimuth_to_orientation(double azimuth_deg, const PlatformFrame &frame);

/// Geographic azimuth in [0, 360) for a tracker orientation coordinate.
double orientation_to_azimuth(double theta_ori_deg, const PlatformFrame &frame);

} // namespace suntrack
