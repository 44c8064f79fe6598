#include "suntrack/frames.hpp"

#include "suntrack/angles.hpp"

namespace suntrack {

PlatformFrame platform_frame_from_rotation_matrix(double z_rotation_ccw_deg) {
    return PlatformFrame{wrap_360(-z_rotation_ccw_deg)};
}

double azimuth_to_orientation(double azimuth_deg, const PlatformFrame &frame) {
    return wrap_180(azimuth_deg - wrap_360(frame.z_rotation));
}

double orientation_to_azimuth(double theta_ori_deg, const PlatformFrame &frame) {
    return wrap_360(theta_ori_deg + wrap_360(frame.z_rotation));
}

} // namespace suntrack
