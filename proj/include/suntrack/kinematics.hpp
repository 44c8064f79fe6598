#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>

namespace suntrack {

enum class Axis { orientation, elevation };

const char *axis_name(Axis axis);

/// Joint coordinates of the two-axis tracker, degrees.
struct TrackerPose {
    double theta_ori = 0.0;
    double theta_ele = 0.0;
};

struct AxisSpec {
    double speed = 0.2;                   // deg/s
    double measurement_resolution = 0.1;  // deg
    double accuracy = 0.1;                // deg, bound of the terminal positioning error
};

struct KinematicsConfig {
    AxisSpec orientation{0.2, 360.0 / 16384.0, 0.05};
    AxisSpec elevation{0.1, 0.1, 0.1};
    double orientation_min = -170.0;
    double orientation_max = 170.0;
    double elevation_limit = 20.0;  // software limit, collision avoidance
    double elevation_max = 90.0;

    void validate() const;
};

/// Raised when a commanded orientation lies outside the travel range.
class LimitError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct MotionLeg {
    Axis axis = Axis::orientation;
    double start = 0.0;
    double target = 0.0;
    double speed = 1.0;

    double length() const;
    double duration() const { return length() / speed; }
};

/// Orientation leg first, then elevation leg. Either may have zero length.
struct MotionPlan {
    std::array<MotionLeg, 2> legs;

    double duration() const { return legs[0].duration() + legs[1].duration(); }
};

struct StepReport {
    TrackerPose pose;
    std::optional<Axis> moved;  // axis in motion during the step, if any
};

/// Simulated two-axis tracker with constant-speed sequential legs.
class Tracker {
public:
    Tracker(const KinematicsConfig &config, const TrackerPose &initial);

    /// Replaces any active plan. `terminal_error` is added to each leg target to
    /// model the low-level position loop's residual error; the elevation target
    /// is clamped to the software limit after it is applied.
    MotionPlan command_move(const TrackerPose &target, const TrackerPose &terminal_error = {});

    StepReport step(double dt);

    TrackerPose pose() const { return pose_; }
    TrackerPose measure_pose() const;
    bool moving() const { return active_leg_ < 2; }
    std::optional<Axis> active_axis() const;

    /// Clamps elevation into [limit, max]; throws LimitError on orientation.
    TrackerPose admissible(const TrackerPose &target) const;

    const KinematicsConfig &config() const { return config_; }

private:
    KinematicsConfig config_;
    TrackerPose pose_;
    MotionPlan plan_{};
    std::size_t active_leg_ = 2;
};

/// Round-to-nearest quantizer.
double quantize(double value, double resolution);

} // namespace suntrack
