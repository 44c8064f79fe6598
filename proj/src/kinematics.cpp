#include "suntrack/kinematics.hpp"

#include <algorithm>
#include <cmath>

namespace suntrack {

const char *axis_name(Axis axis) { return axis == Axis::orientation ? "orientation" : "elevation"; }

void KinematicsConfig::validate() const {
    for (const AxisSpec *spec : {&orientation, &elevation}) {
        if (!(spec->speed > 0.0)) throw std::invalid_argument("axis speed must be positive");
        if (!(spec->measurement_resolution > 0.0))
            throw std::invalid_argument("measurement resolution must be positive");
        if (!(spec->accuracy >= 0.0)) throw std::invalid_argument("axis accuracy must be >= 0");
    }
    if (!(orientation_min < orientation_max)) throw std::invalid_argument("empty orientation range");
    if (!(elevation_limit <= elevation_max)) throw std::invalid_argument("empty elevation range");
}

double MotionLeg::length() const { return std::abs(target - start); }

double quantize(double value, double resolution) { return std::round(value / resolution) * resolution; }

Tracker::Tracker(const KinematicsConfig &config, const TrackerPose &initial) : config_(config) {
    config_.validate();
    pose_ = admissible(initial);
}

TrackerPose Tracker::admissible(const TrackerPose &target) const {
    if (target.theta_ori < config_.orientation_min || target.theta_ori > config_.orientation_max)
        throw LimitError("orientation target outside the travel range");
    return {target.theta_ori, std::clamp(target.theta_ele, config_.elevation_limit, config_.elevation_max)};
}

MotionPlan Tracker::command_move(const TrackerPose &target, const TrackerPose &terminal_error) {
    const TrackerPose goal = admissible(target);
    const double ori = std::clamp(goal.theta_ori + terminal_error.theta_ori, config_.orientation_min,
                                  config_.orientation_max);
    const double ele = std::clamp(goal.theta_ele + terminal_error.theta_ele, config_.elevation_limit,
                                  config_.elevation_max);
    plan_.legs[0] = {Axis::orientation, pose_.theta_ori, ori, config_.orientation.speed};
    plan_.legs[1] = {Axis::elevation, pose_.theta_ele, ele, config_.elevation.speed};
    active_leg_ = 0;
    while (active_leg_ < 2 && plan_.legs[active_leg_].length() == 0.0) ++active_leg_;
    return plan_;
}

std::optional<Axis> Tracker::active_axis() const {
    if (!moving()) return std::nullopt;
    return plan_.legs[active_leg_].axis;
}

StepReport Tracker::step(double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("step requires dt > 0");
    if (!moving()) return {pose_, std::nullopt};

    // Time left over when a leg finishes is not carried into the next leg.
    MotionLeg &leg = plan_.legs[active_leg_];
    double &coord = leg.axis == Axis::orientation ? pose_.theta_ori : pose_.theta_ele;
    const double remaining = leg.target - coord;
    const double travel = leg.speed * dt;
    if (std::abs(remaining) <= travel * (1.0 + 1e-12)) {
        coord = leg.target;
        ++active_leg_;
        while (active_leg_ < 2 && plan_.legs[active_leg_].length() == 0.0) ++active_leg_;
    } else {
        coord += std::copysign(travel, remaining);
    }
    return {pose_, leg.axis};
}

TrackerPose Tracker::measure_pose() const {
    return {quantize(pose_.theta_ori, config_.orientation.measurement_resolution),
            quantize(pose_.theta_ele, config_.elevation.measurement_resolution)};
}

} // namespace suntrack
