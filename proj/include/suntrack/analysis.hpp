#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

#include "suntrack/dsp.hpp"
#include "suntrack/kinematics.hpp"

namespace suntrack {

/// Shapes of efficiency trajectories recorded while an axis sweeps past the sun.
///   T1  off-center: maximum at or next to one end, monotone approach
///   T2  centered: both ends below the threshold
///   T3  centered: both ends above the threshold, interior maximum
///   T4  half-centered: exactly one end below the threshold
enum class TrajectoryLabel { T1, T2, T3, T4, Rejected, LowEfficiency };

const char *label_name(TrajectoryLabel label);
TrajectoryLabel parse_label(const std::string &name);

inline bool is_accepted(TrajectoryLabel label) {
    return label == TrajectoryLabel::T1 || label == TrajectoryLabel::T2 || label == TrajectoryLabel::T3 ||
           label == TrajectoryLabel::T4;
}

struct AnalyzerConfig {
    double threshold_fraction = 0.92;  // T as a fraction of the trajectory maximum, [0.90, 0.95]
    double low_eff_floor = 0.02;       // below this peak efficiency nothing is learned
    std::size_t min_samples = 15;
    double endpoint_window = 0.10;       // fraction of samples counted as "next to an end" for T1
    double monotone_tolerance = 0.02;    // allowed dip, as a fraction of the maximum, on a T1 approach

    void validate() const;
};

struct SunEstimate {
    Axis axis = Axis::orientation;
    TrajectoryLabel label = TrajectoryLabel::Rejected;
    double theta_hat = 0.0;  // deg, tracker coordinate of the sun
    double ts_hat = 0.0;     // s, time the moving axis passed theta_hat

    bool accepted() const { return is_accepted(label); }
};

/// Raised when a trajectory's label and contents disagree during estimation.
class AnalysisError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

TrajectoryLabel classify(const EfficiencyTrajectory &traj, const AnalyzerConfig &cfg);

/// Throws AnalysisError when the label is not T1-T4 or the threshold is never
/// attained.
double estimate_theta(const EfficiencyTrajectory &traj, TrajectoryLabel label, const AnalyzerConfig &cfg);

/// Timestamp of the sample whose theta is nearest to `theta_hat` (earliest on ties).
double time_at_theta(const EfficiencyTrajectory &traj, double theta_hat);

/// classify + estimate; inconsistent estimates are demoted to Rejected.
SunEstimate analyze(const EfficiencyTrajectory &traj, const AnalyzerConfig &cfg);

/// Both accepted: t_ori + (t_ele - t_ori) / 2. One accepted: its time.
/// Neither: nullopt.
std::optional<double> estimate_timestamp(const std::optional<SunEstimate> &ori,
                                         const std::optional<SunEstimate> &ele);

} // namespace suntrack
