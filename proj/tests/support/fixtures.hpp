#pragma once

#include <algorithm>
#include <vector>

#include "generators.hpp"
#include "suntrack/analysis.hpp"
#include "suntrack/dsp.hpp"

namespace testsupport {

inline constexpr double kFixtureDni = 850.0;
inline constexpr double kFixtureCatchment = 9.3;
// 0.2 deg/s orientation speed sampled every 125 ms.
inline constexpr double kSweepStep = 0.025;

/// Noise-free efficiency slices, one per label.
inline suntrack::EfficiencyTrajectory label_fixture(suntrack::TrajectoryLabel label) {
    using suntrack::TrajectoryLabel;
    SliceSpec s;
    switch (label) {
    case TrajectoryLabel::T1:  // rises monotonically and ends on the sun
        s.theta_from = -1.5, s.theta_to = 0.0;
        return slice(s);
    case TrajectoryLabel::T2:  // enters and leaves below the threshold
        s.theta_from = -1.5, s.theta_to = 1.5;
        return slice(s);
    case TrajectoryLabel::T3:  // short sweep inside the flat top
        s.theta_from = -0.3, s.theta_to = 0.3, s.theta_sun = 0.05;
        return slice(s);
    case TrajectoryLabel::T4:  // starts high, sun well inside, ends low
        s.theta_from = -0.4, s.theta_to = 1.5;
        return slice(s);
    case TrajectoryLabel::LowEfficiency: {
        auto t = slice(s);
        std::fill(t.eta.begin(), t.eta.end(), 0.0);
        return t;
    }
    case TrajectoryLabel::Rejected: {
        // High at both ends with a dip in between: no admissible shape.
        auto t = slice(s);
        const double mid = 0.5 * static_cast<double>(t.size() - 1);
        for (std::size_t i = 0; i < t.size(); ++i) {
            const double d = (static_cast<double>(i) - mid) / mid;
            t.eta[i] = 0.2 * (0.5 + 0.5 * d * d);
        }
        return t;
    }
    }
    return {};
}

struct ClassificationTrial {
    suntrack::TrajectoryLabel expected = suntrack::TrajectoryLabel::Rejected;
    suntrack::TrajectoryTable clean;
    suntrack::TrajectoryTable noisy;
};

/// Smoothing and efficiency as the controller applies them.
inline suntrack::EfficiencyTrajectory pipeline(const suntrack::TrajectoryTable &table) {
    return suntrack::efficiency(suntrack::smooth(table), kFixtureCatchment);
}

/// Random sweep geometry whose label follows from where the sun sits relative
/// to the sweep ends. Distances are in degrees on the moving axis, for the
/// default contracted concentrator (90% point at 0.57 deg, T = 0.92).
///   T1  sun beyond one end by 0.4 .. 0.8, where the approach still has slope
///   T2  both ends at least 0.8 from the sun
///   T3  both ends 0.4 .. 0.5 from the sun: above T yet clearly below the top
///   T4  sun inside, 0.47 .. 0.5 from the high end, 0.8 .. 1.2 from the low end
/// Sweep direction, cross-axis offset and sun position are randomized.
inline ClassificationTrial random_trial(Gen &g, suntrack::TrajectoryLabel label, double sigma) {
    using suntrack::TrajectoryLabel;
    SliceSpec s;
    s.theta_sun = g.uniform(-2.0, 2.0);
    s.cross = g.uniform(-0.2, 0.2);
    double lo = 0.0, hi = 0.0;  // sweep ends relative to the sun
    switch (label) {
    case TrajectoryLabel::T1:
        hi = -g.uniform(0.4, 0.8);
        lo = hi - g.uniform(1.0, 2.0);
        break;
    case TrajectoryLabel::T2:
        lo = -g.uniform(0.8, 1.5);
        hi = g.uniform(0.8, 1.5);
        break;
    case TrajectoryLabel::T3:
        lo = -g.uniform(0.4, 0.5);
        hi = g.uniform(0.4, 0.5);
        break;
    case TrajectoryLabel::T4:
        lo = -g.uniform(0.8, 1.2);
        hi = g.uniform(0.47, 0.5);
        break;
    case TrajectoryLabel::LowEfficiency:
        lo = -1.0, hi = 1.0;
        s.eta_peak = g.uniform(0.0, 0.015);
        break;
    case TrajectoryLabel::Rejected:
        lo = -0.2, hi = 0.2;
        break;
    }
    if (g.coin()) std::swap(lo, hi);
    s.theta_from = s.theta_sun + lo;
    s.theta_to = s.theta_sun + hi;
    const double span = std::abs(hi - lo);
    s.n = static_cast<std::size_t>(span / kSweepStep) + 1;
    if (label == TrajectoryLabel::Rejected) s.n = 8;  // too short to analyze

    ClassificationTrial trial;
    trial.expected = label;
    trial.clean = slice_table(s, kFixtureDni, kFixtureCatchment);
    trial.noisy = slice_table(s, kFixtureDni, kFixtureCatchment, &g, sigma);
    return trial;
}

inline double sample_step(const suntrack::TrajectoryTable &t) {
    return std::abs(t.samples.back().theta - t.samples.front().theta) / static_cast<double>(t.size() - 1);
}

} // namespace testsupport
