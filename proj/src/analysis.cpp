#include "suntrack/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace suntrack {

namespace {

std::size_t argmax(const std::vector<double> &v) {
    // std::max_element returns the first maximum
    return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

// Efficiency never drops by more than `tol` below the running maximum while
// walking from `from` towards `to`.
bool monotone_approach(const std::vector<double> &eta, std::size_t from, std::size_t to, double tol) {
    double running = eta[from];
    const int dir = to >= from ? 1 : -1;
    for (std::size_t i = from;; i = static_cast<std::size_t>(static_cast<long>(i) + dir)) {
        if (eta[i] < running - tol) return false;
        running = std::max(running, eta[i]);
        if (i == to) break;
    }
    return true;
}

std::size_t first_at_or_above(const std::vector<double> &eta, double thr) {
    for (std::size_t i = 0; i < eta.size(); ++i)
        if (eta[i] >= thr) return i;
    throw AnalysisError("threshold never attained from the start");
}

std::size_t last_at_or_above(const std::vector<double> &eta, double thr) {
    for (std::size_t i = eta.size(); i-- > 0;)
        if (eta[i] >= thr) return i;
    throw AnalysisError("threshold never attained from the end");
}

} // namespace

const char *label_name(TrajectoryLabel label) {
    switch (label) {
    case TrajectoryLabel::T1: return "T1";
    case TrajectoryLabel::T2: return "T2";
    case TrajectoryLabel::T3: return "T3";
    case TrajectoryLabel::T4: return "T4";
    case TrajectoryLabel::Rejected: return "Rejected";
    case TrajectoryLabel::LowEfficiency: return "LowEfficiency";
    }
    return "?";
}

TrajectoryLabel parse_label(const std::string &name) {
    for (auto l : {TrajectoryLabel::T1, TrajectoryLabel::T2, TrajectoryLabel::T3, TrajectoryLabel::T4,
                   TrajectoryLabel::Rejected, TrajectoryLabel::LowEfficiency})
        if (name == label_name(l)) return l;
    throw std::invalid_argument("unknown trajectory label: " + name);
}

void AnalyzerConfig::validate() const {
    if (!(threshold_fraction >= 0.90 && threshold_fraction <= 0.95))
        throw std::invalid_argument("threshold fraction must lie in [0.90, 0.95]");
    if (!(low_eff_floor >= 0.0)) throw std::invalid_argument("low efficiency floor must be >= 0");
    if (min_samples < 3) throw std::invalid_argument("min_samples must be at least 3");
    if (!(endpoint_window >= 0.0 && endpoint_window < 0.5))
        throw std::invalid_argument("endpoint window must be within [0, 0.5)");
    if (!(monotone_tolerance >= 0.0)) throw std::invalid_argument("monotone tolerance must be >= 0");
}

TrajectoryLabel classify(const EfficiencyTrajectory &traj, const AnalyzerConfig &cfg) {
    const auto &eta = traj.eta;
    const std::size_t n = eta.size();
    if (n == 0) return TrajectoryLabel::Rejected;

    const std::size_t peak = argmax(eta);
    const double max_eta = eta[peak];
    if (max_eta < cfg.low_eff_floor) return TrajectoryLabel::LowEfficiency;
    if (n < cfg.min_samples) return TrajectoryLabel::Rejected;

    const double thr = cfg.threshold_fraction * max_eta;
    const bool start_low = eta.front() < thr;
    const bool end_low = eta.back() < thr;
    const std::size_t last = n - 1;

    if (start_low && end_low) return TrajectoryLabel::T2;

    if (!start_low && !end_low && peak != 0 && peak != last && max_eta > eta.front() &&
        max_eta > eta.back())
        return TrajectoryLabel::T3;

    // Off-center: the maximum sits in an end window and efficiency rises
    // towards it from a sub-threshold opposite end. A flat top with both ends
    // high says nothing about where the sun is, whatever its noisy argmax.
    const auto window = static_cast<std::size_t>(std::floor(cfg.endpoint_window * static_cast<double>(n)));
    const double tol = cfg.monotone_tolerance * max_eta;
    const bool near_end = peak + window >= last && start_low && !end_low;
    const bool near_start = peak <= window && end_low && !start_low;
    if (near_end && monotone_approach(eta, 0, peak, tol)) return TrajectoryLabel::T1;
    if (near_start && monotone_approach(eta, last, peak, tol)) return TrajectoryLabel::T1;

    if (start_low != end_low && peak != 0 && peak != last) return TrajectoryLabel::T4;
    return TrajectoryLabel::Rejected;
}

double estimate_theta(const EfficiencyTrajectory &traj, TrajectoryLabel label, const AnalyzerConfig &cfg) {
    const auto &eta = traj.eta;
    if (eta.empty()) throw AnalysisError("empty trajectory");
    const double thr = cfg.threshold_fraction * *std::max_element(eta.begin(), eta.end());

    std::size_t a = 0, b = 0;
    switch (label) {
    case TrajectoryLabel::T1:
        return traj.theta[argmax(eta)];
    case TrajectoryLabel::T2:
    case TrajectoryLabel::T3:
        // For T3 both ends already satisfy the threshold, so A and B are the ends.
        a = first_at_or_above(eta, thr);
        b = last_at_or_above(eta, thr);
        break;
    case TrajectoryLabel::T4:
        if (eta.front() < thr) {
            a = first_at_or_above(eta, thr);
            b = eta.size() - 1;
        } else {
            a = 0;
            b = last_at_or_above(eta, thr);
        }
        break;
    default:
        throw AnalysisError(std::string("no sun estimate for label ") + label_name(label));
    }
    return 0.5 * (traj.theta[a] + traj.theta[b]);
}

double time_at_theta(const EfficiencyTrajectory &traj, double theta_hat) {
    if (traj.theta.empty()) throw AnalysisError("empty trajectory");
    std::size_t best = 0;
    double best_dist = std::abs(traj.theta[0] - theta_hat);
    for (std::size_t i = 1; i < traj.theta.size(); ++i) {
        const double d = std::abs(traj.theta[i] - theta_hat);
        if (d < best_dist) {
            best = i;
            best_dist = d;
        }
    }
    return traj.ts[best];
}

SunEstimate analyze(const EfficiencyTrajectory &traj, const AnalyzerConfig &cfg) {
    SunEstimate est;
    est.axis = traj.axis;
    est.label = classify(traj, cfg);
    if (!est.accepted()) return est;
    try {
        est.theta_hat = estimate_theta(traj, est.label, cfg);
        est.ts_hat = time_at_theta(traj, est.theta_hat);
    } catch (const AnalysisError &) {
        est.label = TrajectoryLabel::Rejected;
    }
    return est;
}

std::optional<double> estimate_timestamp(const std::optional<SunEstimate> &ori,
                                         const std::optional<SunEstimate> &ele) {
    const bool has_ori = ori && ori->accepted();
    const bool has_ele = ele && ele->accepted();
    if (has_ori && has_ele) return ori->ts_hat + (ele->ts_hat - ori->ts_hat) / 2.0;
    if (has_ori) return ori->ts_hat;
    if (has_ele) return ele->ts_hat;
    return std::nullopt;
}

} // namespace suntrack
