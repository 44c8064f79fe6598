#include "suntrack/controller.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "suntrack/angles.hpp"
#include "suntrack/format.hpp"
#include "suntrack/time.hpp"

namespace suntrack {

PiController::PiController(PiGains gains, double output_limit, double initial_output)
    : gains_(gains), limit_(output_limit) {
    if (!(output_limit > 0.0)) throw std::invalid_argument("PI output limit must be positive");
    output_ = std::clamp(initial_output, -limit_, limit_);
    // Seed the integrator so the first zero-error update reproduces the initial output.
    if (gains_.ki != 0.0) error_sum_ = output_ / gains_.ki;
}

double PiController::update(double error) {
    errors_.push_back(error);
    const double candidate_sum = error_sum_ + error;
    const double unclamped = gains_.kp * error + integral_term(candidate_sum);
    // Conditional integration: a saturating sample does not accumulate.
    if (std::abs(unclamped) <= limit_) error_sum_ = candidate_sum;
    output_ = std::clamp(unclamped, -limit_, limit_);
    return output_;
}

SunModel::SunModel(const ObserverLocation &location, const PlatformFrame &believed_frame,
                   const KinematicsConfig &limits)
    : location_(location), frame_(believed_frame), limits_(limits) {}

SolarAngles SunModel::corrected_sun(double t, const Offsets &offsets) const {
    const SolarAngles se = solar_position(t, location_);
    return {wrap_360(se.azimuth + offsets.azimuth), se.elevation + offsets.elevation};
}

TrackerPose SunModel::corrected_solar_pose(double t, const Offsets &offsets) const {
    const SolarAngles sun = corrected_sun(t, offsets);
    const double ori =
        std::clamp(azimuth_to_orientation(sun.azimuth, frame_), limits_.orientation_min, limits_.orientation_max);
    const double ele = std::clamp(sun.elevation, limits_.elevation_limit, limits_.elevation_max);
    return {ori, ele};
}

CellProjection SunModel::model_projection(const SolarAngles &sun, const TrackerPose &pose) const {
    return project_sun(sun, pose, frame_, ideal_);
}

bool SunModel::inside(const SolarAngles &sun, const TrackerPose &pose, double beta) const {
    const CellProjection p = model_projection(sun, pose);
    if (sun.elevation < limits_.elevation_limit) return std::abs(p.x) <= beta;
    return inside_region(p, beta);
}

PredictionResult predict(double now, const Offsets &offsets, const SunModel &model, double beta,
                         double time_step, double horizon) {
    if (!(time_step > 0.0)) throw std::invalid_argument("prediction step must be positive");
    PredictionResult result;
    const SolarAngles frozen = model.corrected_sun(now, offsets);
    if (frozen.elevation <= 0.0) {
        result.reference = model.corrected_solar_pose(now, offsets);
        result.t_mov = now;
        result.sunset = true;
        return result;
    }

    const auto steps = static_cast<long>(std::ceil(horizon / time_step));

    // Step one: motionless sun, moving tracker.
    TrackerPose reference = model.corrected_solar_pose(now, offsets);
    for (long k = 1; k <= steps; ++k) {
        const TrackerPose candidate = model.corrected_solar_pose(now + static_cast<double>(k) * time_step, offsets);
        if (!model.inside(frozen, candidate, beta)) break;
        reference = candidate;
    }
    result.reference = reference;

    // Step two: moving sun, motionless tracker.
    double last_inside = now;
    for (long k = 1; k <= steps; ++k) {
        const double t = now + static_cast<double>(k) * time_step;
        const SolarAngles sun = model.corrected_sun(t, offsets);
        if (sun.elevation <= 0.0) {
            result.sunset = true;
            break;
        }
        if (!model.inside(sun, reference, beta)) break;
        last_inside = t;
    }
    result.t_mov = std::max(last_inside, now + time_step);
    return result;
}

void ControllerConfig::validate(double alpha) const {
    if (!(beta > 0.0 && beta < alpha)) throw std::invalid_argument("beta must satisfy 0 < beta < alpha");
    if (prediction_step != 1.0) throw std::invalid_argument("prediction time step is fixed at 1 s");
    if (!(prediction_horizon > 0.0)) throw std::invalid_argument("prediction horizon must be positive");
    if (!(offset_limit > 0.0)) throw std::invalid_argument("offset limit must be positive");
    if (!(catchment_area > 0.0)) throw std::invalid_argument("catchment area must be positive");
    analyzer.validate();
}

ClosedLoopController::ClosedLoopController(const ControllerConfig &config, const SunModel &model,
                                           const Offsets &initial)
    : config_(config), model_(model), pi_azi_(config.azimuth_gains, config.offset_limit, initial.azimuth),
      pi_ele_(config.elevation_gains, config.offset_limit, initial.elevation),
      offsets_{pi_azi_.output(), pi_ele_.output()} {}

void ClosedLoopController::on_observation(const PlantObservation &obs) {
    if (!recorder_.recording()) return;
    if (!recorder_.add(obs)) finish_cycle(obs.t);
}

void ClosedLoopController::on_tick(const PlantObservation &obs, Actuator &actuator) {
    if (recorder_.recording() || parked_ || obs.t < t_mov_) return;

    const PredictionResult prediction =
        predict(obs.t, offsets_, model_, config_.beta, config_.prediction_step, config_.prediction_horizon);
    if (prediction.sunset && prediction.t_mov <= obs.t) {
        actuator.command_move(config_.rest_pose);
        parked_ = true;
        return;
    }

    const MotionPlan plan = actuator.command_move(prediction.reference);
    if (plan.legs[0].length() > 0.0) ++moves_ori_;
    if (plan.legs[1].length() > 0.0) ++moves_ele_;

    pending_ = CycleRecord{};
    pending_.index = static_cast<int>(cycles_.size());
    pending_.t_start = obs.t;
    pending_.prediction = prediction;
    t_mov_ = prediction.t_mov;
    recorder_.begin(pending_.index, obs);
}

void ClosedLoopController::finish_cycle(double t_end) {
    CycleRecord record = analyze_cycle(recorder_.orientation(), recorder_.elevation());
    record.index = pending_.index;
    record.t_start = pending_.t_start;
    record.prediction = pending_.prediction;
    record.t_end = t_end;
    cycles_.push_back(std::move(record));
}

CycleRecord ClosedLoopController::analyze_cycle(const TrajectoryTable &ori, const TrajectoryTable &ele) {
    CycleRecord record;
    record.orientation = ori;
    record.elevation = ele;
    const auto ori_eff =
        efficiency(smooth(ori, config_.fir_taps), config_.catchment_area, config_.irradiance_threshold);
    const auto ele_eff =
        efficiency(smooth(ele, config_.fir_taps), config_.catchment_area, config_.irradiance_threshold);
    record.orientation_estimate = analyze(ori_eff, config_.analyzer);
    record.elevation_estimate = analyze(ele_eff, config_.analyzer);
    record.ts_hat = estimate_timestamp(record.orientation_estimate, record.elevation_estimate);
    update_pi(record.orientation_estimate, record.elevation_estimate, record.ts_hat, &record);
    return record;
}

Offsets ClosedLoopController::update_pi(const SunEstimate &ori, const SunEstimate &ele,
                                        std::optional<double> ts_hat, CycleRecord *record) {
    const Offsets before = offsets_;
    if (record) record->before = before;
    if (ts_hat) {
        // Errors are taken against the corrected Solar Equations in force while
        // the trajectories were recorded, so they vanish once the offsets match.
        const SolarAngles se = model_.solar_equations(*ts_hat);
        const bool locked = se.elevation + before.elevation < model_.limits().elevation_limit;
        if (record) record->elevation_locked = locked;
        const bool adapt = config_.adapt_offsets;
        if (ori.accepted()) {
            const double measured = orientation_to_azimuth(ori.theta_hat, model_.believed_frame());
            const double error = wrap_180(measured - (se.azimuth + before.azimuth));
            if (adapt) offsets_.azimuth = pi_azi_.update(error);
            if (record) {
                record->azimuth_error = error;
                record->azimuth_updated = adapt;
            }
        }
        if (ele.accepted() && !locked) {
            const double error = ele.theta_hat - (se.elevation + before.elevation);
            if (adapt) offsets_.elevation = pi_ele_.update(error);
            if (record) {
                record->elevation_error = error;
                record->elevation_updated = adapt;
            }
        }
    }
    if (record) record->after = offsets_;
    return offsets_;
}

std::size_t ClosedLoopController::movement_count(std::optional<Axis> axis) const {
    if (!axis) return cycles_.size() + (recorder_.recording() ? 1 : 0);
    return *axis == Axis::orientation ? moves_ori_ : moves_ele_;
}

OpenLoopController::OpenLoopController(const SunModel &model, double period, TrackerPose rest_pose)
    : model_(model), period_(period), rest_pose_(rest_pose) {
    if (!(period > 0.0)) throw std::invalid_argument("open-loop period must be positive");
}

void OpenLoopController::on_tick(const PlantObservation &obs, Actuator &actuator) {
    if (parked_) return;
    if (!next_move_) next_move_ = obs.t;
    if (obs.t < *next_move_) return;
    if (model_.solar_equations(obs.t).elevation <= 0.0) {
        actuator.command_move(rest_pose_);
        parked_ = true;
        return;
    }
    const MotionPlan plan = actuator.command_move(model_.corrected_solar_pose(obs.t, {}));
    ++moves_;
    if (plan.legs[0].length() > 0.0) ++moves_ori_;
    if (plan.legs[1].length() > 0.0) ++moves_ele_;
    // Keep the cadence anchored to the first command.
    while (*next_move_ <= obs.t) *next_move_ += period_;
}

std::size_t OpenLoopController::movement_count(std::optional<Axis> axis) const {
    if (!axis) return moves_;
    return *axis == Axis::orientation ? moves_ori_ : moves_ele_;
}

void save_offsets(std::ostream &out, const Offsets &offsets, double saved_at) {
    out << "azimuth_offset_deg,elevation_offset_deg,saved_at_utc\n"
        << format_double(offsets.azimuth) << ',' << format_double(offsets.elevation) << ',' << format_utc(saved_at)
        << '\n';
}

Offsets load_offsets(std::istream &in) {
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.rfind("azimuth_offset_deg", 0) == 0) continue;
        std::stringstream ss(line);
        std::string azi, ele, saved;
        if (!std::getline(ss, azi, ',') || !std::getline(ss, ele, ','))
            throw std::runtime_error("malformed offset record: " + line);
        return {parse_double(azi), parse_double(ele)};
    }
    throw std::runtime_error("offset file holds no record");
}

} // namespace suntrack
