#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "suntrack/analysis.hpp"
#include "suntrack/dsp.hpp"
#include "suntrack/ephemeris.hpp"
#include "suntrack/frames.hpp"
#include "suntrack/kinematics.hpp"
#include "suntrack/optics.hpp"
#include "suntrack/plant.hpp"

namespace suntrack {

/// Corrections added to the Solar Equations' azimuth and elevation, degrees.
struct Offsets {
    double azimuth = 0.0;
    double elevation = 0.0;

    bool operator==(const Offsets &) const = default;
};

/// The error fed to the PI is the residual against the corrected Solar
/// Equations, so the loop around it is a unit static gain. Any Kp > 0 then adds
/// a negative closed-loop pole (alternating offsets); the default is integral only.
struct PiGains {
    double kp = 0.0;
    double ki = 0.35;
};

/// Discrete PI evaluated once per accepted analysis, regardless of the time
/// elapsed between calls: u_{k+1} = Kp e_k + Ki * sum(e).
class PiController {
public:
    explicit PiController(PiGains gains, double output_limit = 5.0, double initial_output = 0.0);

    /// Feeds one error sample and returns the new (clamped) output. Integration
    /// is skipped for samples that would drive the output past the clamp.
    double update(double error);

    double output() const { return output_; }
    double error_sum() const { return error_sum_; }
    const std::vector<double> &errors() const { return errors_; }
    const PiGains &gains() const { return gains_; }

private:
    // The summation convention lives here: the running sum includes the
    // current error. Excluding it would use error_sum_ before accumulation.
    double integral_term(double accumulated_sum) const { return gains_.ki * accumulated_sum; }

    PiGains gains_;
    double limit_;
    double error_sum_ = 0.0;
    double output_ = 0.0;
    std::vector<double> errors_;
};

/// The controller's view of the world: corrected Solar Equations, the believed
/// platform frame, joint limits and an ideal (misalignment-free) concentrator.
class SunModel {
public:
    SunModel(const ObserverLocation &location, const PlatformFrame &believed_frame,
             const KinematicsConfig &limits);

    SolarAngles solar_equations(double t) const { return solar_position(t, location_); }
    SolarAngles corrected_sun(double t, const Offsets &offsets) const;

    /// Pose pointing at the corrected sun; elevation clamped to the software
    /// limit, orientation clamped to the travel range.
    TrackerPose corrected_solar_pose(double t, const Offsets &offsets) const;

    CellProjection model_projection(const SolarAngles &sun, const TrackerPose &pose) const;

    /// Inside the beta square. While the sun is below the elevation software
    /// limit only the x coordinate is tested, since elevation cannot follow.
    bool inside(const SolarAngles &sun, const TrackerPose &pose, double beta) const;

    const ObserverLocation &location() const { return location_; }
    const PlatformFrame &believed_frame() const { return frame_; }
    const KinematicsConfig &limits() const { return limits_; }

private:
    ObserverLocation location_;
    PlatformFrame frame_;
    KinematicsConfig limits_;
    ConcentratorSpec ideal_;
};

struct PredictionResult {
    TrackerPose reference;
    double t_mov = 0.0;
    bool sunset = false;  // the corrected sun set during the prediction
};

/// Two-step move-ahead prediction.
/// Step one freezes the sun at `now` and advances the simulated wing along the
/// corrected Solar Equations in `time_step` increments until the frozen sun
/// leaves the beta square; the last inside pose is the reference.
/// Step two holds the wing at the reference and advances the sun until it
/// leaves the square; the last inside instant is t_mov (at least now + step).
PredictionResult predict(double now, const Offsets &offsets, const SunModel &model, double beta,
                         double time_step = 1.0, double horizon = 7200.0);

struct ControllerConfig {
    double beta = 0.5;
    double prediction_step = 1.0;
    double prediction_horizon = 7200.0;
    PiGains azimuth_gains;
    PiGains elevation_gains;
    double offset_limit = 5.0;
    TrackerPose rest_pose{0.0, 20.0};
    AnalyzerConfig analyzer;
    std::size_t fir_taps = 11;
    double irradiance_threshold = 50.0;
    double catchment_area = 9.3;
    bool adapt_offsets = true;  // false: analyze every cycle but never move the offsets

    void validate(double alpha) const;
};

/// Analysis outcome and offset update of one control sequence.
struct CycleRecord {
    int index = 0;
    double t_start = 0.0;
    double t_end = 0.0;
    PredictionResult prediction;
    TrajectoryTable orientation;  // raw, as recorded
    TrajectoryTable elevation;
    SunEstimate orientation_estimate;
    SunEstimate elevation_estimate;
    std::optional<double> ts_hat;
    double azimuth_error = 0.0;
    double elevation_error = 0.0;
    bool azimuth_updated = false;
    bool elevation_updated = false;
    bool elevation_locked = false;
    Offsets before;
    Offsets after;
};

/// Closed-loop power-feedback strategy as a deterministic state machine fed by
/// plant observations.
class ClosedLoopController {
public:
    ClosedLoopController(const ControllerConfig &config, const SunModel &model, const Offsets &initial = {});

    /// Every sensor sample. Feeds trajectory recording and closes a cycle when
    /// the movement settles.
    void on_observation(const PlantObservation &obs);

    /// Supervisory tick. Starts a control sequence once the clock reaches t_mov.
    void on_tick(const PlantObservation &obs, Actuator &actuator);

    /// Runs prediction, PI bookkeeping and analysis on recorded tables; exposed
    /// for tests that drive the pieces by hand.
    CycleRecord analyze_cycle(const TrajectoryTable &ori, const TrajectoryTable &ele);

    /// Applies estimates to the PI controllers. Rejected axes keep their offset.
    Offsets update_pi(const SunEstimate &ori, const SunEstimate &ele, std::optional<double> ts_hat,
                      CycleRecord *record = nullptr);

    const Offsets &offsets() const { return offsets_; }
    double next_movement_time() const { return t_mov_; }
    bool moving() const { return recorder_.recording(); }
    bool parked() const { return parked_; }
    const std::vector<CycleRecord> &cycles() const { return cycles_; }
    const PiController &azimuth_pi() const { return pi_azi_; }
    const PiController &elevation_pi() const { return pi_ele_; }
    const ControllerConfig &config() const { return config_; }
    const SunModel &model() const { return model_; }
    std::size_t movement_count(std::optional<Axis> axis = std::nullopt) const;

private:
    void finish_cycle(double t_end);

    ControllerConfig config_;
    SunModel model_;
    PiController pi_azi_;
    PiController pi_ele_;
    Offsets offsets_;
    double t_mov_ = -std::numeric_limits<double>::infinity();
    bool parked_ = false;
    TrajectoryRecorder recorder_;
    CycleRecord pending_;
    std::vector<CycleRecord> cycles_;
    std::size_t moves_ori_ = 0;
    std::size_t moves_ele_ = 0;
};

/// Baseline: every `period` seconds move to the uncorrected feed-forward pose.
class OpenLoopController {
public:
    OpenLoopController(const SunModel &model, double period, TrackerPose rest_pose = {0.0, 20.0});

    void on_observation(const PlantObservation &) {}
    void on_tick(const PlantObservation &obs, Actuator &actuator);

    std::size_t movement_count(std::optional<Axis> axis = std::nullopt) const;
    double period() const { return period_; }

private:
    SunModel model_;
    double period_;
    TrackerPose rest_pose_;
    std::optional<double> next_move_;
    bool parked_ = false;
    std::size_t moves_ = 0;
    std::size_t moves_ori_ = 0;
    std::size_t moves_ele_ = 0;
};

/// Offset persistence: `azimuth_offset_deg,elevation_offset_deg,saved_at_utc`.
void save_offsets(std::ostream &out, const Offsets &offsets, double saved_at);
Offsets load_offsets(std::istream &in);

} // namespace suntrack
