#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "suntrack/ephemeris.hpp"
#include "suntrack/frames.hpp"
#include "suntrack/kinematics.hpp"
#include "suntrack/optics.hpp"

namespace suntrack {

struct CloudEvent {
    double start = 0.0;        // UTC seconds
    double end = 0.0;          // UTC seconds, exclusive
    double attenuation = 1.0;  // fraction of DNI removed, [0, 1]
};

/// Clear-sky DNI as a raised cosine between sunrise and sunset of one UTC day,
/// attenuated by cloud events.
class IrradianceProfile {
public:
    IrradianceProfile(const ObserverLocation &location, double day_start_utc, double peak_dni = 850.0,
                      std::vector<CloudEvent> clouds = {});

    double dni_at(double t) const;
    double clear_sky_at(double t) const;

    double sunrise() const { return sunrise_; }
    double sunset() const { return sunset_; }
    double peak_dni() const { return peak_dni_; }
    const std::vector<CloudEvent> &clouds() const { return clouds_; }

private:
    double peak_dni_;
    double sunrise_ = 0.0;
    double sunset_ = 0.0;
    std::vector<CloudEvent> clouds_;
};

struct MpptRipple {
    bool enabled = true;
    double period = 600.0;   // s between dips
    double depth = 0.25;     // fractional power loss during a dip
    double duration = 10.0;  // s
};

struct PlantConfig {
    double catchment_area = 9.3;       // m^2
    double sensor_period = 0.125;      // s
    double supervisory_period = 0.25;  // s
    bool inverter = true;              // false: resistive load, no gate/ripple/contraction
    double inverter_startup_delay = 120.0;
    double inverter_start_threshold = 100.0;  // W/m^2
    double alpha_contraction = 0.5;           // applied while the inverter is in circuit
    MpptRipple mppt;
    double power_noise_fraction = 0.01;  // sigma of multiplicative Gaussian noise on P
    double elevation_zero_offset = 0.0;  // deg added to the true wing elevation
    PlatformFrame true_frame;
    ConcentratorSpec optics;
    KinematicsConfig kinematics;
    std::uint64_t seed = 1;

    void validate() const;
    /// Concentrator as seen through the current load (contracted with inverter).
    ConcentratorSpec effective_optics() const;
};

struct PlantObservation {
    double t = 0.0;        // time of the held sensor sample
    double power = 0.0;    // W
    double dni = 0.0;      // W/m^2
    TrackerPose measured;  // quantized joint coordinates
    std::optional<Axis> moving;  // axis that moved since the previous observation
    bool inverter_on = false;
};

/// Actuation surface the controllers drive.
class Actuator {
public:
    virtual ~Actuator() = default;
    virtual MotionPlan command_move(const TrackerPose &target) = 0;
};

/// The world the controller acts on. Owns the clock, the tracker, the inverter
/// state machine and the single seeded random generator.
class Plant : public Actuator {
public:
    Plant(const PlantConfig &config, const ObserverLocation &location, IrradianceProfile irradiance,
          double start_time, const TrackerPose &initial_pose);

    PlantObservation advance(double dt);

    /// Starts a move; terminal positioning errors are drawn here.
    MotionPlan command_move(const TrackerPose &target) override;

    double dni_at(double t) const { return irradiance_.dni_at(t); }

    /// Noise-free DC power for `pose` at `t` under the current inverter state,
    /// including the MPPT dip factor.
    double dc_power(double t, const TrackerPose &pose) const;

    /// eta_peak * relative_efficiency * DNI * S_c, no gating or ripple.
    double ideal_power(double t, const TrackerPose &pose) const;

    /// dc_power with the sensor noise drawn from the plant generator.
    double sample_power(double t, const TrackerPose &pose);

    double ripple_factor(double t) const;
    CellProjection projection(double t, const TrackerPose &pose) const;
    CellProjection true_projection() const { return projection(time_, tracker_.pose()); }

    double time() const { return time_; }
    bool inverter_on() const { return inverter_on_; }
    const Tracker &tracker() const { return tracker_; }
    const PlantConfig &config() const { return config_; }
    const ObserverLocation &location() const { return location_; }
    const IrradianceProfile &irradiance() const { return irradiance_; }
    const PlantObservation &last_observation() const { return observation_; }

private:
    void sample();
    void update_inverter(double t, double dni);

    PlantConfig config_;
    ObserverLocation location_;
    IrradianceProfile irradiance_;
    ConcentratorSpec optics_;
    Tracker tracker_;
    std::mt19937_64 rng_;
    double time_;
    double next_sample_;
    std::optional<double> above_threshold_since_;
    bool inverter_on_ = false;
    double inverter_on_since_ = 0.0;
    std::optional<Axis> moved_since_sample_;
    PlantObservation observation_;
};

} // namespace suntrack
