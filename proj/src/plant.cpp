#include "suntrack/plant.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace suntrack {

namespace {

// Bisection on the sign of the solar elevation; `lo` and `hi` must bracket it.
double horizon_crossing(const ObserverLocation &location, double lo, double hi) {
    const bool rising = solar_position(lo, location).elevation < 0.0;
    for (int i = 0; i < 60 && hi - lo > 1e-3; ++i) {
        const double mid = 0.5 * (lo + hi);
        const bool below = solar_position(mid, location).elevation < 0.0;
        if (below == rising)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

IrradianceProfile::IrradianceProfile(const ObserverLocation &location, double day_start_utc,
                                     double peak_dni, std::vector<CloudEvent> clouds)
    : peak_dni_(peak_dni), clouds_(std::move(clouds)) {
    if (!(peak_dni >= 0.0)) throw std::invalid_argument("peak DNI must be non-negative");
    for (const auto &c : clouds_) {
        if (!(c.attenuation >= 0.0 && c.attenuation <= 1.0))
            throw std::invalid_argument("cloud attenuation must be within [0, 1]");
        if (!(c.end >= c.start)) throw std::invalid_argument("cloud event ends before it starts");
    }
    const double noon = day_start_utc + (12.0 - location.longitude() / 15.0) * 3600.0;
    const double noon_elevation = solar_position(noon, location).elevation;
    const double before = solar_position(noon - 12.0 * 3600.0, location).elevation;
    const double after = solar_position(noon + 12.0 * 3600.0, location).elevation;
    if (noon_elevation <= 0.0 || before >= 0.0 || after >= 0.0) {
        // Polar night or midnight sun: no raised-cosine day to speak of.
        sunrise_ = sunset_ = noon;
        return;
    }
    sunrise_ = horizon_crossing(location, noon - 12.0 * 3600.0, noon);
    sunset_ = horizon_crossing(location, noon, noon + 12.0 * 3600.0);
}

double IrradianceProfile::clear_sky_at(double t) const {
    if (t <= sunrise_ || t >= sunset_) return 0.0;
    const double phase = (t - sunrise_) / (sunset_ - sunrise_);
    return peak_dni_ * 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * phase));
}

double IrradianceProfile::dni_at(double t) const {
    double dni = clear_sky_at(t);
    for (const auto &c : clouds_)
        if (t >= c.start && t < c.end) dni *= 1.0 - c.attenuation;
    return std::max(dni, 0.0);
}

void PlantConfig::validate() const {
    if (!(catchment_area > 0.0)) throw std::invalid_argument("catchment area must be positive");
    if (!(sensor_period > 0.0 && supervisory_period > 0.0))
        throw std::invalid_argument("sample periods must be positive");
    if (!(inverter_startup_delay >= 0.0)) throw std::invalid_argument("startup delay must be >= 0");
    if (!(alpha_contraction > 0.0 && alpha_contraction <= 1.0))
        throw std::invalid_argument("alpha contraction must be within (0, 1]");
    if (mppt.enabled) {
        if (!(mppt.period > 0.0)) throw std::invalid_argument("MPPT period must be positive");
        if (!(mppt.depth >= 0.0 && mppt.depth < 1.0)) throw std::invalid_argument("MPPT depth must be in [0, 1)");
        if (!(mppt.duration >= 0.0 && mppt.duration <= mppt.period))
            throw std::invalid_argument("MPPT dip duration must be within [0, period]");
    }
    if (!(power_noise_fraction >= 0.0)) throw std::invalid_argument("noise sigma must be >= 0");
    optics.validate();
    kinematics.validate();
}

ConcentratorSpec PlantConfig::effective_optics() const {
    return inverter ? optics.contracted(alpha_contraction) : optics;
}

Plant::Plant(const PlantConfig &config, const ObserverLocation &location, IrradianceProfile irradiance,
             double start_time, const TrackerPose &initial_pose)
    : config_(config), location_(location), irradiance_(std::move(irradiance)),
      optics_(config.effective_optics()), tracker_(config.kinematics, initial_pose), rng_(config.seed),
      time_(start_time), next_sample_(start_time) {
    config_.validate();
    sample();
}

CellProjection Plant::projection(double t, const TrackerPose &pose) const {
    const TrackerPose wing{pose.theta_ori, pose.theta_ele + config_.elevation_zero_offset};
    return project_sun(solar_position(t, location_), wing, config_.true_frame, optics_);
}

double Plant::ideal_power(double t, const TrackerPose &pose) const {
    const double dni = irradiance_.dni_at(t);
    if (dni <= 0.0) return 0.0;
    return optics_.eta_peak * relative_efficiency(projection(t, pose), optics_) * dni *
           config_.catchment_area;
}

double Plant::ripple_factor(double t) const {
    if (!config_.inverter || !config_.mppt.enabled || !inverter_on_) return 1.0;
    const double phase = std::fmod(t - inverter_on_since_, config_.mppt.period);
    return phase >= config_.mppt.period - config_.mppt.duration ? 1.0 - config_.mppt.depth : 1.0;
}

double Plant::dc_power(double t, const TrackerPose &pose) const {
    if (!inverter_on_) return 0.0;
    return ideal_power(t, pose) * ripple_factor(t);
}

void Plant::update_inverter(double t, double dni) {
    if (!config_.inverter) {
        inverter_on_ = true;
        return;
    }
    if (dni > config_.inverter_start_threshold) {
        if (!above_threshold_since_) above_threshold_since_ = t;
        if (!inverter_on_ && t - *above_threshold_since_ >= config_.inverter_startup_delay) {
            inverter_on_ = true;
            inverter_on_since_ = t;
        }
    } else {
        above_threshold_since_.reset();
        inverter_on_ = false;
    }
}

double Plant::sample_power(double t, const TrackerPose &pose) {
    double power = dc_power(t, pose);
    if (power > 0.0 && config_.power_noise_fraction > 0.0) {
        std::normal_distribution<double> noise(0.0, config_.power_noise_fraction);
        power *= 1.0 + noise(rng_);
    }
    const double ceiling = config_.optics.eta_peak * irradiance_.dni_at(t) * config_.catchment_area;
    return std::clamp(power, 0.0, ceiling);
}

void Plant::sample() {
    const double t = next_sample_;
    const double dni = irradiance_.dni_at(t);
    update_inverter(t, dni);
    const double power = sample_power(t, tracker_.pose());

    observation_ = {t, power, dni, tracker_.measure_pose(), moved_since_sample_, inverter_on_};
    moved_since_sample_.reset();
    next_sample_ += config_.sensor_period;
}

PlantObservation Plant::advance(double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("advance requires dt > 0");
    const StepReport report = tracker_.step(dt);
    if (report.moved) moved_since_sample_ = report.moved;
    time_ += dt;
    while (next_sample_ <= time_ + 1e-9) sample();
    return observation_;
}

MotionPlan Plant::command_move(const TrackerPose &target) {
    const auto &k = config_.kinematics;
    std::uniform_real_distribution<double> ori(-k.orientation.accuracy, k.orientation.accuracy);
    std::uniform_real_distribution<double> ele(-k.elevation.accuracy, k.elevation.accuracy);
    const TrackerPose error{k.orientation.accuracy > 0.0 ? ori(rng_) : 0.0,
                            k.elevation.accuracy > 0.0 ? ele(rng_) : 0.0};
    return tracker_.command_move(target, error);
}

} // namespace suntrack
