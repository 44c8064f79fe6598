#include "suntrack/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <type_traits>

#include "suntrack/angles.hpp"
#include "suntrack/format.hpp"
#include "suntrack/time.hpp"

namespace suntrack {

namespace {

constexpr std::size_t kMaxStoredViolations = 100;

double parse_clock(const std::string &text) {
    int h = 0, m = 0, consumed = 0;
    if (std::sscanf(text.c_str(), "%d:%d%n", &h, &m, &consumed) != 2 ||
        static_cast<std::size_t>(consumed) != text.size() || h < 0 || h > 24 || m < 0 || m > 59)
        throw std::invalid_argument("expected HH:MM, got '" + text + "'");
    return h + m / 60.0;
}

std::string trim(const std::string &s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string::npos) return {};
    return s.substr(first, s.find_last_not_of(" \t") - first + 1);
}

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

// "HH:MM-HH:MM@attenuation", solar time; attenuation defaults to full occlusion.
CloudEvent parse_cloud(const std::string &text, double day_start, double longitude) {
    const auto at = text.find('@');
    const std::string span = trim(text.substr(0, at));
    const auto dash = span.find('-');
    if (dash == std::string::npos) throw std::invalid_argument("cloud event needs START-END: " + text);
    CloudEvent c;
    c.start = utc_from_solar_hours(day_start, parse_clock(trim(span.substr(0, dash))), longitude);
    c.end = utc_from_solar_hours(day_start, parse_clock(trim(span.substr(dash + 1))), longitude);
    c.attenuation = at == std::string::npos ? 1.0 : parse_double(trim(text.substr(at + 1)));
    return c;
}

std::size_t ratio_steps(double period, double base, const char *what) {
    const double r = period / base;
    const auto n = static_cast<std::size_t>(std::llround(r));
    if (n == 0 || std::abs(r - static_cast<double>(n)) > 1e-9)
        throw std::invalid_argument(std::string(what) + " must be a whole multiple of the sensor period");
    return n;
}

} // namespace

double ScenarioConfig::start_utc() const {
    return utc_from_solar_hours(day_start, start_solar_hours, location.longitude());
}

double ScenarioConfig::end_utc() const {
    return utc_from_solar_hours(day_start, end_solar_hours, location.longitude());
}

void ScenarioConfig::validate() const {
    if (!(end_solar_hours > start_solar_hours)) throw std::invalid_argument("scenario must end after it starts");
    if (!(open_loop_period > 0.0)) throw std::invalid_argument("open-loop period must be positive");
    if (!(log_period > 0.0)) throw std::invalid_argument("log period must be positive");
    for (double p : compare_periods)
        if (!(p > 0.0)) throw std::invalid_argument("comparison periods must be positive");
    if (!(scan.step > 0.0 && scan.half_range > 0.0 && scan.samples_per_point > 0))
        throw std::invalid_argument("scan grid parameters must be positive");
    plant.validate();
    controller.validate(plant.effective_optics().alpha);
    ratio_steps(plant.supervisory_period, plant.sensor_period, "supervisory period");
    ratio_steps(log_period, plant.sensor_period, "log period");
    if (start_utc() < ephemeris_valid_from() || end_utc() >= ephemeris_valid_until())
        throw EphemerisRangeError("scenario date outside the ephemeris validity window");
}

ScenarioConfig scenario_from_config(const KeyValueConfig &kv) {
    ScenarioConfig c;
    c.name = kv.get_string("scenario.name", c.name);
    c.day_start = utc_day_start(parse_utc(kv.get_string("scenario.date", "2020-10-02")));
    c.location = ObserverLocation(kv.get_double("location.latitude", 37.41), kv.get_double("location.longitude", -5.98));
    if (auto v = kv.raw("scenario.start")) c.start_solar_hours = parse_clock(*v);
    if (auto v = kv.raw("scenario.end")) c.end_solar_hours = parse_clock(*v);
    const std::string mode = kv.get_string("scenario.mode", "closed_loop");
    if (mode == "closed_loop")
        c.mode = ControlMode::closed_loop;
    else if (mode == "open_loop")
        c.mode = ControlMode::open_loop;
    else
        throw std::invalid_argument("scenario.mode must be closed_loop or open_loop");
    c.open_loop_period = kv.get_double("scenario.open_loop_period", c.open_loop_period);
    c.log_period = kv.get_double("scenario.log_period", c.log_period);

    c.true_rotation = kv.get_double("platform.true_rotation", c.true_rotation);
    c.believed_rotation = kv.get_double("platform.believed_rotation", c.believed_rotation);

    c.peak_dni = kv.get_double("irradiance.peak_dni", c.peak_dni);
    for (const auto &item : split(kv.get_string("irradiance.clouds", ""), ';'))
        c.clouds.push_back(parse_cloud(item, c.day_start, c.location.longitude()));

    auto &o = c.plant.optics;
    o.alpha = kv.get_double("optics.alpha", o.alpha);
    o.eta_peak = kv.get_double("optics.eta_peak", o.eta_peak);
    o.rolloff_sharpness = kv.get_double("optics.rolloff_sharpness", o.rolloff_sharpness);
    o.mount_dx = kv.get_double("optics.mount_dx", o.mount_dx);
    o.mount_dy = kv.get_double("optics.mount_dy", o.mount_dy);

    auto &p = c.plant;
    p.catchment_area = kv.get_double("plant.catchment_area", p.catchment_area);
    p.sensor_period = kv.get_double("plant.sensor_period", p.sensor_period);
    p.supervisory_period = kv.get_double("plant.supervisory_period", p.supervisory_period);
    p.inverter = kv.get_bool("plant.inverter", p.inverter);
    p.inverter_startup_delay = kv.get_double("plant.startup_delay", p.inverter_startup_delay);
    p.inverter_start_threshold = kv.get_double("plant.start_threshold", p.inverter_start_threshold);
    p.alpha_contraction = kv.get_double("plant.alpha_contraction", p.alpha_contraction);
    p.power_noise_fraction = kv.get_double("plant.power_noise", p.power_noise_fraction);
    p.elevation_zero_offset = kv.get_double("plant.elevation_zero_offset", p.elevation_zero_offset);
    p.mppt.enabled = kv.get_bool("mppt.enabled", p.mppt.enabled);
    p.mppt.period = kv.get_double("mppt.period", p.mppt.period);
    p.mppt.depth = kv.get_double("mppt.depth", p.mppt.depth);
    p.mppt.duration = kv.get_double("mppt.duration", p.mppt.duration);
    p.seed = static_cast<std::uint64_t>(kv.get_int("scenario.seed", static_cast<long>(p.seed)));

    auto &k = p.kinematics;
    k.orientation.speed = kv.get_double("kinematics.orientation_speed", k.orientation.speed);
    k.orientation.measurement_resolution =
        kv.get_double("kinematics.orientation_resolution", k.orientation.measurement_resolution);
    k.orientation.accuracy = kv.get_double("kinematics.orientation_accuracy", k.orientation.accuracy);
    k.elevation.speed = kv.get_double("kinematics.elevation_speed", k.elevation.speed);
    k.elevation.measurement_resolution =
        kv.get_double("kinematics.elevation_resolution", k.elevation.measurement_resolution);
    k.elevation.accuracy = kv.get_double("kinematics.elevation_accuracy", k.elevation.accuracy);
    k.orientation_min = kv.get_double("kinematics.orientation_min", k.orientation_min);
    k.orientation_max = kv.get_double("kinematics.orientation_max", k.orientation_max);
    k.elevation_limit = kv.get_double("kinematics.elevation_limit", k.elevation_limit);
    k.elevation_max = kv.get_double("kinematics.elevation_max", k.elevation_max);

    auto &ctl = c.controller;
    ctl.beta = kv.get_double("controller.beta", ctl.beta);
    ctl.prediction_horizon = kv.get_double("controller.prediction_horizon", ctl.prediction_horizon);
    ctl.azimuth_gains.kp = kv.get_double("controller.kp_azimuth", ctl.azimuth_gains.kp);
    ctl.azimuth_gains.ki = kv.get_double("controller.ki_azimuth", ctl.azimuth_gains.ki);
    ctl.elevation_gains.kp = kv.get_double("controller.kp_elevation", ctl.elevation_gains.kp);
    ctl.elevation_gains.ki = kv.get_double("controller.ki_elevation", ctl.elevation_gains.ki);
    ctl.offset_limit = kv.get_double("controller.offset_limit", ctl.offset_limit);
    ctl.fir_taps = static_cast<std::size_t>(kv.get_int("controller.fir_taps", static_cast<long>(ctl.fir_taps)));
    ctl.irradiance_threshold = kv.get_double("controller.irradiance_threshold", ctl.irradiance_threshold);
    ctl.adapt_offsets = kv.get_bool("controller.adapt_offsets", ctl.adapt_offsets);
    ctl.rest_pose.theta_ori = kv.get_double("controller.rest_orientation", ctl.rest_pose.theta_ori);
    ctl.rest_pose.theta_ele = kv.get_double("controller.rest_elevation", ctl.rest_pose.theta_ele);
    ctl.catchment_area = p.catchment_area;
    if (auto file = kv.raw("controller.initial_offsets_file")) {
        std::ifstream in(*file);
        if (!in) throw std::runtime_error("cannot open offsets file " + *file);
        c.initial_offsets = load_offsets(in);
    }
    c.initial_offsets.azimuth = kv.get_double("controller.initial_azimuth_offset", c.initial_offsets.azimuth);
    c.initial_offsets.elevation = kv.get_double("controller.initial_elevation_offset", c.initial_offsets.elevation);

    auto &a = ctl.analyzer;
    a.threshold_fraction = kv.get_double("analyzer.threshold_fraction", a.threshold_fraction);
    a.low_eff_floor = kv.get_double("analyzer.low_efficiency_floor", a.low_eff_floor);
    a.min_samples = static_cast<std::size_t>(kv.get_int("analyzer.min_samples", static_cast<long>(a.min_samples)));
    a.endpoint_window = kv.get_double("analyzer.endpoint_window", a.endpoint_window);
    a.monotone_tolerance = kv.get_double("analyzer.monotone_tolerance", a.monotone_tolerance);

    if (auto v = kv.raw("compare.open_loop_periods")) {
        c.compare_periods.clear();
        for (const auto &item : split(*v, ',')) c.compare_periods.push_back(parse_double(item));
    }

    if (auto v = kv.raw("scan.time")) c.scan.solar_hours = parse_clock(*v);
    c.scan.half_range = kv.get_double("scan.half_range", c.scan.half_range);
    c.scan.step = kv.get_double("scan.step", c.scan.step);
    c.scan.samples_per_point = static_cast<int>(kv.get_int("scan.samples_per_point", c.scan.samples_per_point));
    c.scan.inverter_active = kv.get_bool("scan.inverter_active", c.scan.inverter_active);

    const auto unused = kv.unused_keys();
    if (!unused.empty()) throw std::invalid_argument("unknown configuration key: " + unused.front());
    c.validate();
    return c;
}

ScenarioConfig load_scenario(const std::filesystem::path &path, const std::vector<std::string> &overrides) {
    KeyValueConfig kv = KeyValueConfig::load(path);
    for (const auto &o : overrides) kv.set(o);
    ScenarioConfig c = scenario_from_config(kv);
    if (!kv.has("scenario.name")) c.name = path.stem().string();
    return c;
}

namespace {

IrradianceProfile make_irradiance(const ScenarioConfig &cfg) {
    return IrradianceProfile(cfg.location, cfg.day_start, cfg.peak_dni, cfg.clouds);
}

PlantConfig make_plant_config(const ScenarioConfig &cfg) {
    PlantConfig p = cfg.plant;
    p.true_frame = platform_frame_from_rotation_matrix(cfg.true_rotation);
    return p;
}

template <class Controller>
ScenarioResult simulate(const ScenarioConfig &cfg, Controller &ctl) {
    constexpr bool closed = std::is_same_v<Controller, ClosedLoopController>;
    ScenarioResult result;
    result.config = cfg;

    const double t0 = cfg.start_utc();
    const double dt = cfg.plant.sensor_period;
    const std::size_t per_tick = ratio_steps(cfg.plant.supervisory_period, dt, "supervisory period");
    const std::size_t per_log = ratio_steps(cfg.log_period, dt, "log period");
    const auto steps = static_cast<std::size_t>(std::llround((cfg.end_utc() - t0) / dt));
    const auto &lim = cfg.plant.kinematics;

    Plant plant(make_plant_config(cfg), cfg.location, make_irradiance(cfg), t0, cfg.controller.rest_pose);
    PlantObservation obs = plant.last_observation();

    auto offsets = [&]() -> Offsets {
        if constexpr (closed)
            return ctl.offsets();
        else
            return {};
    };
    auto violation = [&](const std::string &what) {
        ++result.metrics.invariant_violations;
        if (result.violations.size() < kMaxStoredViolations)
            result.violations.push_back(format_utc(plant.time()) + " " + what);
    };

    result.log.reserve(steps / per_log + 1);
    result.dwell.reserve(steps / per_log + 1);
    for (std::size_t i = 0; i < steps; ++i) {
        if (i % per_tick == 0) ctl.on_tick(obs, plant);
        if (i % per_log == 0) {
            const Offsets o = offsets();
            result.log.push_back({obs.t, obs.dni, obs.power, obs.measured.theta_ori, obs.measured.theta_ele,
                                  o.azimuth, o.elevation});
            bool busy = plant.tracker().moving();
            std::size_t done = 0;
            if constexpr (closed) {
                busy = busy || ctl.moving();
                done = ctl.cycles().size();
            }
            result.dwell.push_back(
                {obs.t, plant.true_projection(), solar_position(obs.t, cfg.location).elevation, busy, done});
        }
        obs = plant.advance(dt);
        ctl.on_observation(obs);

        const double ceiling = cfg.plant.optics.eta_peak * obs.dni * cfg.plant.catchment_area;
        if (!std::isfinite(obs.power) || obs.power < 0.0 || obs.power > ceiling)
            violation("power outside [0, eta_peak * DNI * S_c]");
        const TrackerPose pose = plant.tracker().pose();
        if (pose.theta_ele < lim.elevation_limit - 1e-9 || pose.theta_ele > lim.elevation_max + 1e-9)
            violation("elevation outside the software limits");
        if (pose.theta_ori < lim.orientation_min - 1e-9 || pose.theta_ori > lim.orientation_max + 1e-9)
            violation("orientation outside the travel range");
        const Offsets o = offsets();
        if (!std::isfinite(o.azimuth) || !std::isfinite(o.elevation) ||
            std::abs(o.azimuth) > cfg.controller.offset_limit || std::abs(o.elevation) > cfg.controller.offset_limit)
            violation("offset outside the PI clamp");
    }

    DayMetrics m = log_metrics(result.log, cfg.plant.catchment_area, cfg.controller.irradiance_threshold,
                               cfg.log_period);
    m.invariant_violations = result.metrics.invariant_violations;
    if (m.mean_daylight_efficiency < 0.0 || m.mean_daylight_efficiency > 1.0) {
        ++m.invariant_violations;
        result.violations.push_back("mean daylight efficiency outside [0, 1]");
    }
    m.movements_orientation = ctl.movement_count(Axis::orientation);
    m.movements_elevation = ctl.movement_count(Axis::elevation);
    m.movements = ctl.movement_count();
    if constexpr (closed) {
        result.cycles = ctl.cycles();
        m.cycles = result.cycles.size();
        for (const auto &c : result.cycles) {
            ++m.labels_orientation[label_name(c.orientation_estimate.label)];
            ++m.labels_elevation[label_name(c.elevation_estimate.label)];
            m.accepted_orientation += c.azimuth_updated ? 1 : 0;
            m.accepted_elevation += c.elevation_updated ? 1 : 0;
        }
        m.final_offsets = ctl.offsets();
    }
    result.metrics = m;
    return result;
}

} // namespace

ScenarioResult run_scenario(const ScenarioConfig &config) {
    config.validate();
    const SunModel model(config.location, config.believed_frame(), config.plant.kinematics);
    if (config.mode == ControlMode::closed_loop) {
        ControllerConfig cc = config.controller;
        cc.catchment_area = config.plant.catchment_area;
        ClosedLoopController ctl(cc, model, config.initial_offsets);
        return simulate(config, ctl);
    }
    OpenLoopController ctl(model, config.open_loop_period, config.controller.rest_pose);
    return simulate(config, ctl);
}

DayMetrics log_metrics(const std::vector<LogRecord> &log, double catchment_area, double irradiance_threshold,
                       double log_period) {
    DayMetrics m;
    double eff_sum = 0.0;
    double energy = 0.0;
    bool first = true;
    for (const auto &r : log) {
        energy += r.p_dc * log_period / 3600.0;
        if (r.dni > irradiance_threshold) {
            eff_sum += r.p_dc / (r.dni * catchment_area);
            ++m.daylight_samples;
        }
        if (first) {
            m.offset_azi_min = m.offset_azi_max = r.offset_azi;
            m.offset_ele_min = m.offset_ele_max = r.offset_ele;
            first = false;
        }
        m.offset_azi_min = std::min(m.offset_azi_min, r.offset_azi);
        m.offset_azi_max = std::max(m.offset_azi_max, r.offset_azi);
        m.offset_ele_min = std::min(m.offset_ele_min, r.offset_ele);
        m.offset_ele_max = std::max(m.offset_ele_max, r.offset_ele);
    }
    m.mean_daylight_efficiency = m.daylight_samples ? eff_sum / static_cast<double>(m.daylight_samples) : 0.0;
    m.energy_wh = energy;
    if (!log.empty()) m.final_offsets = {log.back().offset_azi, log.back().offset_ele};
    return m;
}

void write_plant_log(std::ostream &out, const std::vector<LogRecord> &log, double longitude) {
    out << "t,dni,p_dc,theta_ori,theta_ele,offset_azi,offset_ele,solar_time\n";
    char solar[32];
    for (const auto &r : log) {
        std::snprintf(solar, sizeof solar, "%.6f", solar_hours(r.t, longitude));
        out << format_double(r.t) << ',' << format_double(r.dni) << ',' << format_double(r.p_dc) << ','
            << format_double(r.theta_ori) << ',' << format_double(r.theta_ele) << ','
            << format_double(r.offset_azi) << ',' << format_double(r.offset_ele) << ',' << solar << '\n';
    }
}

std::vector<LogRecord> read_plant_log(std::istream &in) {
    std::vector<LogRecord> out;
    std::string line;
    if (!std::getline(in, line)) return out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        double v[7];
        for (double &x : v) {
            if (!std::getline(ss, cell, ',')) throw std::runtime_error("short plant log row: " + line);
            x = parse_double(cell);
        }
        out.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6]});
    }
    return out;
}

void write_cycle_log(std::ostream &out, const std::vector<CycleRecord> &cycles) {
    out << "movement_index,t_start,t_end,t_mov,ts_hat,label_ori,label_ele,theta_hat_ori,theta_hat_ele,"
           "error_azi,error_ele,updated_azi,updated_ele,offset_azi,offset_ele\n";
    for (const auto &c : cycles) {
        out << c.index << ',' << format_double(c.t_start) << ',' << format_double(c.t_end) << ','
            << format_double(c.prediction.t_mov) << ',' << (c.ts_hat ? format_double(*c.ts_hat) : "") << ','
            << label_name(c.orientation_estimate.label) << ',' << label_name(c.elevation_estimate.label) << ','
            << format_double(c.orientation_estimate.theta_hat) << ',' << format_double(c.elevation_estimate.theta_hat)
            << ',' << format_double(c.azimuth_error) << ',' << format_double(c.elevation_error) << ','
            << (c.azimuth_updated ? 1 : 0) << ',' << (c.elevation_updated ? 1 : 0) << ','
            << format_double(c.after.azimuth) << ',' << format_double(c.after.elevation) << '\n';
    }
}

void write_metrics(std::ostream &out, const DayMetrics &m) {
    out << "mean_daylight_efficiency=" << format_double(m.mean_daylight_efficiency) << '\n'
        << "energy_wh=" << format_double(m.energy_wh) << '\n'
        << "daylight_samples=" << m.daylight_samples << '\n'
        << "movements=" << m.movements << '\n'
        << "movements_orientation=" << m.movements_orientation << '\n'
        << "movements_elevation=" << m.movements_elevation << '\n'
        << "cycles=" << m.cycles << '\n'
        << "accepted_orientation=" << m.accepted_orientation << '\n'
        << "accepted_elevation=" << m.accepted_elevation << '\n';
    for (const auto &[label, n] : m.labels_orientation) out << "labels_orientation." << label << '=' << n << '\n';
    for (const auto &[label, n] : m.labels_elevation) out << "labels_elevation." << label << '=' << n << '\n';
    out << "final_offset_azi=" << format_double(m.final_offsets.azimuth) << '\n'
        << "final_offset_ele=" << format_double(m.final_offsets.elevation) << '\n'
        << "offset_azi_min=" << format_double(m.offset_azi_min) << '\n'
        << "offset_azi_max=" << format_double(m.offset_azi_max) << '\n'
        << "offset_ele_min=" << format_double(m.offset_ele_min) << '\n'
        << "offset_ele_max=" << format_double(m.offset_ele_max) << '\n'
        << "invariant_violations=" << m.invariant_violations << '\n';
}

std::map<std::string, std::string> read_metrics(std::istream &in) {
    std::map<std::string, std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        if (eq != std::string::npos) out[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return out;
}

namespace {

std::ofstream open_out(const std::filesystem::path &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

} // namespace

void write_artifacts(const ScenarioResult &result, const std::filesystem::path &dir) {
    std::filesystem::create_directories(dir);
    {
        auto out = open_out(dir / "plant_log.csv");
        write_plant_log(out, result.log, result.config.location.longitude());
    }
    if (result.config.mode == ControlMode::closed_loop) {
        {
            auto out = open_out(dir / "trajectories.csv");
            write_trajectory_csv_header(out);
            for (const auto &c : result.cycles) {
                write_trajectory_csv_rows(out, c.orientation);
                write_trajectory_csv_rows(out, c.elevation);
            }
        }
        {
            auto out = open_out(dir / "offsets.csv");
            write_cycle_log(out, result.cycles);
        }
        {
            auto out = open_out(dir / "final_offsets.csv");
            save_offsets(out, result.metrics.final_offsets, result.config.end_utc());
        }
    }
    auto out = open_out(dir / "metrics.txt");
    write_metrics(out, result.metrics);
}

double ComparisonResult::relative_gain(std::size_t i) const {
    return closed_loop.metrics.mean_daylight_efficiency / open_loop.at(i).metrics.mean_daylight_efficiency - 1.0;
}

double ComparisonResult::movement_ratio(std::size_t i) const {
    return static_cast<double>(closed_loop.metrics.movements) /
           static_cast<double>(open_loop.at(i).metrics.movements);
}

ComparisonResult run_comparison(const ScenarioConfig &config) {
    ComparisonResult r;
    ScenarioConfig closed = config;
    closed.mode = ControlMode::closed_loop;
    r.closed_loop = run_scenario(closed);
    for (double period : config.compare_periods) {
        ScenarioConfig open = config;
        open.mode = ControlMode::open_loop;
        open.open_loop_period = period;
        r.open_loop.push_back(run_scenario(open));
    }
    return r;
}

void write_comparison_report(std::ostream &out, const ComparisonResult &r) {
    char buf[256];
    const auto &c = r.closed_loop.metrics;
    std::snprintf(buf, sizeof buf, "closed_loop efficiency=%.5f energy_wh=%.1f movements=%zu\n",
                  c.mean_daylight_efficiency, c.energy_wh, c.movements);
    out << buf;
    for (std::size_t i = 0; i < r.open_loop.size(); ++i) {
        const auto &o = r.open_loop[i].metrics;
        std::snprintf(buf, sizeof buf,
                      "open_loop_%gs efficiency=%.5f energy_wh=%.1f movements=%zu gain=%.2f%% movement_ratio=%.3f\n",
                      r.open_loop[i].config.open_loop_period, o.mean_daylight_efficiency, o.energy_wh, o.movements,
                      100.0 * r.relative_gain(i), r.movement_ratio(i));
        out << buf;
    }
}

void write_comparison_artifacts(const ComparisonResult &r, const std::filesystem::path &dir) {
    std::filesystem::create_directories(dir);
    write_artifacts(r.closed_loop, dir / "closed_loop");
    for (const auto &o : r.open_loop)
        write_artifacts(o, dir / ("open_loop_" + format_double(o.config.open_loop_period)));
    auto out = open_out(dir / "comparison.txt");
    write_comparison_report(out, r);
}

double half_width_at(const std::vector<double> &u, const std::vector<double> &value, double level) {
    if (u.size() != value.size() || u.size() < 3) throw std::invalid_argument("profile needs matching samples");
    // Peak from a lightly smoothed copy so the normalization is not biased by
    // the largest noise excursion.
    const auto kernel = moving_average_kernel(5);
    const auto smooth_v = filter_zero_phase(value, kernel);
    const auto peak_it = std::max_element(smooth_v.begin(), smooth_v.end());
    const double cut = level * *peak_it;
    const auto peak = static_cast<std::size_t>(peak_it - smooth_v.begin());
    auto crossing = [&](std::size_t inside, std::size_t outside) {
        const double f = (value[inside] - cut) / (value[inside] - value[outside]);
        return u[inside] + f * (u[outside] - u[inside]);
    };
    std::size_t r = peak;
    while (r + 1 < u.size() && value[r + 1] >= cut) ++r;
    std::size_t l = peak;
    while (l > 0 && value[l - 1] >= cut) --l;
    if (r + 1 == u.size() || l == 0) throw std::runtime_error("profile does not fall below the level inside the scan");
    return 0.5 * std::abs(crossing(r, r + 1) - crossing(l, l - 1));
}

ScanResult run_surface_scan(const ScenarioConfig &config) {
    config.validate();
    PlantConfig pc = make_plant_config(config);
    if (config.scan.inverter_active) {
        // Contraction only: the gate and ripple would corrupt a static scan.
        pc.inverter = true;
        pc.inverter_startup_delay = 0.0;
        pc.mppt.enabled = false;
    } else {
        pc.inverter = false;
    }
    const double t = utc_from_solar_hours(config.day_start, config.scan.solar_hours, config.location.longitude());
    const SolarAngles sun = solar_position(t, config.location);
    const auto &lim = pc.kinematics;
    if (sun.elevation - pc.elevation_zero_offset - config.scan.half_range < lim.elevation_limit)
        throw std::invalid_argument("scan window reaches below the elevation software limit");
    const TrackerPose center{azimuth_to_orientation(sun.azimuth, pc.true_frame),
                             sun.elevation - pc.elevation_zero_offset};

    Plant plant(pc, config.location, IrradianceProfile(config.location, config.day_start, config.peak_dni), t,
                center);
    ScanResult r;
    r.configured_alpha = pc.effective_optics().alpha;
    const auto n = static_cast<long>(std::llround(config.scan.half_range / config.scan.step));
    const double ori_scale = 1.0 / std::cos(sun.elevation * kDegToRad);
    r.columns = r.rows = static_cast<std::size_t>(2 * n + 1);
    r.grid.reserve(r.rows * r.columns);
    for (long j = -n; j <= n; ++j) {
        for (long i = -n; i <= n; ++i) {
            ScanPoint pt;
            pt.d_ori = static_cast<double>(i) * config.scan.step * ori_scale;
            pt.d_ele = static_cast<double>(j) * config.scan.step;
            const TrackerPose pose{center.theta_ori + pt.d_ori, center.theta_ele + pt.d_ele};
            pt.projection = plant.projection(t, pose);
            double sum = 0.0;
            for (int s = 0; s < config.scan.samples_per_point; ++s) sum += plant.sample_power(t, pose);
            pt.power = sum / config.scan.samples_per_point;
            r.grid.push_back(pt);
        }
    }

    const auto mid = static_cast<std::size_t>(n);
    std::vector<double> u, v;
    for (std::size_t i = 0; i < r.columns; ++i) {
        const auto &pt = r.grid[mid * r.columns + i];
        u.push_back(pt.projection.x);
        v.push_back(pt.power);
    }
    r.alpha_x = half_width_at(u, v);
    u.clear();
    v.clear();
    for (std::size_t j = 0; j < r.rows; ++j) {
        const auto &pt = r.grid[j * r.columns + mid];
        u.push_back(pt.projection.y);
        v.push_back(pt.power);
    }
    r.alpha_y = half_width_at(u, v);
    return r;
}

void write_scan_csv(std::ostream &out, const ScanResult &scan) {
    out << "d_ori,d_ele,x,y,p\n";
    for (const auto &pt : scan.grid)
        out << format_double(pt.d_ori) << ',' << format_double(pt.d_ele) << ',' << format_double(pt.projection.x)
            << ',' << format_double(pt.projection.y) << ',' << format_double(pt.power) << '\n';
}

void write_scan_summary(std::ostream &out, const ScanResult &scan) {
    out << "configured_alpha=" << format_double(scan.configured_alpha) << '\n'
        << "recovered_alpha=" << format_double(scan.alpha()) << '\n'
        << "recovered_alpha_x=" << format_double(scan.alpha_x) << '\n'
        << "recovered_alpha_y=" << format_double(scan.alpha_y) << '\n'
        << "grid_points=" << scan.grid.size() << '\n';
}

} // namespace suntrack
