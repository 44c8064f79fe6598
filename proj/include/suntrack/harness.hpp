#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "suntrack/config.hpp"
#include "suntrack/controller.hpp"
#include "suntrack/plant.hpp"

namespace suntrack {

enum class ControlMode { closed_loop, open_loop };

struct ScanConfig {
    double solar_hours = 12.0;  // scan instant, display solar time
    double half_range = 2.5;    // deg around the sun projection
    double step = 0.05;         // deg
    int samples_per_point = 4;
    bool inverter_active = false;
};

/// One simulated day. Platform rotations are rotation-matrix angles about the
/// upward Z axis; see platform_frame_from_rotation_matrix.
struct ScenarioConfig {
    std::string name = "scenario";
    double day_start = 0.0;  // UTC midnight of the simulated date
    ObserverLocation location{37.41, -5.98};
    double start_solar_hours = 8.0;
    double end_solar_hours = 16.0;
    double true_rotation = 180.0;
    double believed_rotation = 180.0;
    ControlMode mode = ControlMode::closed_loop;
    double open_loop_period = 60.0;
    double peak_dni = 850.0;
    std::vector<CloudEvent> clouds;
    PlantConfig plant;
    ControllerConfig controller;
    Offsets initial_offsets;
    double log_period = 1.0;
    std::vector<double> compare_periods{60.0, 120.0};
    ScanConfig scan;

    double start_utc() const;
    double end_utc() const;
    PlatformFrame believed_frame() const { return platform_frame_from_rotation_matrix(believed_rotation); }
    void validate() const;
};

/// Builds a scenario from parsed key-value text. Unknown keys are errors.
ScenarioConfig scenario_from_config(const KeyValueConfig &kv);
ScenarioConfig load_scenario(const std::filesystem::path &path, const std::vector<std::string> &overrides = {});

/// One row of the plant log.
struct LogRecord {
    double t = 0.0;
    double dni = 0.0;
    double p_dc = 0.0;
    double theta_ori = 0.0;
    double theta_ele = 0.0;
    double offset_azi = 0.0;
    double offset_ele = 0.0;
};

/// True sun projection on the cell at each log instant.
struct DwellSample {
    double t = 0.0;
    CellProjection projection;
    double sun_elevation = 0.0;
    bool moving = false;  // tracker moving or a control sequence still open
    std::size_t cycles_done = 0;
};

struct DayMetrics {
    double mean_daylight_efficiency = 0.0;
    double energy_wh = 0.0;
    std::size_t daylight_samples = 0;
    std::size_t movements = 0;
    std::size_t movements_orientation = 0;
    std::size_t movements_elevation = 0;
    std::size_t cycles = 0;
    std::size_t accepted_orientation = 0;
    std::size_t accepted_elevation = 0;
    std::map<std::string, std::size_t> labels_orientation;
    std::map<std::string, std::size_t> labels_elevation;
    Offsets final_offsets;
    double offset_azi_min = 0.0;
    double offset_azi_max = 0.0;
    double offset_ele_min = 0.0;
    double offset_ele_max = 0.0;
    std::size_t invariant_violations = 0;
};

struct ScenarioResult {
    ScenarioConfig config;
    DayMetrics metrics;
    std::vector<LogRecord> log;
    std::vector<DwellSample> dwell;
    std::vector<CycleRecord> cycles;  // closed loop only
    std::vector<std::string> violations;
};

ScenarioResult run_scenario(const ScenarioConfig &config);

/// Mean of P / (DNI * S_c) over records with DNI above the threshold, and the
/// integrated energy. Used both in memory and on parsed CSVs.
DayMetrics log_metrics(const std::vector<LogRecord> &log, double catchment_area, double irradiance_threshold,
                       double log_period);

void write_plant_log(std::ostream &out, const std::vector<LogRecord> &log, double longitude);
std::vector<LogRecord> read_plant_log(std::istream &in);
void write_cycle_log(std::ostream &out, const std::vector<CycleRecord> &cycles);
void write_metrics(std::ostream &out, const DayMetrics &m);
std::map<std::string, std::string> read_metrics(std::istream &in);

/// plant_log.csv, trajectories.csv, offsets.csv, final_offsets.csv, metrics.txt.
void write_artifacts(const ScenarioResult &result, const std::filesystem::path &dir);

struct ComparisonResult {
    ScenarioResult closed_loop;
    std::vector<ScenarioResult> open_loop;  // one per compare period
    double relative_gain(std::size_t open_index) const;
    double movement_ratio(std::size_t open_index) const;
};

/// Closed loop against open loop at each configured period, same plant and seed.
ComparisonResult run_comparison(const ScenarioConfig &config);
void write_comparison_report(std::ostream &out, const ComparisonResult &result);
void write_comparison_artifacts(const ComparisonResult &result, const std::filesystem::path &dir);

struct ScanPoint {
    double d_ori = 0.0;  // pose displacement from the sun-pointing pose, deg
    double d_ele = 0.0;
    CellProjection projection;
    double power = 0.0;
};

struct ScanResult {
    std::vector<ScanPoint> grid;  // row-major: d_ele outer, d_ori inner
    std::size_t columns = 0;
    std::size_t rows = 0;
    double alpha_x = 0.0;  // 90% half-width along x
    double alpha_y = 0.0;
    double configured_alpha = 0.0;  // effective alpha under the scan's load
    double alpha() const { return 0.5 * (alpha_x + alpha_y); }
};

/// Raster scan around the sun at a fixed instant; recovers the half-acceptance
/// angle from the 90% crossings of the central row and column.
ScanResult run_surface_scan(const ScenarioConfig &config);
void write_scan_csv(std::ostream &out, const ScanResult &scan);
void write_scan_summary(std::ostream &out, const ScanResult &scan);

/// 90% half-width of a sampled one-dimensional profile, crossings found by
/// linear interpolation outward from the peak.
double half_width_at(const std::vector<double> &u, const std::vector<double> &value, double level = 0.9);

} // namespace suntrack
