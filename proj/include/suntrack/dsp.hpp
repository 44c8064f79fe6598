#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "suntrack/kinematics.hpp"
#include "suntrack/plant.hpp"

namespace suntrack {

struct TrajectorySample {
    double ts = 0.0;     // s
    double power = 0.0;  // W
    double irr = 0.0;    // W/m^2
    double theta = 0.0;  // moving-axis coordinate, deg
};

/// Samples taken during one axis leg of one movement.
struct TrajectoryTable {
    Axis axis = Axis::orientation;
    int movement_index = 0;
    std::vector<TrajectorySample> samples;
    bool filtered = false;

    std::size_t size() const { return samples.size(); }
    bool is_short(std::size_t min_samples) const { return samples.size() < min_samples; }
};

/// Collects sensor observations into per-axis tables while a movement runs.
/// The first sample of each leg is the pose before it starts, so the theta
/// column spans the leg's measured start and end poses.
class TrajectoryRecorder {
public:
    void begin(int movement_index, const PlantObservation &before);
    /// Feeds one observation; returns false once the movement has settled.
    bool add(const PlantObservation &obs);

    bool recording() const { return recording_; }
    const TrajectoryTable &orientation() const { return ori_; }
    const TrajectoryTable &elevation() const { return ele_; }

private:
    bool recording_ = false;
    bool seen_elevation_ = false;
    PlantObservation previous_;
    TrajectoryTable ori_;
    TrajectoryTable ele_;
};

/// Symmetric moving-average kernel with unit DC gain.
std::vector<double> moving_average_kernel(std::size_t taps);

/// Zero-phase convolution with edge replication. The kernel must have odd length.
std::vector<double> filter_zero_phase(std::span<const double> signal, std::span<const double> kernel);

/// Smooths P and Irr. Tables shorter than the kernel are returned unchanged with
/// `filtered == false`.
TrajectoryTable smooth(const TrajectoryTable &table, std::size_t taps = 11);

struct EfficiencyTrajectory {
    Axis axis = Axis::orientation;
    int movement_index = 0;
    std::vector<double> ts;
    std::vector<double> eta;
    std::vector<double> theta;

    std::size_t size() const { return eta.size(); }
};

/// eta = P / (Irr * S_c) where Irr exceeds `irradiance_threshold`, 0 elsewhere.
EfficiencyTrajectory efficiency(const TrajectoryTable &table, double catchment_area,
                                double irradiance_threshold = 50.0);

double efficiency_of(double power, double irradiance, double catchment_area,
                     double irradiance_threshold = 50.0);

// CSV with header `ts,P,Irr,theta,axis,movement_index`.
void write_trajectory_csv_header(std::ostream &out);
void write_trajectory_csv_rows(std::ostream &out, const TrajectoryTable &table);
std::vector<TrajectoryTable> read_trajectory_csv(std::istream &in);

} // namespace suntrack
