#include "suntrack/dsp.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "suntrack/format.hpp"

namespace suntrack {

void TrajectoryRecorder::begin(int movement_index, const PlantObservation &before) {
    recording_ = true;
    seen_elevation_ = false;
    previous_ = before;
    ori_ = TrajectoryTable{Axis::orientation, movement_index, {}, false};
    ele_ = TrajectoryTable{Axis::elevation, movement_index, {}, false};
    ori_.samples.push_back({before.t, before.power, before.dni, before.measured.theta_ori});
}

bool TrajectoryRecorder::add(const PlantObservation &obs) {
    if (!recording_) return false;
    if (obs.moving == Axis::orientation) {
        ori_.samples.push_back({obs.t, obs.power, obs.dni, obs.measured.theta_ori});
    } else if (obs.moving == Axis::elevation) {
        if (!seen_elevation_) {
            // Leg start: the held sample taken just before the elevation drive engaged.
            ele_.samples.push_back({previous_.t, previous_.power, previous_.dni, previous_.measured.theta_ele});
            seen_elevation_ = true;
        }
        ele_.samples.push_back({obs.t, obs.power, obs.dni, obs.measured.theta_ele});
    } else {
        recording_ = false;
        return false;
    }
    previous_ = obs;
    return true;
}

std::vector<double> moving_average_kernel(std::size_t taps) {
    if (taps == 0 || taps % 2 == 0) throw std::invalid_argument("kernel length must be odd");
    return std::vector<double>(taps, 1.0 / static_cast<double>(taps));
}

std::vector<double> filter_zero_phase(std::span<const double> signal, std::span<const double> kernel) {
    if (kernel.size() % 2 == 0) throw std::invalid_argument("kernel length must be odd");
    const auto n = static_cast<std::ptrdiff_t>(signal.size());
    const auto half = static_cast<std::ptrdiff_t>(kernel.size() / 2);
    std::vector<double> out(signal.size(), 0.0);
    if (n == 0) return out;
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::ptrdiff_t j = -half; j <= half; ++j) {
            const std::ptrdiff_t k = std::clamp<std::ptrdiff_t>(i + j, 0, n - 1);
            acc += kernel[static_cast<std::size_t>(j + half)] * signal[static_cast<std::size_t>(k)];
        }
        out[static_cast<std::size_t>(i)] = acc;
    }
    return out;
}

TrajectoryTable smooth(const TrajectoryTable &table, std::size_t taps) {
    TrajectoryTable out = table;
    out.filtered = false;
    if (table.size() < taps) return out;

    const auto kernel = moving_average_kernel(taps);
    std::vector<double> power, irr;
    power.reserve(table.size());
    irr.reserve(table.size());
    for (const auto &s : table.samples) {
        power.push_back(s.power);
        irr.push_back(s.irr);
    }
    const auto fp = filter_zero_phase(power, kernel);
    const auto fi = filter_zero_phase(irr, kernel);
    for (std::size_t i = 0; i < out.samples.size(); ++i) {
        out.samples[i].power = std::max(fp[i], 0.0);
        out.samples[i].irr = std::max(fi[i], 0.0);
    }
    out.filtered = true;
    return out;
}

double efficiency_of(double power, double irradiance, double catchment_area, double irradiance_threshold) {
    if (!(catchment_area > 0.0)) throw std::invalid_argument("catchment area must be positive");
    if (irradiance <= irradiance_threshold || power <= 0.0) return 0.0;
    return std::min(power / (irradiance * catchment_area), 1.0);
}

EfficiencyTrajectory efficiency(const TrajectoryTable &table, double catchment_area,
                                double irradiance_threshold) {
    EfficiencyTrajectory out;
    out.axis = table.axis;
    out.movement_index = table.movement_index;
    out.ts.reserve(table.size());
    out.eta.reserve(table.size());
    out.theta.reserve(table.size());
    for (const auto &s : table.samples) {
        out.ts.push_back(s.ts);
        out.eta.push_back(efficiency_of(s.power, s.irr, catchment_area, irradiance_threshold));
        out.theta.push_back(s.theta);
    }
    return out;
}

void write_trajectory_csv_header(std::ostream &out) { out << "ts,P,Irr,theta,axis,movement_index\n"; }

void write_trajectory_csv_rows(std::ostream &out, const TrajectoryTable &table) {
    for (const auto &s : table.samples) {
        out << format_double(s.ts) << ',' << format_double(s.power) << ',' << format_double(s.irr) << ','
            << format_double(s.theta) << ',' << axis_name(table.axis) << ',' << table.movement_index << '\n';
    }
}

std::vector<TrajectoryTable> read_trajectory_csv(std::istream &in) {
    std::string line;
    if (!std::getline(in, line) || line != "ts,P,Irr,theta,axis,movement_index")
        throw std::runtime_error("unexpected trajectory CSV header");

    std::vector<TrajectoryTable> tables;
    std::map<std::pair<int, int>, std::size_t> index;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 6) throw std::runtime_error("malformed trajectory CSV row: " + line);

        Axis axis;
        if (fields[4] == "orientation")
            axis = Axis::orientation;
        else if (fields[4] == "elevation")
            axis = Axis::elevation;
        else
            throw std::runtime_error("unknown axis in trajectory CSV: " + fields[4]);
        const int movement = std::stoi(fields[5]);
        const auto key = std::make_pair(movement, static_cast<int>(axis));
        auto it = index.find(key);
        if (it == index.end()) {
            it = index.emplace(key, tables.size()).first;
            tables.push_back(TrajectoryTable{axis, movement, {}, false});
        }
        tables[it->second].samples.push_back({parse_double(fields[0]), parse_double(fields[1]),
                                              parse_double(fields[2]), parse_double(fields[3])});
    }
    return tables;
}

} // namespace suntrack
