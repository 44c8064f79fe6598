#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "generators.hpp"
#include "suntrack/dsp.hpp"
#include "suntrack/time.hpp"

using namespace suntrack;

namespace {

struct RecordedMove {
    TrajectoryTable ori;
    TrajectoryTable ele;
};

// Drives a noise-free plant through one commanded move and records it.
RecordedMove record_move(const TrackerPose &from, const TrackerPose &to) {
    const ObserverLocation seville{37.41, -5.98};
    const double day = utc_from_civil(2020, 10, 2);
    const double t0 = utc_from_solar_hours(day, 12.0, -5.98);
    PlantConfig c;
    c.inverter_startup_delay = 0.0;
    c.kinematics.orientation.accuracy = 0.0;
    c.kinematics.elevation.accuracy = 0.0;
    Plant plant(c, seville, IrradianceProfile(seville, day), t0, from);
    TrajectoryRecorder rec;
    rec.begin(3, plant.last_observation());
    plant.command_move(to);
    for (int i = 0; i < 10000; ++i)
        if (!rec.add(plant.advance(0.125))) break;
    return {rec.orientation(), rec.elevation()};
}

} // namespace

TEST(Recorder, OneDegreeLegHoldsFortySamples) {
    const RecordedMove m = record_move({0.0, 45.0}, {1.0, 45.0});
    EXPECT_NEAR(static_cast<double>(m.ori.size()), 40.0, 1.0);
    EXPECT_EQ(m.ori.movement_index, 3);
    EXPECT_EQ(m.ori.axis, Axis::orientation);
    EXPECT_NEAR(m.ori.samples.front().theta, 0.0, 0.03);
    EXPECT_NEAR(m.ori.samples.back().theta, 1.0, 0.03);
    for (std::size_t i = 1; i < m.ori.size(); ++i) {
        EXPECT_GT(m.ori.samples[i].ts, m.ori.samples[i - 1].ts);
        EXPECT_GE(m.ori.samples[i].theta, m.ori.samples[i - 1].theta);
    }
    EXPECT_TRUE(m.ele.samples.empty());
}

TEST(Recorder, ZeroLengthLegIsShort) {
    const RecordedMove m = record_move({0.0, 45.0}, {0.0, 46.0});
    EXPECT_TRUE(m.ori.is_short(15));
    // 1 deg at 0.1 deg/s plus the leg-start sample.
    EXPECT_NEAR(static_cast<double>(m.ele.size()), 81.0, 1.0);
    EXPECT_NEAR(m.ele.samples.front().theta, 45.0, 0.05);
    EXPECT_NEAR(m.ele.samples.back().theta, 46.0, 0.05);
}

TEST(Smooth, ConstantPassesThrough) {
    TrajectoryTable t;
    for (int i = 0; i < 30; ++i) t.samples.push_back({i * 0.125, 1234.5, 850.0, i * 0.025});
    const TrajectoryTable s = smooth(t);
    EXPECT_TRUE(s.filtered);
    for (const auto &x : s.samples) {
        EXPECT_NEAR(x.power, 1234.5, 1e-9);
        EXPECT_NEAR(x.irr, 850.0, 1e-9);
    }
}

TEST(Smooth, ShortTableIsUnfiltered) {
    TrajectoryTable t;
    for (int i = 0; i < 10; ++i) t.samples.push_back({i * 0.125, 100.0 + i, 850.0, 0.0});
    const TrajectoryTable s = smooth(t);
    EXPECT_FALSE(s.filtered);
    for (std::size_t i = 0; i < t.size(); ++i) EXPECT_EQ(s.samples[i].power, t.samples[i].power);
}

TEST(Smooth, TriangleKeepsPeakLocation) {
    TrajectoryTable t;
    for (int i = 0; i <= 60; ++i) t.samples.push_back({i * 0.125, 1000.0 - 20.0 * std::abs(i - 37), 850.0, 0.0});
    const TrajectoryTable s = smooth(t);
    std::size_t peak = 0;
    for (std::size_t i = 1; i < s.size(); ++i)
        if (s.samples[i].power > s.samples[peak].power) peak = i;
    EXPECT_EQ(peak, 37u);
    // Zero phase: the smoothed triangle stays symmetric around its apex.
    for (int d = 1; d <= 18; ++d) EXPECT_NEAR(s.samples[37 - d].power, s.samples[37 + d].power, 1e-9);
}

TEST(Smooth, NoiseOnRampShrinksThreefold) {
    testsupport::Gen g(12);
    const double sigma = 5.0;
    double raw_sq = 0.0, out_sq = 0.0;
    std::size_t count = 0;
    for (int trial = 0; trial < 200; ++trial) {
        TrajectoryTable t;
        for (int i = 0; i < 80; ++i) t.samples.push_back({i * 0.125, 500.0 + 3.0 * i + g.normal(sigma), 850.0, 0.0});
        const TrajectoryTable s = smooth(t);
        // Interior only: edge replication bends a ramp near the ends.
        for (std::size_t i = 5; i + 5 < s.size(); ++i) {
            const double truth = 500.0 + 3.0 * static_cast<double>(i);
            raw_sq += std::pow(t.samples[i].power - truth, 2);
            out_sq += std::pow(s.samples[i].power - truth, 2);
            ++count;
        }
    }
    EXPECT_GE(std::sqrt(raw_sq / count) / std::sqrt(out_sq / count), 3.0);
}

TEST(Filter, RejectsEvenKernel) {
    const std::vector<double> x{1.0, 2.0, 3.0};
    const std::vector<double> k{0.5, 0.5};
    EXPECT_THROW(filter_zero_phase(x, k), std::invalid_argument);
    EXPECT_THROW(moving_average_kernel(10), std::invalid_argument);
}

TEST(Efficiency, DirectEvaluation) {
    EXPECT_NEAR(efficiency_of(1422.9, 900.0, 9.3), 0.17, 1e-9);
    EXPECT_NEAR(efficiency_of(1423.17, 900.0, 9.3), 1423.17 / 8370.0, 1e-15);
    EXPECT_NEAR(efficiency_of(1423.17, 900.0, 9.3), 0.17, 5e-5);
    EXPECT_EQ(efficiency_of(500.0, 0.0, 9.3), 0.0);
    EXPECT_EQ(efficiency_of(0.0, 800.0, 9.3), 0.0);
    EXPECT_EQ(efficiency_of(500.0, 40.0, 9.3), 0.0);
}

TEST(Efficiency, TrajectoryKeepsTimeAndTheta) {
    TrajectoryTable t;
    t.axis = Axis::elevation;
    t.movement_index = 7;
    t.samples = {{1.0, 1422.9, 900.0, 40.0}, {1.125, 0.0, 900.0, 40.1}, {1.25, 10.0, 0.0, 40.2}};
    const EfficiencyTrajectory e = efficiency(t, 9.3);
    ASSERT_EQ(e.size(), 3u);
    EXPECT_EQ(e.axis, Axis::elevation);
    EXPECT_EQ(e.movement_index, 7);
    EXPECT_NEAR(e.eta[0], 0.17, 1e-9);
    EXPECT_EQ(e.eta[1], 0.0);
    EXPECT_EQ(e.eta[2], 0.0);
    EXPECT_EQ(e.ts[2], 1.25);
    EXPECT_EQ(e.theta[1], 40.1);
}

TEST(TrajectoryCsv, RoundTrip) {
    testsupport::Gen g(13);
    TrajectoryTable a{Axis::orientation, 4, {}, false};
    TrajectoryTable b{Axis::elevation, 4, {}, false};
    for (int i = 0; i < 25; ++i) {
        a.samples.push_back({1.6e9 + i * 0.125, g.uniform(0, 1700), g.uniform(0, 900), g.uniform(-5, 5)});
        b.samples.push_back({1.6e9 + 10 + i * 0.125, g.uniform(0, 1700), g.uniform(0, 900), g.uniform(20, 80)});
    }
    std::stringstream ss;
    write_trajectory_csv_header(ss);
    write_trajectory_csv_rows(ss, a);
    write_trajectory_csv_rows(ss, b);
    const auto tables = read_trajectory_csv(ss);
    ASSERT_EQ(tables.size(), 2u);
    for (std::size_t k = 0; k < 2; ++k) {
        const TrajectoryTable &src = k == 0 ? a : b;
        EXPECT_EQ(tables[k].axis, src.axis);
        ASSERT_EQ(tables[k].size(), src.size());
        for (std::size_t i = 0; i < src.size(); ++i) {
            EXPECT_EQ(tables[k].samples[i].ts, src.samples[i].ts);
            EXPECT_EQ(tables[k].samples[i].power, src.samples[i].power);
            EXPECT_EQ(tables[k].samples[i].irr, src.samples[i].irr);
            EXPECT_EQ(tables[k].samples[i].theta, src.samples[i].theta);
        }
    }
}

TEST(TrajectoryCsv, BadHeaderThrows) {
    std::stringstream ss("t,P\n1,2\n");
    EXPECT_THROW(read_trajectory_csv(ss), std::runtime_error);
}
