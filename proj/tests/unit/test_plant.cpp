#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "suntrack/plant.hpp"
#include "suntrack/time.hpp"

using namespace suntrack;

namespace {

const ObserverLocation kSeville{37.41, -5.98};
const double kDay = utc_from_civil(2020, 10, 2);

PlantConfig quiet_config() {
    PlantConfig c;
    c.mppt.enabled = false;
    c.power_noise_fraction = 0.0;
    c.kinematics.orientation.accuracy = 0.0;
    c.kinematics.elevation.accuracy = 0.0;
    return c;
}

TrackerPose sun_pose(double t) {
    const SolarAngles s = solar_position(t, kSeville);
    return {azimuth_to_orientation(s.azimuth, {180.0}), s.elevation};
}

double noon() { return utc_from_solar_hours(kDay, 12.0, -5.98); }

} // namespace

TEST(Irradiance, NightAndCloud) {
    const IrradianceProfile clear(kSeville, kDay);
    EXPECT_EQ(clear.dni_at(kDay + 3600.0), 0.0);
    EXPECT_GT(clear.dni_at(noon()), 800.0);
    const IrradianceProfile cloudy(kSeville, kDay, 850.0, {{noon() - 60.0, noon() + 60.0, 1.0}});
    EXPECT_EQ(cloudy.dni_at(noon()), 0.0);
    EXPECT_GT(cloudy.dni_at(noon() + 61.0), 0.0);
}

TEST(Irradiance, PeakAtMidDay) {
    const IrradianceProfile clear(kSeville, kDay);
    const double mid = 0.5 * (clear.sunrise() + clear.sunset());
    EXPECT_NEAR(clear.dni_at(mid), 850.0, 1e-9);
    EXPECT_LT(solar_position(clear.sunrise(), kSeville).elevation, 0.01);
    EXPECT_GT(clear.sunset(), clear.sunrise() + 11.0 * 3600.0);
}

TEST(Irradiance, RejectsBadEvents) {
    EXPECT_THROW(IrradianceProfile(kSeville, kDay, 850.0, {{0.0, 10.0, 1.5}}), std::invalid_argument);
    EXPECT_THROW(IrradianceProfile(kSeville, kDay, -1.0), std::invalid_argument);
}

TEST(DcPower, InverterOffIsZero) {
    const double t0 = noon();
    Plant plant(quiet_config(), kSeville, IrradianceProfile(kSeville, kDay), t0, sun_pose(t0));
    EXPECT_FALSE(plant.inverter_on());
    EXPECT_EQ(plant.dc_power(t0, sun_pose(t0)), 0.0);
    EXPECT_EQ(plant.last_observation().power, 0.0);
}

TEST(DcPower, AnalyticProductAndRipple) {
    // Constant 900 W/m2 via a flat peak: evaluate at the raised-cosine crest.
    const IrradianceProfile irr(kSeville, kDay, 900.0);
    const double crest = 0.5 * (irr.sunrise() + irr.sunset());
    PlantConfig c = quiet_config();
    c.inverter_startup_delay = 0.0;
    c.mppt.enabled = true;
    c.mppt.depth = 0.3;
    c.mppt.period = 600.0;
    c.mppt.duration = 10.0;
    Plant plant(c, kSeville, irr, crest, sun_pose(crest));
    ASSERT_TRUE(plant.inverter_on());
    EXPECT_NEAR(plant.dc_power(crest, sun_pose(crest)), 1674.0, 1e-6);
    // Dips occupy the last `duration` seconds of every period after switch-on.
    EXPECT_NEAR(plant.dc_power(crest + 595.0, sun_pose(crest)) / plant.ideal_power(crest + 595.0, sun_pose(crest)),
                0.7, 1e-12);
    EXPECT_NEAR(0.7 * 1674.0, 1171.8, 1e-9);
}

TEST(Advance, ZeroOrderHold) {
    const double t0 = noon();
    Plant plant(quiet_config(), kSeville, IrradianceProfile(kSeville, kDay), t0, sun_pose(t0));
    const PlantObservation a = plant.advance(0.05);
    const PlantObservation b = plant.advance(0.05);
    EXPECT_EQ(a.t, b.t);
    EXPECT_EQ(a.dni, b.dni);
    const PlantObservation c = plant.advance(0.05);
    EXPECT_GT(c.t, b.t);
}

TEST(Advance, InverterStartsAfterDelay) {
    const IrradianceProfile irr(kSeville, kDay);
    // First sensor instant with DNI over the start threshold.
    double t0 = irr.sunrise();
    while (irr.dni_at(t0) <= 100.0) t0 += 0.125;
    const double start = t0 - 10.0;
    const TrackerPose facing{sun_pose(t0 + 120.0).theta_ori, std::max(sun_pose(t0 + 120.0).theta_ele, 20.0)};
    Plant plant(quiet_config(), kSeville, irr, start, facing);
    double crossed = -1.0, first_power = -1.0;
    for (int i = 0; i < 8 * 300; ++i) {
        const PlantObservation o = plant.advance(0.125);
        if (crossed < 0.0 && o.dni > 100.0) crossed = o.t;
        if (first_power < 0.0 && o.power > 0.0) first_power = o.t;
    }
    ASSERT_GT(crossed, 0.0);
    EXPECT_NEAR(first_power - crossed, 120.0, 1e-6);
}

TEST(Advance, DeterministicReplay) {
    const double t0 = noon();
    PlantConfig c;
    c.inverter_startup_delay = 0.0;
    c.seed = 99;
    Plant a(c, kSeville, IrradianceProfile(kSeville, kDay), t0, sun_pose(t0));
    Plant b(c, kSeville, IrradianceProfile(kSeville, kDay), t0, sun_pose(t0));
    a.command_move(sun_pose(t0 + 120.0));
    b.command_move(sun_pose(t0 + 120.0));
    for (int i = 0; i < 2000; ++i) {
        const PlantObservation x = a.advance(0.125), y = b.advance(0.125);
        ASSERT_EQ(x.power, y.power);
        ASSERT_EQ(x.measured.theta_ori, y.measured.theta_ori);
        ASSERT_EQ(x.measured.theta_ele, y.measured.theta_ele);
    }
}

TEST(Advance, PowerBoundedByConversionCeiling) {
    const double t0 = noon();
    PlantConfig c;
    c.inverter_startup_delay = 0.0;
    c.power_noise_fraction = 0.05;
    Plant plant(c, kSeville, IrradianceProfile(kSeville, kDay, 850.0, {{t0 + 100.0, t0 + 200.0, 1.0}}), t0,
                sun_pose(t0));
    for (int i = 0; i < 8 * 400; ++i) {
        const PlantObservation o = plant.advance(0.125);
        EXPECT_GE(o.power, 0.0);
        EXPECT_LE(o.power, c.optics.eta_peak * o.dni * c.catchment_area);
        if (o.dni == 0.0) EXPECT_EQ(o.power, 0.0);
    }
}

TEST(Advance, NoiseFreeMatchesFormula) {
    const double t0 = noon();
    PlantConfig c = quiet_config();
    c.inverter_startup_delay = 0.0;
    Plant plant(c, kSeville, IrradianceProfile(kSeville, kDay), t0, sun_pose(t0));
    for (int i = 0; i < 100; ++i) {
        const PlantObservation o = plant.advance(0.125);
        const double expected = c.optics.contracted(c.alpha_contraction).eta_peak *
                                relative_efficiency(plant.projection(o.t, plant.tracker().pose()), c.effective_optics()) *
                                o.dni * c.catchment_area;
        EXPECT_DOUBLE_EQ(o.power, expected);
    }
}

TEST(PlantConfig, Validation) {
    PlantConfig c;
    c.mppt.depth = 1.0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = PlantConfig{};
    c.sensor_period = 0.0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(CommandMove, TerminalErrorWithinAccuracy) {
    const double t0 = noon();
    PlantConfig c;
    Plant plant(c, kSeville, IrradianceProfile(kSeville, kDay), t0, {0.0, 40.0});
    for (int i = 0; i < 200; ++i) {
        const TrackerPose target{0.1 * (i % 7), 40.0 + 0.1 * (i % 5)};
        const MotionPlan plan = plant.command_move(target);
        EXPECT_LE(std::abs(plan.legs[0].target - target.theta_ori), c.kinematics.orientation.accuracy);
        EXPECT_LE(std::abs(plan.legs[1].target - target.theta_ele), c.kinematics.elevation.accuracy);
    }
}
