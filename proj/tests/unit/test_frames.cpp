#include <gtest/gtest.h>

#include "generators.hpp"
#include "suntrack/angles.hpp"
#include "suntrack/frames.hpp"

using namespace suntrack;

TEST(Frames, AzimuthToOrientationExamples) {
    EXPECT_DOUBLE_EQ(azimuth_to_orientation(180.0, {180.0}), 0.0);
    EXPECT_DOUBLE_EQ(azimuth_to_orientation(180.0, {181.0}), -1.0);
    EXPECT_DOUBLE_EQ(azimuth_to_orientation(178.0, {178.0}), 0.0);
}

TEST(Frames, OrientationToAzimuthExamples) {
    EXPECT_DOUBLE_EQ(orientation_to_azimuth(0.0, {180.0}), 180.0);
    EXPECT_DOUBLE_EQ(orientation_to_azimuth(10.0, {178.0}), 188.0);
}

TEST(Frames, RoundTripProperty) {
    testsupport::Gen g(4);
    for (int i = 0; i < 1000; ++i) {
        const double az = g.uniform(0.0, 360.0);
        const PlatformFrame f{g.uniform(-720.0, 720.0)};
        const double back = orientation_to_azimuth(azimuth_to_orientation(az, f), f);
        EXPECT_NEAR(wrap_180(back - az), 0.0, 1e-9);
    }
}

TEST(Frames, RotationShiftsOrientation) {
    testsupport::Gen g(5);
    for (int i = 0; i < 1000; ++i) {
        const double az = g.uniform(90.0, 270.0);
        const double delta = g.uniform(-5.0, 5.0);
        const double a = azimuth_to_orientation(az, {180.0});
        const double b = azimuth_to_orientation(az, {180.0 + delta});
        EXPECT_NEAR(b - a, -delta, 1e-9);
    }
}

TEST(Frames, RotationMatrixAngleMirrorsHeading) {
    EXPECT_DOUBLE_EQ(platform_frame_from_rotation_matrix(180.0).z_rotation, 180.0);
    EXPECT_DOUBLE_EQ(platform_frame_from_rotation_matrix(181.0).z_rotation, 179.0);
    EXPECT_DOUBLE_EQ(platform_frame_from_rotation_matrix(178.0).z_rotation, 182.0);
}
