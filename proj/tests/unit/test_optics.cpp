#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "generators.hpp"
#include "suntrack/angles.hpp"
#include "suntrack/optics.hpp"

using namespace suntrack;

namespace {

const PlatformFrame kSouth{180.0};

// Great-circle separation by the spherical law of cosines.
double separation(double az1, double el1, double az2, double el2) {
    const double c = std::sin(el1 * kDegToRad) * std::sin(el2 * kDegToRad) +
                     std::cos(el1 * kDegToRad) * std::cos(el2 * kDegToRad) * std::cos((az1 - az2) * kDegToRad);
    return std::acos(std::clamp(c, -1.0, 1.0)) * kRadToDeg;
}

} // namespace

TEST(ProjectSun, PerfectPointingIsOrigin) {
    const ConcentratorSpec spec;
    const CellProjection p = project_sun({200.0, 45.0}, {20.0, 45.0}, kSouth, spec);
    EXPECT_NEAR(p.x, 0.0, 1e-12);
    EXPECT_NEAR(p.y, 0.0, 1e-12);
}

TEST(ProjectSun, ElevationLag) {
    const CellProjection p = project_sun({180.0, 45.5}, {0.0, 45.0}, kSouth, ConcentratorSpec{});
    EXPECT_NEAR(p.x, 0.0, 1e-6);
    EXPECT_NEAR(p.y, 0.5, 1e-6);
}

TEST(ProjectSun, MountMisalignmentAdds) {
    ConcentratorSpec spec;
    spec.mount_dx = 0.3;
    const CellProjection p = project_sun({180.0, 45.0}, {0.0, 45.0}, kSouth, spec);
    EXPECT_NEAR(p.x, 0.3, 1e-12);
    EXPECT_NEAR(p.y, 0.0, 1e-12);
}

TEST(ProjectSun, SignConventions) {
    // Sun further along in azimuth than the wing: +x. Sun higher: +y.
    const CellProjection p = project_sun({181.0, 46.0}, {0.0, 45.0}, kSouth, ConcentratorSpec{});
    EXPECT_GT(p.x, 0.0);
    EXPECT_GT(p.y, 0.0);
    // Azimuth errors shrink by cos(elevation) on the cell.
    const CellProjection q = project_sun({181.0, 60.0}, {0.0, 60.0}, kSouth, ConcentratorSpec{});
    EXPECT_NEAR(q.x, std::cos(60.0 * kDegToRad), 2e-3);
}

TEST(ProjectSun, AgreesWithSphericalSeparation) {
    testsupport::Gen g(8);
    for (int i = 0; i < 2000; ++i) {
        const double wing_az = g.uniform(90.0, 270.0);
        const double wing_el = g.uniform(20.0, 80.0);
        const double sun_az = wing_az + g.uniform(-1.5, 1.5);
        const double sun_el = wing_el + g.uniform(-1.5, 1.5);
        const CellProjection p =
            project_sun({sun_az, sun_el}, {azimuth_to_orientation(wing_az, kSouth), wing_el}, kSouth, ConcentratorSpec{});
        EXPECT_NEAR(std::hypot(p.x, p.y), separation(sun_az, sun_el, wing_az, wing_el), 2e-3);
    }
}

TEST(RelativeEfficiency, Anchors) {
    const ConcentratorSpec spec{1.14, 0.2, 4.0, 0.0, 0.0};
    EXPECT_DOUBLE_EQ(relative_efficiency({0.0, 0.0}, spec), 1.0);
    EXPECT_NEAR(relative_efficiency({1.14, 0.0}, spec), 0.90, 1e-9);
    EXPECT_NEAR(relative_efficiency({1.14, 1.14}, spec), 0.81, 1e-9);
    EXPECT_LT(relative_efficiency({10.0, 0.0}, spec), 1e-6);
}

TEST(RelativeEfficiency, AnchorHoldsForAnySharpness) {
    testsupport::Gen g(9);
    for (int i = 0; i < 500; ++i) {
        const double alpha = g.uniform(0.2, 3.0);
        const double k = g.uniform(0.5, 8.0);
        EXPECT_NEAR(profile_value(alpha, alpha, k), 0.9, 1e-9);
        EXPECT_NEAR(profile_value(-alpha, alpha, k), 0.9, 1e-9);
    }
}

TEST(RelativeEfficiency, SymmetryAndMonotonicity) {
    const ConcentratorSpec spec;
    testsupport::Gen g(10);
    for (int i = 0; i < 2000; ++i) {
        const double x = g.uniform(-4.0, 4.0), y = g.uniform(-4.0, 4.0);
        const double e = relative_efficiency({x, y}, spec);
        EXPECT_GE(e, 0.0);
        EXPECT_LE(e, 1.0);
        EXPECT_DOUBLE_EQ(e, relative_efficiency({-x, y}, spec));
        EXPECT_DOUBLE_EQ(e, relative_efficiency({x, -y}, spec));
        EXPECT_NEAR(e, relative_efficiency({y, x}, spec), 1e-15);
        const double grow = std::copysign(g.uniform(0.0, 1.0), x);
        EXPECT_LE(relative_efficiency({x + grow, y}, spec), e);
    }
}

TEST(RelativeEfficiency, BetaSquareImpliesHighEfficiency) {
    const ConcentratorSpec spec;
    testsupport::Gen g(11);
    const double beta = 0.5;
    for (int i = 0; i < 2000; ++i) {
        const CellProjection p{g.uniform(-beta, beta), g.uniform(-beta, beta)};
        ASSERT_TRUE(inside_region(p, beta));
        EXPECT_GT(relative_efficiency(p, spec), 0.81);
    }
}

TEST(InsideRegion, ClosedSquare) {
    EXPECT_TRUE(inside_region({0.0, 0.0}, 0.5));
    EXPECT_FALSE(inside_region({0.51, 0.0}, 0.5));
    EXPECT_TRUE(inside_region({0.5, 0.5}, 0.5));
    EXPECT_FALSE(inside_region({0.0, -0.500001}, 0.5));
    EXPECT_THROW(inside_region({0.0, 0.0}, 0.0), std::invalid_argument);
}

TEST(ConcentratorSpec, Validation) {
    EXPECT_THROW((ConcentratorSpec{0.0, 0.2, 4.0, 0.0, 0.0}).validate(), std::invalid_argument);
    EXPECT_THROW((ConcentratorSpec{1.0, 1.2, 4.0, 0.0, 0.0}).validate(), std::invalid_argument);
    EXPECT_THROW((ConcentratorSpec{1.0, 0.2, 0.0, 0.0, 0.0}).validate(), std::invalid_argument);
    EXPECT_NEAR(ConcentratorSpec{}.contracted(0.8).alpha, 0.912, 1e-12);
}
