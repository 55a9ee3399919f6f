#include "tailsim/errors.hpp"
#include "tailsim/frames.hpp"
#include "tailsim/metrics.hpp"

#include <gtest/gtest.h>

#include <vector>

using namespace tailsim;

TEST(ErrorStats, Constant) {
    const std::vector<double> e(17, 0.1);
    const ErrorStats s = error_stats(e);
    EXPECT_EQ(s.median, 0.1);
    EXPECT_EQ(s.q25, 0.1);
    EXPECT_EQ(s.q75, 0.1);
    EXPECT_EQ(s.max, 0.1);
    EXPECT_EQ(s.count, 17u);
}

TEST(ErrorStats, NearestRank) {
    const std::vector<double> e{4, 100, 1, 3, 2};
    const ErrorStats s = error_stats(e);
    EXPECT_EQ(s.median, 3);
    EXPECT_EQ(s.max, 100);
    EXPECT_EQ(s.q25, 2);
    EXPECT_EQ(s.q75, 4);
}

TEST(ErrorStats, EvenCountTakesLowerMiddle) {
    const std::vector<double> e{1, 2, 3, 4};
    EXPECT_EQ(error_stats(e).median, 2);
    EXPECT_EQ(nearest_rank_percentile(e, 0.0), 1);
    EXPECT_EQ(nearest_rank_percentile(e, 100.0), 4);
    EXPECT_EQ(nearest_rank_percentile(e, 75.1), 4);
}

TEST(ErrorStats, Empty) {
    EXPECT_THROW(error_stats({}), EmptyTraceError);
    EXPECT_THROW(nearest_rank_percentile({}, 50.0), EmptyTraceError);
    EXPECT_THROW(compute_metrics({}, {}), EmptyTraceError);
}

TEST(ComputeMetrics, AbsoluteDifference) {
    const std::vector<double> a{1.0, 2.0, 3.0}, r{1.5, 1.0, 3.0};
    const ErrorStats s = compute_metrics(a, r);
    EXPECT_EQ(s.max, 1.0);
    EXPECT_EQ(s.median, 0.5);
}

TEST(ComputeMetrics, AngularWrap) {
    const std::vector<double> a{deg2rad(359.0)}, r{0.0};
    EXPECT_NEAR(rad2deg(compute_metrics(a, r, true).max), 1.0, 1e-9);
    EXPECT_NEAR(rad2deg(compute_metrics(a, r, false).max), 359.0, 1e-9);
}

TEST(Frames, Wrap) {
    EXPECT_DOUBLE_EQ(wrap_pi(kPi), kPi);
    EXPECT_NEAR(wrap_pi(-kPi), kPi, 1e-15);
    EXPECT_NEAR(wrap_pi(3 * kPi + 0.1), -kPi + 0.1, 1e-12);
    EXPECT_NEAR(wrap_two_pi(-0.1), 2 * kPi - 0.1, 1e-12);
    EXPECT_GE(wrap_two_pi(-1e-18), 0.0);
    EXPECT_LT(wrap_two_pi(-1e-18), 2 * kPi);
}

TEST(Frames, HoverPose) {
    const Quat h = hover_reference();
    EXPECT_NEAR((h * kThrustAxisBody - Vec3::UnitZ()).norm(), 0.0, 1e-15);
    EXPECT_NEAR((hover_attitude(0.5 * kPi) * Vec3::UnitX() - Vec3::UnitY()).norm(), 0.0, 1e-12);
    const EulerAngles e = euler_from_quat(h);
    EXPECT_NEAR(e.roll, 0.0, 1e-12);
    EXPECT_NEAR(e.pitch, 0.0, 1e-12);
    EXPECT_NEAR(e.yaw, 0.0, 1e-12);
}

TEST(Frames, EulerRoundTrip) {
    for (double r : {-0.4, 0.0, 0.3}) {
        for (double p : {-1.2, -0.2, 0.5}) {
            for (double y : {-3.0, 0.0, 1.0, 2.5}) {
                const EulerAngles e = euler_from_quat(quat_from_euler({r, p, y}));
                EXPECT_NEAR(e.roll, r, 1e-12);
                EXPECT_NEAR(e.pitch, p, 1e-12);
                EXPECT_NEAR(e.yaw, y, 1e-12);
            }
        }
    }
    EXPECT_NEAR(quat_from_euler({0, 0, 0.7}).angularDistance(hover_attitude(0.7)), 0.0, 1e-12);
}
