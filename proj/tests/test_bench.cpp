#include <gtest/gtest.h>

#include "symcone/bench.hpp"

using namespace symcone;

namespace {

template <typename F>
void expect_kind(ErrorKind kind, F&& fn) {
    try {
        fn();
        ADD_FAILURE() << "expected " << to_string(kind);
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), kind) << e.what();
    }
}

}  // namespace

TEST(Bench, UnitCircleReport) {
    const MatrixCurve c = sample_circle({0, 1, 0, two_pi}, 2001);
    const BenchReport rep = run_bench(c, 4, 3);
    EXPECT_EQ(rep.n_samples, 2001u);
    EXPECT_EQ(rep.steps_per_sample, 4);
    EXPECT_EQ(rep.repeats, 3);
    EXPECT_GT(rep.wall_time_transport, 0.0);
    EXPECT_GT(rep.wall_time_repeated_eig, 0.0);
    EXPECT_NEAR(rep.speed_ratio(), rep.wall_time_repeated_eig / rep.wall_time_transport, 1e-15);
    EXPECT_LT(rep.max_angle_error, 1e-6);
}

TEST(Bench, CoarseSubstepsStillTrackEigenvector) {
    const MatrixCurve c = sample_circle({2.0, 0.5, 0, 3 * two_pi}, 3001);
    EXPECT_LT(run_bench(c, 1, 3).max_angle_error, 1e-6);
}

TEST(Bench, Errors) {
    const MatrixCurve tiny = sample_circle({0, 1, 0, 1}, 5);
    expect_kind(ErrorKind::InvalidArgument, [&] { run_bench(tiny); });
    const MatrixCurve close = sample_circle({0, 0.05, 0, 1}, 50);
    expect_kind(ErrorKind::InvalidArgument, [&] { run_bench(close); });
    const MatrixCurve ok = sample_circle({0, 1, 0, 1}, 50);
    expect_kind(ErrorKind::InvalidArgument, [&] { run_bench(ok, 4, 2); });
    expect_kind(ErrorKind::InvalidArgument, [&] { run_bench(ok, 0, 3); });
}
