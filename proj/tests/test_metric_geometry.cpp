#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "symcone/metric_geometry.hpp"

using namespace symcone;

namespace {

SymPoint random_point(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> log_r(-3.0, 3.0);
    std::uniform_real_distribution<double> angle(-pi, pi);
    std::uniform_real_distribution<double> height(-10.0, 10.0);
    return SymPoint::from_cylindrical(std::pow(10.0, log_r(rng)), angle(rng), height(rng));
}

/// Columns: d/dr, d/dphi, d/dz in cartesian components.
Eigen::Matrix3d polar_jacobian(const SymPoint& p) {
    Eigen::Matrix3d j;
    j.col(0) = coordinate_vector(p, Coord::r);
    j.col(1) = coordinate_vector(p, Coord::phi);
    j.col(2) = coordinate_vector(p, Coord::z);
    return j;
}

}  // namespace

TEST(MetricAt, CartesianBlockExamples) {
    const MetricAtPoint a = metric_at(SymPoint::from_cartesian(1, 0, 0));
    EXPECT_EQ(a.cart(0, 0), 4.0);
    EXPECT_EQ(a.cart(0, 1), 0.0);
    EXPECT_EQ(a.cart(1, 1), 1.0);
    const MetricAtPoint b = metric_at(SymPoint::from_cartesian(0, 1, 0));
    EXPECT_EQ(b.cart(0, 0), 1.0);
    EXPECT_EQ(b.cart(1, 1), 4.0);
    EXPECT_EQ(b.cart(2, 2), 1.0);
}

TEST(MetricAt, PolarDiagonal) {
    const MetricAtPoint m = metric_at(SymPoint::from_cylindrical(2.5, 1.0, -3.0));
    EXPECT_EQ(m.pol(0), 4.0);
    EXPECT_NEAR(m.pol(1), 6.25, 1e-14);
    EXPECT_EQ(m.pol(2), 1.0);
}

TEST(MetricAt, SingularLine) {
    EXPECT_THROW(metric_at(SymPoint::from_cartesian(0, 0, 1)), Error);
    try {
        metric_at(SymPoint::from_cartesian(0, 0, 1));
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::SingularPoint);
    }
}

TEST(MetricAtProperty, MatchesEmbeddingAndPolarForm) {
    std::mt19937_64 rng(1);
    for (int k = 0; k < 1000; ++k) {
        const SymPoint p = random_point(rng);
        const MetricAtPoint m = metric_at(p);
        const Eigen::Matrix3d ref = oracle::metric_from_embedding(p.x(), p.y());
        EXPECT_LE((m.cart - ref).cwiseAbs().maxCoeff(), 1e-13);
        EXPECT_NEAR((m.cart.topLeftCorner<2, 2>().determinant()), 4.0, 1e-12);
        EXPECT_GT(Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(m.cart).eigenvalues().minCoeff(), 0.0);

        // J^T G J is the polar form, relative to its scale
        const Eigen::Matrix3d j = polar_jacobian(p);
        const Eigen::Matrix3d pol = j.transpose() * m.cart * j;
        const Eigen::Matrix3d want = m.pol.asDiagonal();
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                EXPECT_NEAR(pol(a, b), want(a, b), 1e-12 * std::max(1.0, p.r_squared()));
    }
}

TEST(Inner, CoordinateVectors) {
    const SymPoint p = SymPoint::from_cylindrical(2.0, 0.7, 1.0);
    const Vec3 dr = coordinate_vector(p, Coord::r);
    const Vec3 dphi = coordinate_vector(p, Coord::phi);
    EXPECT_NEAR(inner_coords(p, dr, dr), 4.0, 1e-14);
    EXPECT_NEAR(inner_coords(p, dr, dphi), 0.0, 1e-14);
    EXPECT_NEAR(inner_coords(p, dphi, dphi), 4.0, 1e-13);
}

TEST(Inner, TangentVectorsAndBaseMismatch) {
    const SymPoint p = SymPoint::from_cylindrical(1.5, -2.0, 0.0);
    const TangentVec u{p, Vec3(1, 2, 3)};
    const TangentVec v{p, Vec3(-1, 0.5, 2)};
    EXPECT_NEAR(inner(p, u, v), u.frame.dot(v.frame), 1e-13);
    EXPECT_NEAR(inner(p, u, u), u.frame_norm() * u.frame_norm(), 1e-13);
    const TangentVec w{SymPoint::from_cartesian(3, 0, 0), Vec3(1, 0, 0)};
    try {
        inner(p, u, w);
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::BaseMismatch);
    }
}

TEST(InnerProperty, FrameNormEqualsMetricNorm) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int k = 0; k < 1000; ++k) {
        const SymPoint p = random_point(rng);
        const TangentVec v{p, Vec3(u(rng), u(rng), u(rng))};
        const Vec3 coords = to_coords(v);
        const double via_metric = coords.dot(oracle::metric_from_embedding(p.x(), p.y()) * coords);
        EXPECT_NEAR(std::sqrt(via_metric), v.frame_norm(), 1e-12 * std::max(1.0, v.frame_norm()));
        const TangentVec back = from_coords(p, coords);
        EXPECT_LE((back.frame - v.frame).norm(), 1e-12 * std::max(1.0, v.frame_norm()));
    }
}

TEST(FrameAt, Examples) {
    const FrameAtPoint f0 = frame_at(SymPoint::from_cartesian(1, 0, 0));
    EXPECT_NEAR((f0.e1 - Vec3(0.5, 0, 0)).norm(), 0.0, 1e-15);
    EXPECT_NEAR((f0.e2 - Vec3(0, 1, 0)).norm(), 0.0, 1e-15);
    const FrameAtPoint f1 = frame_at(SymPoint::from_cylindrical(1, pi / 2, 0));
    EXPECT_NEAR((f1.e1 - Vec3(1, 0, 0)).norm(), 0.0, 1e-15);
    EXPECT_NEAR((f1.e2 - Vec3(0, 0.5, 0)).norm(), 0.0, 1e-15);
    EXPECT_EQ(f1.e3, Vec3(0, 0, 1));
}

TEST(FrameAtProperty, Orthonormal) {
    std::mt19937_64 rng(3);
    double worst = 0.0;
    for (int k = 0; k < 10000; ++k) {
        const SymPoint p = random_point(rng);
        const FrameAtPoint f = frame_at(p);
        const std::array<Vec3, 3> e{f.e1, f.e2, f.e3};
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                worst = std::max(worst, std::abs(inner_coords(p, e[a], e[b]) - (a == b ? 1.0 : 0.0)));
        // cylindrical form agrees with the cartesian one
        const Eigen::Matrix3d cyl = frame_cylindrical(p);
        const Eigen::Matrix3d j = polar_jacobian(p);
        EXPECT_LE((j * cyl.col(0) - f.e1).norm(), 1e-12);
        EXPECT_LE((j * cyl.col(1) - f.e2).norm(), 1e-12);
    }
    EXPECT_LT(worst, 1e-10);
}

TEST(ConnectionForm, Examples) {
    const SymPoint p = SymPoint::from_cylindrical(3.0, 0.4, 2.0);
    EXPECT_NEAR(connection_form_coords(p, coordinate_vector(p, Coord::phi)), 0.5, 1e-15);
    EXPECT_NEAR(connection_form_coords(p, coordinate_vector(p, Coord::r)), 0.0, 1e-15);
    EXPECT_EQ(connection_form_coords(p, coordinate_vector(p, Coord::z)), 0.0);
    const SymPoint q = SymPoint::from_cartesian(0, 1, 0);
    EXPECT_NEAR(connection_form_coords(q, Vec3(1, 0, 0)), -0.5, 1e-15);
}

TEST(ConnectionForm, FrameInputAndLinearity) {
    const SymPoint p = SymPoint::from_cylindrical(0.5, 2.0, 0.0);
    const TangentVec e1{p, Vec3(1, 0, 0)};
    const TangentVec e2{p, Vec3(0, 1, 0)};
    // e1 = cos(phi) d_r / 2 - sin(phi) d_phi / r, so omega(e1) = -sin(phi) / (2r)
    EXPECT_NEAR(connection_form(p, e1), -std::sin(2.0) / (2 * 0.5), 1e-14);
    EXPECT_NEAR(connection_form(p, e2), std::cos(2.0) / (2 * 0.5), 1e-14);
    const Vec3 x(0.3, -1.1, 4.0);
    EXPECT_NEAR(connection_form_coords(p, 7.5 * x), 7.5 * connection_form_coords(p, x), 1e-13);
    EXPECT_THROW(connection_form_coords(SymPoint::from_cartesian(0, 0, 0), x), Error);
}

TEST(Christoffel, Values) {
    const SymPoint p = SymPoint::from_cylindrical(2.0, 1.0, 5.0);
    const Christoffel g = christoffel_at(p);
    EXPECT_DOUBLE_EQ(g(Coord::r, Coord::phi, Coord::phi), -0.5);
    EXPECT_DOUBLE_EQ(g(Coord::phi, Coord::r, Coord::phi), 0.5);
    EXPECT_DOUBLE_EQ(g(Coord::phi, Coord::phi, Coord::r), 0.5);
    int nonzero = 0;
    for (double v : g.values) nonzero += v != 0.0 ? 1 : 0;
    EXPECT_EQ(nonzero, 3);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            EXPECT_EQ(g(Coord::z, static_cast<Coord>(a), static_cast<Coord>(b)), 0.0);
            EXPECT_EQ(g(static_cast<Coord>(a), Coord::z, static_cast<Coord>(b)), 0.0);
        }
}

TEST(Christoffel, MatchesFiniteDifferencesOfEmbeddingMetric) {
    // Gamma from the polar metric obtained by pulling the embedding metric
    // back through the polar chart, differentiated numerically.
    const double r = 1.7, phi = 0.9;
    auto g_pol = [](double rr, double pp) {
        const SymPoint q = SymPoint::from_cylindrical(rr, pp, 0.0);
        const Eigen::Matrix3d j = polar_jacobian(q);
        return Eigen::Matrix3d(j.transpose() * oracle::metric_from_embedding(q.x(), q.y()) * j);
    };
    const double h = 1e-5;
    std::array<Eigen::Matrix3d, 3> dg{(g_pol(r + h, phi) - g_pol(r - h, phi)) / (2 * h),
                                      (g_pol(r, phi + h) - g_pol(r, phi - h)) / (2 * h), Eigen::Matrix3d::Zero()};
    const Eigen::Matrix3d ginv = g_pol(r, phi).inverse();
    const Christoffel got = christoffel_at(SymPoint::from_cylindrical(r, phi, 0.0));
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k)
            for (int l = 0; l < 3; ++l) {
                double want = 0.0;
                for (int m = 0; m < 3; ++m) want += 0.5 * ginv(i, m) * (dg[l](m, k) + dg[k](m, l) - dg[m](k, l));
                EXPECT_NEAR(got(static_cast<Coord>(i), static_cast<Coord>(k), static_cast<Coord>(l)), want, 1e-7);
            }
}

TEST(ConeEmbed, Examples) {
    EXPECT_EQ(cone_embed(1, 0), Vec3(1, 0, std::sqrt(3.0)));
    EXPECT_EQ(cone_embed(0, 0), Vec3(0, 0, 0));
    EXPECT_NEAR((cone_embed(3, 4) - Vec3(3, 4, 5 * std::sqrt(3.0))).norm(), 0.0, 1e-14);
    EXPECT_EQ(cone_embed(SymPoint::from_cartesian(3, 4, 9)), cone_embed(3, 4));
}

TEST(CurveLength, Examples) {
    EXPECT_NEAR(curve_length(sample_circle({0, 1, 0, two_pi}, 64)), two_pi, 1e-12);
    EXPECT_NEAR(curve_length(sample_segment({Vec3(1, 0, 0), Vec3(2, 0, 0)}, 8)), 2.0, 1e-13);
    EXPECT_NEAR(curve_length(sample_segment({Vec3(0.5, 0.5, 0), Vec3(0.5, 0.5, 5)}, 8)), 5.0, 1e-13);
    EXPECT_THROW(curve_length(sample_segment({Vec3(-1, 0, 0), Vec3(1, 0, 0)}, 9)), Error);
}

TEST(CurveLength, SampledCurvesConvergeAtSecondOrder) {
    auto chord_length = [](std::size_t n) {
        std::vector<SymPoint> pts;
        for (std::size_t k = 0; k < n; ++k) pts.push_back(SymPoint::from_cylindrical(2.0, pi * k / (n - 1.0), 0));
        return curve_length(unwrap_curve(pts));
    };
    const double exact = 2.0 * pi;
    const double e1 = std::abs(chord_length(33) - exact);
    const double e2 = std::abs(chord_length(65) - exact);
    EXPECT_GT(e1 / e2, 3.5);
}

TEST(CurveLengthProperty, AdditiveUnderConcatenation) {
    const MatrixCurve a = sample_circle({1, 2, 0.1, 1.5}, 20);
    const MatrixCurve b = sample_circle({1, 2, 1.5, 4.0}, 30);
    EXPECT_NEAR(curve_length(concat_curves(a, b)), curve_length(a) + curve_length(b), 1e-12);
    EXPECT_NEAR(curve_length(concat_curves(a, b)), 2.0 * 3.9, 1e-12);
}
