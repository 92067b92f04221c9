#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "symcone/eigen_oracle.hpp"

using namespace symcone;

TEST(ClosedForm, DiagonalMatrix) {
    const EigenPair e = eigen_closed_form(SymPoint::from_cartesian(1, 0, 0), 0.0);
    EXPECT_EQ(e.lambda1, 1.0);
    EXPECT_EQ(e.lambda2, -1.0);
    EXPECT_EQ(e.v1, Eigen::Vector2d(1, 0));
}

TEST(ClosedForm, AntidiagonalMatrix) {
    const SymPoint p = SymPoint::from_cartesian(0, 1, 0);
    const EigenPair e = eigen_closed_form(p, pi / 2);
    EXPECT_NEAR(e.v1.x(), std::sqrt(0.5), 1e-15);
    EXPECT_NEAR(e.v1.y(), std::sqrt(0.5), 1e-15);
    EXPECT_EQ(e.lambda1, 1.0);
    EXPECT_LE((p.matrix() * e.v1 - e.v1).norm(), 1e-15);
}

TEST(ClosedForm, SpringHessian) {
    const EigenPair e = eigen_closed_form(SymPoint::from_cartesian(0, -1, 2), -pi / 2);
    EXPECT_EQ(e.lambda1, 3.0);
    EXPECT_EQ(e.lambda2, 1.0);
}

TEST(ClosedForm, BranchShiftFlipsSign) {
    const SymPoint p = SymPoint::from_cylindrical(2.0, 0.8, 1.0);
    const EigenPair a = eigen_closed_form(p, 0.8);
    const EigenPair b = eigen_closed_form(p, 0.8 + two_pi);
    EXPECT_LE((a.v1 + b.v1).norm(), 1e-14);
    EXPECT_EQ(a.lambda1, b.lambda1);
}

TEST(ClosedForm, Errors) {
    try {
        eigen_closed_form(SymPoint::from_cartesian(0, 0, 1), 0.0);
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::SingularPoint);
    }
    try {
        eigen_closed_form(SymPoint::from_cartesian(1, 0, 0), 1.0);
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::BranchMismatch);
    }
}

TEST(Numeric, Examples) {
    const EigenPair a = eigen_numeric(point_from_entries(2, -1, 2));
    EXPECT_NEAR(a.lambda1, 3.0, 1e-15);
    EXPECT_NEAR(a.lambda2, 1.0, 1e-15);
    const EigenPair b = eigen_numeric(point_from_entries(5, 0, 5));
    EXPECT_EQ(b.lambda1, 5.0);
    EXPECT_EQ(b.lambda2, 5.0);
    EXPECT_EQ(b.v1, Eigen::Vector2d(1, 0));
    EXPECT_EQ(b.v2, Eigen::Vector2d(0, 1));
}

TEST(Numeric, SignConvention) {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-5, 5);
    for (int k = 0; k < 1000; ++k) {
        const EigenPair e = eigen_numeric(SymPoint::from_cartesian(u(rng), u(rng), u(rng)));
        for (const auto& v : {e.v1, e.v2}) {
            EXPECT_TRUE(v.x() > 0.0 || (v.x() == 0.0 && v.y() >= 0.0));
        }
    }
    // first component exactly zero: second made nonnegative
    const EigenPair e = eigen_numeric(SymPoint::from_cartesian(-1, 0, 0));
    EXPECT_EQ(e.v1, Eigen::Vector2d(0, 1));
}

TEST(NumericProperty, AgreesWithClosedFormAndJacobiRotation) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-10, 10);
    for (int k = 0; k < 10000; ++k) {
        const double a11 = u(rng), a12 = u(rng), a22 = u(rng);
        const SymPoint p = point_from_entries(a11, a12, a22);
        const EigenPair n = eigen_numeric(p);
        const EigenPair c = eigen_closed_form(p, *p.phi());
        const double scale = std::abs(p.z()) + p.r() + 1.0;
        EXPECT_NEAR(n.lambda1, c.lambda1, 1e-12 * scale);
        EXPECT_NEAR(n.lambda2, c.lambda2, 1e-12 * scale);
        EXPECT_NEAR(n.lambda1 - n.lambda2, 2.0 * p.r(), 1e-12 * scale);
        EXPECT_LT(angle_mod_sign(n.v1, c.v1), 1e-10);
        EXPECT_LT(angle_mod_sign(n.v1, oracle::jacobi_top_eigenvector(a11, a12, a22)), 1e-10);
        EXPECT_NEAR(n.v1.dot(n.v2), 0.0, 1e-12);
        EXPECT_NEAR(n.v1.norm(), 1.0, 1e-14);
        EXPECT_LT((p.matrix() * n.v1 - n.lambda1 * n.v1).norm(), 1e-12 * (std::abs(n.lambda1) + 1) * 10);
        EXPECT_LT(eigen_residual(p, c.v1), 1e-12 * (std::abs(c.lambda1) + 1) * 10);
    }
}

TEST(Residual, Examples) {
    const SymPoint d = SymPoint::from_cartesian(1, 0, 0);
    EXPECT_EQ(eigen_residual(d, Eigen::Vector2d(1, 0)), 0.0);
    EXPECT_NEAR(eigen_residual(d, Eigen::Vector2d(std::sqrt(0.5), std::sqrt(0.5))), 1.0, 1e-15);
    EXPECT_EQ(eigen_residual(SymPoint::from_cartesian(0, 0, 3), Eigen::Vector2d(0.6, 0.8)), 0.0);
}

TEST(AngleModSign, IgnoresSign) {
    EXPECT_EQ(angle_mod_sign(Eigen::Vector2d(1, 0), Eigen::Vector2d(-1, 0)), 0.0);
    EXPECT_NEAR(angle_mod_sign(Eigen::Vector2d(1, 0), Eigen::Vector2d(0, -1)), pi / 2, 1e-15);
    EXPECT_NEAR(angle_mod_sign(Eigen::Vector2d(1, 0), Eigen::Vector2d(-1, 1).normalized()), pi / 4, 1e-15);
}
