#pragma once

// Eigenpairs of 2x2 symmetric matrices. eigen_closed_form follows the
// half-angle formula on a caller-selected branch of phi; eigen_numeric works
// from the matrix entries alone and is the independent reference used to
// check every transport result.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "symcone/error.hpp"
#include "symcone/symspace.hpp"

namespace symcone {

struct EigenPair {
    double lambda1 = 0.0;  ///< larger eigenvalue
    double lambda2 = 0.0;
    Eigen::Vector2d v1 = Eigen::Vector2d::UnitX();
    Eigen::Vector2d v2 = Eigen::Vector2d::UnitY();
};

inline EigenPair eigen_closed_form(const SymPoint& p, double phi_branch) {
    if (p.on_singular_line()) {
        throw Error(ErrorKind::SingularPoint, "every direction is an eigenvector on the singular line");
    }
    if (std::abs(wrap_angle(phi_branch - *p.phi())) > 1e-9 * std::max(1.0, std::abs(phi_branch))) {
        throw Error(ErrorKind::BranchMismatch, "phi branch is not congruent to the point's angle mod 2 pi");
    }
    const double h = 0.5 * phi_branch;
    EigenPair e;
    e.lambda1 = p.z() + p.r();
    e.lambda2 = p.z() - p.r();
    e.v1 = {std::cos(h), std::sin(h)};
    e.v2 = {-std::sin(h), std::cos(h)};
    return e;
}

namespace detail {

/// First component >= 0; second >= 0 when the first vanishes.
inline Eigen::Vector2d canonical_sign(Eigen::Vector2d v) {
    if (v.x() < 0.0 || (v.x() == 0.0 && v.y() < 0.0)) v = -v;
    return v;
}

}  // namespace detail

inline EigenPair eigen_numeric(const SymPoint& p) {
    const MatrixEntries m = entries_from_point(p);
    const double mean = 0.5 * (m.a11 + m.a22);
    const double half_diff = 0.5 * (m.a11 - m.a22);
    const double radius = std::hypot(half_diff, m.a12);

    EigenPair e;
    e.lambda1 = mean + radius;
    e.lambda2 = mean - radius;
    if (radius == 0.0) return e;  // scalar matrix: standard basis

    // pick the row of (A - lambda1 I) that does not cancel
    Eigen::Vector2d v = half_diff >= 0.0 ? Eigen::Vector2d(radius + half_diff, m.a12)
                                         : Eigen::Vector2d(m.a12, radius - half_diff);
    v.normalize();
    e.v1 = detail::canonical_sign(v);
    e.v2 = detail::canonical_sign(Eigen::Vector2d(-e.v1.y(), e.v1.x()));
    return e;
}

/// |A v - (v^T A v) v| for a unit vector v; zero iff v is an eigenvector.
inline double eigen_residual(const SymPoint& p, const Eigen::Vector2d& v) {
    const Eigen::Matrix2d a = p.matrix();
    const Eigen::Vector2d av = a * v;
    return (av - v.dot(av) * v).norm();
}

/// Angle between the lines spanned by u and v, in [0, pi/2].
inline double angle_mod_sign(const Eigen::Vector2d& u, const Eigen::Vector2d& v) {
    const double cross = u.x() * v.y() - u.y() * v.x();
    return std::atan2(std::abs(cross), std::abs(u.dot(v)));
}

}  // namespace symcone
