#pragma once

// Independent reference computations for the test suites. Nothing here
// calls the code under test for the quantity it is used to check.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "symcone/symcone.hpp"

namespace oracle {

using symcone::SymPoint;
using symcone::Vec3;

/// g = Df^T Df (+ dz^2) with Df written out from f(x, y) = (x, y, sqrt(3) r).
inline Eigen::Matrix3d metric_from_embedding(double x, double y) {
    const double r = std::hypot(x, y);
    Eigen::Matrix<double, 3, 2> df;
    df << 1.0, 0.0, 0.0, 1.0, std::sqrt(3.0) * x / r, std::sqrt(3.0) * y / r;
    Eigen::Matrix3d g = Eigen::Matrix3d::Zero();
    g.topLeftCorner<2, 2>() = df.transpose() * df;
    g(2, 2) = 1.0;
    return g;
}

/// Central second differences of a two-variable function.
template <typename F>
Eigen::Matrix2d fd_hessian(F&& f, double x1, double x2, double h) {
    Eigen::Matrix2d hess;
    hess(0, 0) = (f(x1 + h, x2) - 2.0 * f(x1, x2) + f(x1 - h, x2)) / (h * h);
    hess(1, 1) = (f(x1, x2 + h) - 2.0 * f(x1, x2) + f(x1, x2 - h)) / (h * h);
    hess(0, 1) = hess(1, 0) =
        (f(x1 + h, x2 + h) - f(x1 + h, x2 - h) - f(x1 - h, x2 + h) + f(x1 - h, x2 - h)) / (4.0 * h * h);
    return hess;
}

/// Jacobi rotation eigenvector for the larger eigenvalue of [[a, b], [b, c]].
inline Eigen::Vector2d jacobi_top_eigenvector(double a, double b, double c) {
    const double theta = 0.5 * std::atan2(2.0 * b, a - c);
    return {std::cos(theta), std::sin(theta)};
}

/// Smooth closed curve r(t) = r0 + sum a_k cos(k t + p_k), phi(t) = w t + sum ...,
/// z(t) = sum c_k sin(k t); radius stays >= r_min.
struct FourierCurve {
    double r0 = 1.0;
    std::array<double, 3> ra{}, rp{}, pa{}, pp{}, za{};
    double turns = 1.0;

    Vec3 at(double t) const {
        double r = r0, phi = symcone::two_pi * turns * t, z = 0.0;
        for (int k = 0; k < 3; ++k) {
            const double s = symcone::two_pi * (k + 1) * t;
            r += ra[k] * std::cos(s + rp[k]);
            phi += pa[k] * std::sin(s + pp[k]);
            z += za[k] * std::sin(s);
        }
        return {r * std::cos(phi), r * std::sin(phi), z};
    }
};

inline FourierCurve random_fourier_curve(std::mt19937_64& rng, double r_min = 0.1) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> base(0.3, 3.0);
    FourierCurve c;
    c.r0 = base(rng);
    double amp = 0.0;
    for (int k = 0; k < 3; ++k) {
        c.ra[k] = 0.3 * u(rng) * c.r0 / (k + 1);
        amp += std::abs(c.ra[k]);
        c.rp[k] = symcone::pi * u(rng);
        c.pa[k] = 0.5 * u(rng) / (k + 1);
        c.pp[k] = symcone::pi * u(rng);
        c.za[k] = u(rng);
    }
    // keep the radius bounded below
    if (c.r0 - amp < r_min) c.r0 = r_min + amp;
    c.turns = std::round(2.0 * u(rng));
    return c;
}

inline std::vector<SymPoint> sample(const FourierCurve& c, std::size_t n) {
    std::vector<SymPoint> pts;
    for (std::size_t k = 0; k < n; ++k) {
        pts.push_back(SymPoint::from_cartesian(c.at(static_cast<double>(k) / static_cast<double>(n - 1))));
    }
    return pts;
}

/// Parallel transport in cylindrical coordinate components along a sampled
/// curve: dV^i/dt = -Gamma^i_{kl}(r) gamma'^k V^l with Gamma^r_{phi phi} = -r/4,
/// Gamma^phi_{r phi} = Gamma^phi_{phi r} = 1/r. Chords are linear in (x, y, z);
/// RK4 with `sub` steps per interval.
inline Vec3 transport_cylindrical(const std::vector<SymPoint>& pts, Vec3 v, int sub) {
    auto rhs = [](const Vec3& pos, const Vec3& vel, const Vec3& V) {
        const double r = std::hypot(pos.x(), pos.y());
        const double dr = (pos.x() * vel.x() + pos.y() * vel.y()) / r;
        const double dphi = (pos.x() * vel.y() - pos.y() * vel.x()) / (r * r);
        return Vec3(0.25 * r * dphi * V(1), -(dr * V(1) + dphi * V(0)) / r, 0.0);
    };
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        const Vec3 a = pts[k].cartesian();
        const Vec3 d = pts[k + 1].cartesian() - a;
        const double h = 1.0 / sub;
        for (int i = 0; i < sub; ++i) {
            const double t = i * h;
            auto pos = [&](double s) { return Vec3(a + s * d); };
            const Vec3 k1 = rhs(pos(t), d, v);
            const Vec3 k2 = rhs(pos(t + h / 2), d, v + h / 2 * k1);
            const Vec3 k3 = rhs(pos(t + h / 2), d, v + h / 2 * k2);
            const Vec3 k4 = rhs(pos(t + h), d, v + h * k3);
            v += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
        }
    }
    return v;
}

}  // namespace oracle
