#pragma once

// The cone metric g = Df^T Df pulled back by f(x, y) = (x, y, sqrt(3) r),
// extended by dz^2 along the trace direction. In cylindrical coordinates
// (r, phi, z) it is diag(4, r^2, 1).

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <numbers>

#include "symcone/error.hpp"
#include "symcone/symspace.hpp"

namespace symcone {

/// Cylindrical coordinate index.
enum class Coord { r = 0, phi = 1, z = 2 };

struct MetricAtPoint {
    SymPoint base;
    Eigen::Matrix3d cart;  ///< g_ij in the (dx, dy, dz) basis
    Vec3 pol;              ///< diagonal of g in the (dr, dphi, dz) basis
};

/// Reference orthonormal frame, as cartesian coordinate components.
struct FrameAtPoint {
    SymPoint base;
    Vec3 e1;
    Vec3 e2;
    Vec3 e3;
};

/// Gamma^i_{kl} in cylindrical coordinates, indexed (i, k, l).
struct Christoffel {
    std::array<double, 27> values{};

    double operator()(Coord i, Coord k, Coord l) const { return values[index(i, k, l)]; }
    double& at(Coord i, Coord k, Coord l) { return values[index(i, k, l)]; }

    static std::size_t index(Coord i, Coord k, Coord l) {
        return 9 * static_cast<std::size_t>(i) + 3 * static_cast<std::size_t>(k) + static_cast<std::size_t>(l);
    }
};

namespace detail {

inline void require_off_axis(const SymPoint& p, const char* what) {
    if (p.on_singular_line()) {
        throw Error(ErrorKind::SingularPoint, std::string(what) + " is undefined on the singular line (r = 0)");
    }
}

}  // namespace detail

inline MetricAtPoint metric_at(const SymPoint& p) {
    detail::require_off_axis(p, "metric");
    const double nx = p.x() / p.r();
    const double ny = p.y() / p.r();
    Eigen::Matrix3d cart;
    cart << 1.0 + 3.0 * nx * nx, 3.0 * nx * ny, 0.0,
            3.0 * nx * ny, 1.0 + 3.0 * ny * ny, 0.0,
            0.0, 0.0, 1.0;
    return {p, cart, Vec3(4.0, p.r_squared(), 1.0)};
}

/// g(u, v) for coordinate-component vectors. Evaluated as the Euclidean
/// product of the pushforwards under the cone embedding, which avoids the
/// cancellation of forming u^T G v entry by entry.
inline double inner_coords(const SymPoint& p, const Vec3& u, const Vec3& v) {
    detail::require_off_axis(p, "metric");
    const double nu = (p.x() * u.x() + p.y() * u.y()) / p.r();
    const double nv = (p.x() * v.x() + p.y() * v.y()) / p.r();
    return u.x() * v.x() + u.y() * v.y() + 3.0 * nu * nv + u.z() * v.z();
}

/// Coordinate vector field d/dr, d/dphi or d/dz at p, in cartesian components.
inline Vec3 coordinate_vector(const SymPoint& p, Coord c) {
    switch (c) {
        case Coord::r:
            detail::require_off_axis(p, "d/dr");
            return {p.x() / p.r(), p.y() / p.r(), 0.0};
        case Coord::phi: return {-p.y(), p.x(), 0.0};
        case Coord::z: return {0.0, 0.0, 1.0};
    }
    return Vec3::Zero();
}

inline FrameAtPoint frame_at(const SymPoint& p) {
    detail::require_off_axis(p, "reference frame");
    const double c = p.x() / p.r();
    const double s = p.y() / p.r();
    return {p,
            Vec3(0.5 * c * c + s * s, -0.5 * c * s, 0.0),
            Vec3(-0.5 * c * s, 0.5 * s * s + c * c, 0.0),
            Vec3(0.0, 0.0, 1.0)};
}

/// Columns are e1, e2, e3 in cylindrical (d/dr, d/dphi, d/dz) components.
inline Eigen::Matrix3d frame_cylindrical(const SymPoint& p) {
    detail::require_off_axis(p, "reference frame");
    const double c = p.x() / p.r();
    const double s = p.y() / p.r();
    Eigen::Matrix3d m;
    m << 0.5 * c, 0.5 * s, 0.0,
         -s / p.r(), c / p.r(), 0.0,
         0.0, 0.0, 1.0;
    return m;
}

inline Vec3 to_coords(const TangentVec& v) {
    const FrameAtPoint f = frame_at(v.base);
    return v.frame.x() * f.e1 + v.frame.y() * f.e2 + v.frame.z() * f.e3;
}

inline TangentVec from_coords(const SymPoint& p, const Vec3& v) {
    const FrameAtPoint f = frame_at(p);
    return {p, Vec3(inner_coords(p, f.e1, v), inner_coords(p, f.e2, v), inner_coords(p, f.e3, v))};
}

inline double inner(const SymPoint& p, const TangentVec& u, const TangentVec& v) {
    const double tol = detail::coincidence_tol(p, u.base);
    if (!approx_equal(u.base, p, tol) || !approx_equal(v.base, p, tol)) {
        throw Error(ErrorKind::BaseMismatch, "tangent vectors are based at a different point");
    }
    return inner_coords(p, to_coords(u), to_coords(v));
}

/// omega(X) = g(d/dphi, X) / (2 r^2), for X in coordinate components.
inline double connection_form_coords(const SymPoint& p, const Vec3& x) {
    detail::require_off_axis(p, "connection form");
    return inner_coords(p, coordinate_vector(p, Coord::phi), x) / (2.0 * p.r_squared());
}

inline double connection_form(const SymPoint& p, const TangentVec& x) {
    return connection_form_coords(p, to_coords(x));
}

/// Levi-Civita symbols of diag(4, r^2, 1) from the metric and its analytic
/// first derivatives.
inline Christoffel christoffel_at(const SymPoint& p) {
    detail::require_off_axis(p, "Christoffel symbols");
    const double r = p.r();
    const std::array<double, 3> g_inv{0.25, 1.0 / (r * r), 1.0};

    // dg[m][k][l] = d_m g_kl; only d_r g_phiphi = 2r survives
    double dg[3][3][3] = {};
    dg[0][1][1] = 2.0 * r;

    Christoffel gamma;
    for (int i = 0; i < 3; ++i) {
        for (int k = 0; k < 3; ++k) {
            for (int l = 0; l < 3; ++l) {
                // diagonal metric: only m = i contributes
                const double sum = dg[l][i][k] + dg[k][i][l] - dg[i][k][l];
                gamma.at(static_cast<Coord>(i), static_cast<Coord>(k), static_cast<Coord>(l)) = 0.5 * g_inv[i] * sum;
            }
        }
    }
    return gamma;
}

/// Cone embedding (x, y) -> (x, y, sqrt(3) r); z is ignored.
inline Vec3 cone_embed(double x, double y) { return {x, y, std::numbers::sqrt3 * std::hypot(x, y)}; }
inline Vec3 cone_embed(const SymPoint& p) { return cone_embed(p.x(), p.y()); }

/// sqrt(g(v, v)) at p.
inline double metric_speed(const SymPoint& p, const Vec3& v) { return std::sqrt(inner_coords(p, v, v)); }

/// Length under g, by five-point Gauss-Legendre on every sample interval.
/// Analytic curves integrate the exact velocity; sampled curves the chords.
inline double curve_length(const MatrixCurve& c) {
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (c.samples()[k].on_singular_line() || c.is_singular(k)) {
            throw Error(ErrorKind::SingularPoint, "curve length needs every sample off the singular line");
        }
    }
    static constexpr std::array<double, 5> nodes{-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                                                 0.9061798459386640};
    static constexpr std::array<double, 5> weights{0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                                   0.4786286704993665, 0.2369268850561891};
    double length = 0.0;
    for (std::size_t k = 0; k + 1 < c.size(); ++k) {
        const double t0 = c.params()[k];
        const double t1 = c.params()[k + 1];
        const double half = 0.5 * (t1 - t0);
        const double mid = 0.5 * (t0 + t1);
        double acc = 0.0;
        for (std::size_t q = 0; q < nodes.size(); ++q) {
            const double t = mid + half * nodes[q];
            const SymPoint at = SymPoint::from_cartesian(c.position_at(k, t));
            acc += weights[q] * metric_speed(at, c.velocity_at(k, t));
        }
        length += half * acc;
    }
    return length;
}

}  // namespace symcone
