#pragma once

// Cross-checks of the Berry connection and curvature: the cone embedded in
// R^3 (extrinsic, finite differences of the pushed-forward frame) against the
// metric alone (Christoffel symbols), plus the complexified form
// Im<n, dn> with n = (E1 + i E2) / sqrt(2).

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "symcone/error.hpp"
#include "symcone/metric_geometry.hpp"
#include "symcone/symspace.hpp"

namespace symcone {

struct EmbeddedFrame {
    SymPoint base;
    Vec3 E1;
    Vec3 E2;
    Vec3 nu;
};

/// Differential of the cone embedding applied to a coordinate-component vector.
inline Vec3 push_forward(const SymPoint& p, const Vec3& v) {
    detail::require_off_axis(p, "cone embedding differential");
    const double radial = (p.x() * v.x() + p.y() * v.y()) / p.r();
    return {v.x(), v.y(), std::numbers::sqrt3 * radial};
}

inline EmbeddedFrame embedded_frame(const SymPoint& p) {
    const FrameAtPoint f = frame_at(p);
    EmbeddedFrame out{p, push_forward(p, f.e1), push_forward(p, f.e2), Vec3::Zero()};
    out.nu = out.E1.cross(out.E2).normalized();
    return out;
}

namespace detail {

/// Step and displaced points for a central difference along coordinate i.
struct Stencil {
    SymPoint minus;
    SymPoint plus;
    double h = 0.0;
};

inline Stencil stencil(const SymPoint& p, Coord i) {
    require_off_axis(p, "finite-difference derivative");
    const double r = p.r();
    const double phi = *p.phi();
    const double z = p.z();
    switch (i) {
        case Coord::r: {
            const double h = 1e-6 * r;
            return {SymPoint::from_cylindrical(r - h, phi, z), SymPoint::from_cylindrical(r + h, phi, z), h};
        }
        case Coord::phi: {
            const double h = 1e-6;
            return {SymPoint::from_cylindrical(r, phi - h, z), SymPoint::from_cylindrical(r, phi + h, z), h};
        }
        case Coord::z: {
            const double h = 1e-6 * std::max(1.0, std::abs(z));
            return {SymPoint::from_cylindrical(r, phi, z - h), SymPoint::from_cylindrical(r, phi, z + h), h};
        }
    }
    return {};
}

/// Central difference of a vector-valued field F along coordinate i.
template <typename F>
auto partial(const SymPoint& p, Coord i, F&& field) {
    const Stencil s = stencil(p, i);
    return ((field(s.plus) - field(s.minus)) / (2.0 * s.h)).eval();
}

/// Directional derivative along a vector given in cylindrical components.
template <typename F>
auto directional(const SymPoint& p, const Vec3& cyl, F&& field) {
    auto d = (cyl(0) * partial(p, Coord::r, field)).eval();
    d += cyl(1) * partial(p, Coord::phi, field);
    d += cyl(2) * partial(p, Coord::z, field);
    return d;
}

inline Vec3 field_E1(const SymPoint& q) { return embedded_frame(q).E1; }
inline Vec3 field_E2(const SymPoint& q) { return embedded_frame(q).E2; }
inline Vec3 field_nu(const SymPoint& q) { return embedded_frame(q).nu; }

inline Vec3 polar_metric_diag(const SymPoint& p) { return {4.0, p.r_squared(), 1.0}; }

}  // namespace detail

/// omega_i = <E1, d_i E2> on the embedded cone.
inline double extrinsic_connection(const SymPoint& p, Coord i) {
    return embedded_frame(p).E1.dot(detail::partial(p, i, detail::field_E2));
}

/// omega_ab(d_i) = g(e_a, nabla_i e_b) from the metric and its Christoffel
/// symbols; a, b are frame indices 0..2.
inline double intrinsic_connection_component(const SymPoint& p, int a, int b, Coord i) {
    if (a < 0 || a > 2 || b < 0 || b > 2) throw Error(ErrorKind::InvalidArgument, "frame index must be 0, 1 or 2");
    const Eigen::Matrix3d frame = frame_cylindrical(p);
    const Vec3 eb = frame.col(b);
    const Vec3 d_eb = detail::partial(p, i, [b](const SymPoint& q) { return Vec3(frame_cylindrical(q).col(b)); });
    const Christoffel gamma = christoffel_at(p);

    Vec3 cov = d_eb;
    for (int m = 0; m < 3; ++m) {
        for (int k = 0; k < 3; ++k) {
            cov(m) += gamma(static_cast<Coord>(m), i, static_cast<Coord>(k)) * eb(k);
        }
    }
    const Vec3 g = detail::polar_metric_diag(p);
    return g.cwiseProduct(Vec3(frame.col(a))).dot(cov);
}

inline double intrinsic_connection(const SymPoint& p, Coord i) { return intrinsic_connection_component(p, 0, 1, i); }

/// Hermitian product <n, d_i n> for n = (E1 + i E2) / sqrt(2).
inline std::complex<double> complexified_product(const SymPoint& p, Coord i) {
    using C3 = Eigen::Vector3cd;
    auto n_field = [](const SymPoint& q) {
        const EmbeddedFrame f = embedded_frame(q);
        return C3((f.E1.cast<std::complex<double>>() + std::complex<double>(0.0, 1.0) * f.E2.cast<std::complex<double>>()) /
                  std::sqrt(2.0));
    };
    const C3 n = n_field(p);
    const C3 dn = detail::partial(p, i, n_field);
    return n.dot(dn);  // Eigen conjugates the left operand
}

inline double complexified_connection(const SymPoint& p, Coord i) { return complexified_product(p, i).imag(); }

/// II(e_a, e_b) = -<D_{e_a} nu, E_b> in the reference frame directions.
inline Eigen::Matrix2d second_fundamental_form(const SymPoint& p) {
    const EmbeddedFrame f = embedded_frame(p);
    const Eigen::Matrix3d frame = frame_cylindrical(p);
    Eigen::Matrix2d ii;
    for (int a = 0; a < 2; ++a) {
        const Vec3 d_nu = detail::directional(p, frame.col(a), detail::field_nu);
        ii(a, 0) = -d_nu.dot(f.E1);
        ii(a, 1) = -d_nu.dot(f.E2);
    }
    return ii;
}

/// <d_i E1, d_j E2> - <d_j E1, d_i E2> in coordinate directions.
inline double extrinsic_curvature_integrand(const SymPoint& p, Coord i, Coord j) {
    const Vec3 di_e1 = detail::partial(p, i, detail::field_E1);
    const Vec3 dj_e1 = detail::partial(p, j, detail::field_E1);
    const Vec3 di_e2 = detail::partial(p, i, detail::field_E2);
    const Vec3 dj_e2 = detail::partial(p, j, detail::field_E2);
    return di_e1.dot(dj_e2) - dj_e1.dot(di_e2);
}

/// II(d_i, E1) II(d_j, E2) - II(d_j, E1) II(d_i, E2).
inline double second_fundamental_products(const SymPoint& p, Coord i, Coord j) {
    const EmbeddedFrame f = embedded_frame(p);
    const Vec3 di_nu = detail::partial(p, i, detail::field_nu);
    const Vec3 dj_nu = detail::partial(p, j, detail::field_nu);
    auto ii = [&](const Vec3& d_nu, const Vec3& e) { return -d_nu.dot(e); };
    return ii(di_nu, f.E1) * ii(dj_nu, f.E2) - ii(dj_nu, f.E1) * ii(di_nu, f.E2);
}

/// d omega (e1, e2) from first derivatives of the embedded frame.
inline double curvature_form_frame(const SymPoint& p) {
    const Eigen::Matrix3d frame = frame_cylindrical(p);
    const Vec3 d1_e1 = detail::directional(p, frame.col(0), detail::field_E1);
    const Vec3 d2_e1 = detail::directional(p, frame.col(1), detail::field_E1);
    const Vec3 d1_e2 = detail::directional(p, frame.col(0), detail::field_E2);
    const Vec3 d2_e2 = detail::directional(p, frame.col(1), detail::field_E2);
    return d1_e1.dot(d2_e2) - d2_e1.dot(d1_e2);
}

/// Sectional curvature R(e1, e2, e2, e1) of the cone metric, from finite
/// differences of the Christoffel symbols only.
inline double intrinsic_curvature(const SymPoint& p) {
    // R^i_{jkl} = d_k G^i_{lj} - d_l G^i_{kj} + G^i_{km} G^m_{lj} - G^i_{lm} G^m_{kj}
    const Christoffel g0 = christoffel_at(p);
    std::array<Christoffel, 3> dg{};
    for (int c = 0; c < 3; ++c) {
        const detail::Stencil s = detail::stencil(p, static_cast<Coord>(c));
        const Christoffel gp = christoffel_at(s.plus);
        const Christoffel gm = christoffel_at(s.minus);
        for (std::size_t n = 0; n < 27; ++n) dg[c].values[n] = (gp.values[n] - gm.values[n]) / (2.0 * s.h);
    }
    auto G = [&](int i, int k, int l) { return g0(static_cast<Coord>(i), static_cast<Coord>(k), static_cast<Coord>(l)); };
    auto dG = [&](int d, int i, int k, int l) {
        return dg[d](static_cast<Coord>(i), static_cast<Coord>(k), static_cast<Coord>(l));
    };
    auto riemann = [&](int i, int j, int k, int l) {
        double v = dG(k, i, l, j) - dG(l, i, k, j);
        for (int m = 0; m < 3; ++m) v += G(i, k, m) * G(m, l, j) - G(i, l, m) * G(m, k, j);
        return v;
    };
    const Eigen::Matrix3d frame = frame_cylindrical(p);
    const Vec3 g = detail::polar_metric_diag(p);
    const Vec3 e1 = frame.col(0);
    const Vec3 e2 = frame.col(1);
    // R(e1, e2, e2, e1) = g_ii R^i_{jkl} e1^i e2^j e2^k e1^l with R(X,Y)Z conventions
    double k_sec = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l) k_sec += g(i) * e1(i) * riemann(i, j, k, l) * e2(j) * e1(k) * e2(l);
    return k_sec;
}

/// Trapezoid quadrature of omega(gamma') around the circle of the given
/// radius about L at height z; the periodic integrand makes this spectrally accurate.
inline double curvature_stokes(double radius, double z, std::size_t n = 10000) {
    if (!(radius > 0.0)) throw Error(ErrorKind::InvalidArgument, "circle radius must be > 0");
    if (n < 3) throw Error(ErrorKind::InvalidArgument, "need at least 3 quadrature nodes");
    const double dt = two_pi / static_cast<double>(n);
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double t = dt * static_cast<double>(k);
        const SymPoint p = SymPoint::from_cartesian(radius * std::cos(t), radius * std::sin(t), z);
        const Vec3 velocity(-radius * std::sin(t), radius * std::cos(t), 0.0);
        sum += connection_form_coords(p, velocity);
    }
    return sum * dt;
}

// ---------------------------------------------------------------------------

struct VerifyCheck {
    std::string name;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    bool pass() const { return max_deviation < tolerance; }
};

struct VerifyReport {
    std::uint64_t seed = 0;
    std::size_t n_points = 0;
    std::vector<VerifyCheck> checks;
    bool all_pass() const {
        for (const auto& c : checks) {
            if (!c.pass()) return false;
        }
        return true;
    }
};

/// Random points with r log-uniform in [1e-2, 1e2], phi uniform, z in [-10, 10].
inline std::vector<SymPoint> random_points(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> log_r(-2.0, 2.0);
    std::uniform_real_distribution<double> angle(-pi, pi);
    std::uniform_real_distribution<double> height(-10.0, 10.0);
    std::vector<SymPoint> pts;
    pts.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double r = std::pow(10.0, log_r(rng));
        const double a = angle(rng);
        pts.push_back(SymPoint::from_cylindrical(r, a, height(rng)));
    }
    return pts;
}

/// Runs every extrinsic/intrinsic cross-check at n random points.
inline VerifyReport run_verification(std::uint64_t seed = 0, std::size_t n_points = 1000) {
    std::mt19937_64 rng(seed);
    const std::vector<SymPoint> pts = random_points(rng, n_points);

    double frame_orth = 0.0, ext_int = 0.0, ext_cplx = 0.0, int_cplx = 0.0;
    double omega_phi = 0.0, omega_r = 0.0, omega_z = 0.0, cplx_real = 0.0, omega_e3 = 0.0;
    double det_ii = 0.0, ii_sym = 0.0, d_omega = 0.0, d_omega_vs_det = 0.0, gauss_identity = 0.0, k_intr = 0.0;

    auto upd = [](double& acc, double v) { acc = std::max(acc, std::abs(v)); };
    for (const SymPoint& p : pts) {
        const EmbeddedFrame f = embedded_frame(p);
        upd(frame_orth, f.E1.dot(f.E1) - 1.0);
        upd(frame_orth, f.E2.dot(f.E2) - 1.0);
        upd(frame_orth, f.E1.dot(f.E2));
        upd(frame_orth, f.E1.dot(f.nu));
        upd(frame_orth, f.E2.dot(f.nu));

        for (Coord i : {Coord::r, Coord::phi}) {
            const double e = extrinsic_connection(p, i);
            const double in = intrinsic_connection(p, i);
            const std::complex<double> c = complexified_product(p, i);
            upd(ext_int, e - in);
            upd(ext_cplx, e - c.imag());
            upd(int_cplx, in - c.imag());
            upd(cplx_real, c.real());
            upd(i == Coord::phi ? omega_phi : omega_r, i == Coord::phi ? e - 0.5 : e);
        }
        upd(omega_z, intrinsic_connection(p, Coord::z));
        for (Coord i : {Coord::r, Coord::phi, Coord::z}) {
            upd(omega_e3, intrinsic_connection_component(p, 0, 2, i));
            upd(omega_e3, intrinsic_connection_component(p, 1, 2, i));
        }

        const Eigen::Matrix2d ii = second_fundamental_form(p);
        const double dw = curvature_form_frame(p);
        upd(det_ii, ii.determinant());
        upd(ii_sym, ii(0, 1) - ii(1, 0));
        upd(d_omega, dw);
        upd(d_omega_vs_det, dw - ii.determinant());
        upd(gauss_identity, extrinsic_curvature_integrand(p, Coord::r, Coord::phi) -
                                second_fundamental_products(p, Coord::r, Coord::phi));
        upd(k_intr, intrinsic_curvature(p));
    }

    double stokes = 0.0;
    for (const auto& [radius, z] : {std::pair{1e-3, 0.0}, std::pair{1.0, 0.0}, std::pair{10.0, 7.0}}) {
        upd(stokes, curvature_stokes(radius, z) - pi);
    }

    VerifyReport rep;
    rep.seed = seed;
    rep.n_points = n_points;
    rep.checks = {
        {"frame_orthonormal", frame_orth, 1e-10},
        {"extrinsic_vs_intrinsic", ext_int, 1e-5},
        {"extrinsic_vs_complexified", ext_cplx, 1e-5},
        {"intrinsic_vs_complexified", int_cplx, 1e-5},
        {"omega_phi_is_half", omega_phi, 1e-5},
        {"omega_r_is_zero", omega_r, 1e-5},
        {"omega_z_is_zero", omega_z, 1e-5},
        {"omega_13_23_zero", omega_e3, 1e-5},
        {"complexified_real_part_zero", cplx_real, 1e-5},
        {"second_fundamental_form_symmetric", ii_sym, 1e-5},
        {"det_II_zero", det_ii, 1e-4},
        {"d_omega_zero", d_omega, 1e-4},
        {"d_omega_equals_det_II", d_omega_vs_det, 1e-4},
        {"curvature_integrand_equals_II_products", gauss_identity, 1e-4},
        {"intrinsic_curvature_zero", k_intr, 1e-4},
        {"stokes_integral_pi", stokes, 1e-10},
    };
    return rep;
}

}  // namespace symcone
