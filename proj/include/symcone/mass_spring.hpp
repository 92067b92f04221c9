#pragma once

// Two unit masses on a line with springs: fixed walls (three springs), free
// (one spring) and periodic (two springs on a circle of length 2a). The
// Hessian at equilibrium is a point of Sym(2,R) and depends linearly on the
// spring constants, so the cone metric pulls back to parameter space.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "symcone/error.hpp"
#include "symcone/metric_geometry.hpp"
#include "symcone/symspace.hpp"

namespace symcone {

enum class Boundary { fixed, open, periodic };

constexpr std::string_view to_string(Boundary b) noexcept {
    switch (b) {
        case Boundary::fixed: return "fixed";
        case Boundary::open: return "open";
        case Boundary::periodic: return "periodic";
    }
    return "unknown";
}

inline Boundary boundary_from_string(std::string_view s) {
    if (s == "fixed") return Boundary::fixed;
    if (s == "open") return Boundary::open;
    if (s == "periodic") return Boundary::periodic;
    throw Error(ErrorKind::InvalidArgument, "unknown boundary '" + std::string(s) + "'");
}

/// Number of spring constants (dim K) for a boundary kind.
constexpr std::size_t spring_count(Boundary b) noexcept {
    switch (b) {
        case Boundary::fixed: return 3;
        case Boundary::open: return 1;
        case Boundary::periodic: return 2;
    }
    return 0;
}

struct SpringSystem {
    Boundary boundary = Boundary::fixed;
    std::vector<double> kappas;
    double rest_length = 1.0;

    SpringSystem(Boundary b, std::vector<double> k, double a = 1.0)
        : boundary(b), kappas(std::move(k)), rest_length(a) {
        if (kappas.size() != spring_count(b)) {
            throw Error(ErrorKind::InvalidArgument, std::string(to_string(b)) + " boundary needs " +
                                                        std::to_string(spring_count(b)) + " spring constants");
        }
        if (!(rest_length > 0.0)) throw Error(ErrorKind::InvalidArgument, "rest length must be > 0");
    }

    Eigen::VectorXd kappa_vector() const { return Eigen::Map<const Eigen::VectorXd>(kappas.data(), kappas.size()); }
};

inline double energy(const SpringSystem& s, double x1, double x2) {
    const double a = s.rest_length;
    const auto& k = s.kappas;
    auto sq = [](double v) { return v * v; };
    switch (s.boundary) {
        case Boundary::fixed:
            return 0.5 * (k[0] * sq(x1 - a) + k[1] * sq(x2 - x1 - a) + k[2] * sq(3.0 * a - x2 - a));
        case Boundary::open: return 0.5 * k[0] * sq(x2 - x1 - a);
        case Boundary::periodic:
            // the second spring wraps around from x2 to x1 + 2a
            return 0.5 * (k[0] * sq(x2 - x1 - a) + k[1] * sq(x1 + 2.0 * a - x2 - a));
    }
    return 0.0;
}

/// Fixed walls: (a, 2a). Otherwise translation is free; (0, a) by convention.
inline std::array<double, 2> equilibrium(const SpringSystem& s) {
    const double a = s.rest_length;
    if (s.boundary == Boundary::fixed) return {a, 2.0 * a};
    return {0.0, a};
}

inline Eigen::Matrix2d hessian_entries(const SpringSystem& s) {
    const auto& k = s.kappas;
    Eigen::Matrix2d h;
    switch (s.boundary) {
        case Boundary::fixed: h << k[0] + k[1], -k[1], -k[1], k[1] + k[2]; break;
        case Boundary::open: h << k[0], -k[0], -k[0], k[0]; break;
        case Boundary::periodic: {
            const double t = k[0] + k[1];
            h << t, -t, -t, t;
            break;
        }
    }
    return h;
}

inline SymPoint hessian(const SpringSystem& s) {
    const Eigen::Matrix2d h = hessian_entries(s);
    return point_from_entries(h(0, 0), h(0, 1), h(1, 1));
}

/// Matrix of kappa -> (x, y, z) of the Hessian.
inline Eigen::MatrixXd param_map(Boundary b) {
    Eigen::MatrixXd m(3, spring_count(b));
    switch (b) {
        case Boundary::fixed: m << 0.5, 0.0, -0.5, 0.0, -1.0, 0.0, 0.5, 1.0, 0.5; break;
        case Boundary::open: m << 0.0, -1.0, 1.0; break;
        case Boundary::periodic: m << 0.0, 0.0, -1.0, -1.0, 1.0, 1.0; break;
    }
    return m;
}

/// M^T g(F(kappa)) M.
inline Eigen::MatrixXd pullback_metric(Boundary b, const std::vector<double>& kappas) {
    const SpringSystem s(b, kappas);
    const SymPoint p = hessian(s);
    if (p.on_singular_line()) {
        throw Error(ErrorKind::SingularImage, "the Hessian has a repeated eigenvalue; the metric is undefined there");
    }
    const Eigen::MatrixXd m = param_map(b);
    const Eigen::Index n = m.cols();
    Eigen::MatrixXd g(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) g(i, j) = inner_coords(p, m.col(i), m.col(j));
    }
    return g;
}

/// Closed form of the fixed-boundary pullback in terms of the image point.
inline Eigen::Matrix3d fixed_pullback_closed_form(const SymPoint& p) {
    if (p.on_singular_line()) throw Error(ErrorKind::SingularImage, "image point lies on the singular line");
    const double x = p.x();
    const double y = p.y();
    const double r2 = p.r_squared();
    Eigen::Matrix3d g;
    g << 2 * r2 + 3 * x * x, 2 * r2 - 6 * x * y, -3 * x * x,
         2 * r2 - 6 * x * y, 8 * r2 + 12 * y * y, 2 * r2 + 6 * x * y,
         -3 * x * x, 2 * r2 + 6 * x * y, 2 * r2 + 3 * x * x;
    return g / (4.0 * r2);
}

/// Older closed form for the fixed boundary. Its (1,1), (1,3) and (3,3)
/// entries are off, so it does not equal M^T g M; kept for comparison.
inline Eigen::Matrix3d fixed_pullback_published_form(const SymPoint& p) {
    if (p.on_singular_line()) throw Error(ErrorKind::SingularImage, "image point lies on the singular line");
    const double x = p.x();
    const double y = p.y();
    const double r2 = p.r_squared();
    Eigen::Matrix3d g;
    g << r2 + 3 * x * x, 2 * r2 - 6 * x * y, r2 - 3 * x * x,
         2 * r2 - 6 * x * y, 8 * r2 + 12 * y * y, 2 * r2 + 6 * x * y,
         r2 - 3 * x * x, 2 * r2 + 6 * x * y, r2 + 3 * x * x;
    return g / (4.0 * r2);
}

/// Orthonormal null-space basis (as columns): right singular vectors whose
/// singular value is below tol * (largest singular value). Each column is
/// signed so its first nonzero component is positive.
inline Eigen::MatrixXd metric_kernel(const Eigen::MatrixXd& g, double tol = 1e-10) {
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(g, Eigen::ComputeFullV);
    const Eigen::VectorXd sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv.maxCoeff() : 0.0;
    std::vector<Eigen::Index> null_cols;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) <= tol * smax) null_cols.push_back(i);
    }
    Eigen::MatrixXd basis(g.cols(), static_cast<Eigen::Index>(null_cols.size()));
    for (std::size_t j = 0; j < null_cols.size(); ++j) {
        Eigen::VectorXd v = svd.matrixV().col(null_cols[j]);
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            if (std::abs(v(i)) > 1e-14) {
                if (v(i) < 0.0) v = -v;
                break;
            }
        }
        basis.col(static_cast<Eigen::Index>(j)) = v;
    }
    return basis;
}

}  // namespace symcone
