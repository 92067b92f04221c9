#pragma once

// Coordinates on Sym(2,R): the matrix [[x+z, y], [y, -x+z]] is the point
// (x, y, z); (r, phi) are the polar coordinates of (x, y). The singular line
// L = {r = 0} holds the matrices with a repeated eigenvalue.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "symcone/error.hpp"

namespace symcone {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

using Vec3 = Eigen::Vector3d;

/// Principal value of an angle in (-pi, pi].
inline double wrap_angle(double angle) {
    double w = std::remainder(angle, two_pi);
    if (w <= -pi) w += two_pi;
    return w;
}

/// Principal value in (-pi, pi], with values within `tie_tol` of -pi sent to +pi.
inline double wrap_angle_tie_plus(double angle, double tie_tol = 1e-9) {
    double w = wrap_angle(angle);
    if (w < -pi + tie_tol) w += two_pi;
    return w;
}

class SymPoint {
public:
    SymPoint() = default;

    static SymPoint from_cartesian(double x, double y, double z) { return SymPoint(x, y, z); }
    static SymPoint from_cartesian(const Vec3& v) { return SymPoint(v.x(), v.y(), v.z()); }
    static SymPoint from_cylindrical(double r, double phi, double z) {
        if (!(r >= 0.0)) throw Error(ErrorKind::InvalidArgument, "cylindrical radius must be >= 0");
        return SymPoint(r * std::cos(phi), r * std::sin(phi), z);
    }

    double x() const noexcept { return x_; }
    double y() const noexcept { return y_; }
    double z() const noexcept { return z_; }
    double r() const noexcept { return r_; }
    double r_squared() const noexcept { return x_ * x_ + y_ * y_; }

    /// Undefined (nullopt) on the singular line.
    std::optional<double> phi() const noexcept {
        if (r_ > 0.0) return phi_;
        return std::nullopt;
    }

    bool on_singular_line() const noexcept { return r_ == 0.0; }

    Vec3 cartesian() const { return {x_, y_, z_}; }

    Eigen::Matrix2d matrix() const {
        Eigen::Matrix2d m;
        m << x_ + z_, y_, y_, -x_ + z_;
        return m;
    }

    friend SymPoint operator+(const SymPoint& a, const SymPoint& b) {
        return SymPoint(a.x_ + b.x_, a.y_ + b.y_, a.z_ + b.z_);
    }
    friend SymPoint operator-(const SymPoint& a, const SymPoint& b) {
        return SymPoint(a.x_ - b.x_, a.y_ - b.y_, a.z_ - b.z_);
    }
    friend SymPoint operator*(double s, const SymPoint& a) { return SymPoint(s * a.x_, s * a.y_, s * a.z_); }

private:
    SymPoint(double x, double y, double z)
        : x_(x), y_(y), z_(z), r_(std::hypot(x, y)) {
        if (r_ > 0.0) {
            phi_ = std::atan2(y, x);
            if (phi_ <= -pi) phi_ = pi;
        }
    }

    double x_ = 0.0;
    double y_ = 0.0;
    double z_ = 0.0;
    double r_ = 0.0;
    double phi_ = 0.0;
};

inline bool approx_equal(const SymPoint& a, const SymPoint& b, double tol) {
    return (a.cartesian() - b.cartesian()).cwiseAbs().maxCoeff() <= tol;
}

struct MatrixEntries {
    double a11 = 0.0;
    double a12 = 0.0;
    double a22 = 0.0;
};

inline SymPoint point_from_entries(double a11, double a12, double a22) {
    return SymPoint::from_cartesian(0.5 * (a11 - a22), a12, 0.5 * (a11 + a22));
}

inline MatrixEntries entries_from_point(const SymPoint& p) {
    return {p.x() + p.z(), p.y(), p.z() - p.x()};
}

/// A tangent vector at `base`, stored as coefficients on the reference
/// orthonormal frame (e1, e2, e3). Conversions to coordinate components live
/// in metric_geometry.hpp.
struct TangentVec {
    SymPoint base;
    Vec3 frame = Vec3::Zero();

    double frame_norm() const { return frame.norm(); }
};

// ---------------------------------------------------------------------------
// Analytic primitives. Each is parametrised by s in [0, 1].

/// Arc of a circle about L at height center_z.
struct CircleArc {
    double center_z = 0.0;
    double radius = 1.0;
    double phi_start = 0.0;
    double phi_end = two_pi;

    double angle(double s) const { return phi_start + (phi_end - phi_start) * s; }
    Vec3 position(double s) const {
        const double a = angle(s);
        return {radius * std::cos(a), radius * std::sin(a), center_z};
    }
    Vec3 velocity(double s) const {
        const double a = angle(s);
        const double w = phi_end - phi_start;
        return {-radius * w * std::sin(a), radius * w * std::cos(a), 0.0};
    }
    CircleArc reversed() const { return {center_z, radius, phi_end, phi_start}; }
};

struct LineSegment {
    Vec3 from = Vec3::Zero();
    Vec3 to = Vec3::Zero();

    Vec3 position(double s) const { return from + s * (to - from); }
    Vec3 velocity(double) const { return to - from; }
    LineSegment reversed() const { return {to, from}; }

    /// Parameter where the segment meets L, if it passes through it.
    std::optional<double> crossing_parameter() const {
        const Eigen::Vector2d a = from.head<2>();
        const Eigen::Vector2d d = (to - from).head<2>();
        const double dd = d.squaredNorm();
        if (dd == 0.0) return std::nullopt;
        const double cross = a.x() * d.y() - a.y() * d.x();
        if (std::abs(cross) > 1e-14 * a.norm() * std::sqrt(dd)) return std::nullopt;
        const double s = -a.dot(d) / dd;
        if (s <= 0.0 || s >= 1.0) return std::nullopt;
        return s;
    }
};

using CurvePrimitive = std::variant<CircleArc, LineSegment>;

/// Concatenation of primitives; part i covers the parameter interval [i, i+1].
class AnalyticPath {
public:
    AnalyticPath() = default;
    explicit AnalyticPath(std::vector<CurvePrimitive> parts) : parts_(std::move(parts)) {
        if (parts_.empty()) throw Error(ErrorKind::InvalidCurve, "analytic path needs at least one part");
    }

    const std::vector<CurvePrimitive>& parts() const noexcept { return parts_; }
    double param_end() const noexcept { return static_cast<double>(parts_.size()); }

    std::size_t locate(double t) const {
        const double f = std::floor(t);
        if (f <= 0.0) return 0;
        return std::min(static_cast<std::size_t>(f), parts_.size() - 1);
    }

    Vec3 position(std::size_t part, double t) const {
        const double s = t - static_cast<double>(part);
        return std::visit([s](const auto& p) { return p.position(s); }, parts_[part]);
    }
    Vec3 velocity(std::size_t part, double t) const {
        const double s = t - static_cast<double>(part);
        return std::visit([s](const auto& p) { return p.velocity(s); }, parts_[part]);
    }
    Vec3 position(double t) const { return position(locate(t), t); }
    Vec3 velocity(double t) const { return velocity(locate(t), t); }

    AnalyticPath reversed() const {
        std::vector<CurvePrimitive> rev;
        rev.reserve(parts_.size());
        for (auto it = parts_.rbegin(); it != parts_.rend(); ++it) {
            rev.push_back(std::visit([](const auto& p) -> CurvePrimitive { return p.reversed(); }, *it));
        }
        return AnalyticPath(std::move(rev));
    }

private:
    std::vector<CurvePrimitive> parts_;
};

// ---------------------------------------------------------------------------

enum class CurveKind { analytic, sampled };

struct CurveOptions {
    /// Radius below which a sample counts as lying on L. Defaults to
    /// 1e-9 * (largest sample radius).
    std::optional<double> crossing_eps;
};

/// Sampled one-parameter family of matrices with a continuous angle track.
/// Immutable once built; construct through unwrap_curve / sample_* below.
class MatrixCurve {
public:
    CurveKind kind() const noexcept { return path_ ? CurveKind::analytic : CurveKind::sampled; }
    const std::vector<SymPoint>& samples() const noexcept { return samples_; }
    const std::vector<double>& params() const noexcept { return params_; }
    const std::vector<double>& unwrapped_phi() const noexcept { return unwrapped_; }
    const std::optional<AnalyticPath>& path() const noexcept { return path_; }
    const CurveOptions& options() const noexcept { return options_; }
    bool closed() const noexcept { return closed_; }
    double crossing_eps() const noexcept { return eps_; }
    std::size_t size() const noexcept { return samples_.size(); }
    bool is_singular(std::size_t k) const { return samples_[k].r() < eps_; }

    double max_radius() const {
        double m = 0.0;
        for (const auto& s : samples_) m = std::max(m, s.r());
        return m;
    }
    double min_radius() const {
        double m = std::numeric_limits<double>::infinity();
        for (const auto& s : samples_) m = std::min(m, s.r());
        return m;
    }

    /// Position and velocity at parameter t within sample interval [k, k+1].
    /// Analytic curves use the primitive; sampled curves interpolate linearly.
    Vec3 position_at(std::size_t k, double t) const {
        if (path_) return path_->position(path_->locate(0.5 * (params_[k] + params_[k + 1])), t);
        const double w = (t - params_[k]) / (params_[k + 1] - params_[k]);
        return samples_[k].cartesian() + w * (samples_[k + 1].cartesian() - samples_[k].cartesian());
    }
    Vec3 velocity_at(std::size_t k, double t) const {
        if (path_) return path_->velocity(path_->locate(0.5 * (params_[k] + params_[k + 1])), t);
        return (samples_[k + 1].cartesian() - samples_[k].cartesian()) / (params_[k + 1] - params_[k]);
    }

private:
    friend MatrixCurve make_curve(std::vector<SymPoint>, std::vector<double>, std::optional<AnalyticPath>,
                                  CurveOptions);

    std::vector<SymPoint> samples_;
    std::vector<double> params_;
    std::vector<double> unwrapped_;
    std::optional<AnalyticPath> path_;
    CurveOptions options_;
    double eps_ = 0.0;
    bool closed_ = false;
};

namespace detail {

inline double coincidence_tol(const SymPoint& a, const SymPoint& b) {
    const double scale = std::max({1.0, a.cartesian().cwiseAbs().maxCoeff(), b.cartesian().cwiseAbs().maxCoeff()});
    return 1e-12 * scale;
}

inline bool coincide(const SymPoint& a, const SymPoint& b) { return approx_equal(a, b, coincidence_tol(a, b)); }

/// Branch of p's angle nearest to `reference`; `reference` itself on L.
inline double nearest_branch(double reference, const SymPoint& p) {
    if (!p.phi()) return reference;
    return reference + wrap_angle(*p.phi() - reference);
}

inline std::vector<double> unwrap_track(const std::vector<SymPoint>& samples, double eps) {
    const std::size_t n = samples.size();
    auto singular = [&](std::size_t k) { return samples[k].r() < eps; };

    std::size_t n_singular = 0;
    for (std::size_t k = 0; k < n; ++k) n_singular += singular(k) ? 1 : 0;
    if (n_singular == n) throw Error(ErrorKind::AllSingular, "every sample lies on the singular line");
    if (n_singular > 1 && 4 * n_singular > n) {
        throw Error(ErrorKind::DegenerateCrossing, "curve lingers on the singular line for more than 25% of samples");
    }

    std::size_t first = 0;
    while (singular(first)) ++first;

    std::vector<double> u(n, 0.0);
    u[first] = *samples[first].phi();
    for (std::size_t k = 0; k < first; ++k) u[k] = nearest_branch(u[first], samples[k]);

    std::size_t last = first;
    for (std::size_t k = first + 1; k < n; ++k) {
        if (singular(k)) {
            u[k] = nearest_branch(u[last], samples[k]);
            continue;
        }
        const double delta = *samples[k].phi() - *samples[last].phi();
        double step = 0.0;
        if (last + 1 == k) {
            step = wrap_angle(delta);
            if (std::abs(step) >= pi - 1e-12) {
                throw Error(ErrorKind::SamplingTooCoarse,
                            "angle step of pi or more between samples " + std::to_string(last) + " and " +
                                std::to_string(k));
            }
        } else {
            // across a run on L: principal difference, ties toward +
            step = wrap_angle_tie_plus(delta);
        }
        u[k] = u[last] + step;
        last = k;
    }
    return u;
}

}  // namespace detail

inline MatrixCurve make_curve(std::vector<SymPoint> samples, std::vector<double> params,
                              std::optional<AnalyticPath> path, CurveOptions options) {
    if (samples.size() < 2) throw Error(ErrorKind::InvalidCurve, "a curve needs at least two samples");
    if (params.size() != samples.size()) throw Error(ErrorKind::InvalidCurve, "one parameter per sample required");
    for (std::size_t k = 1; k < params.size(); ++k) {
        if (!(params[k] > params[k - 1])) throw Error(ErrorKind::InvalidCurve, "curve parameters must increase");
    }

    MatrixCurve c;
    double max_r = 0.0;
    for (const auto& s : samples) max_r = std::max(max_r, s.r());
    if (options.crossing_eps) {
        if (!(*options.crossing_eps > 0.0)) throw Error(ErrorKind::InvalidArgument, "crossing eps must be > 0");
        c.eps_ = *options.crossing_eps;
    } else {
        if (max_r == 0.0) throw Error(ErrorKind::AllSingular, "every sample lies on the singular line");
        c.eps_ = 1e-9 * max_r;
    }
    c.unwrapped_ = detail::unwrap_track(samples, c.eps_);
    c.closed_ = detail::coincide(samples.front(), samples.back());
    c.samples_ = std::move(samples);
    c.params_ = std::move(params);
    c.path_ = std::move(path);
    c.options_ = options;
    return c;
}

/// Builds a sampled curve (parameter = sample index) with its unwrapped angle track.
inline MatrixCurve unwrap_curve(std::vector<SymPoint> samples, CurveOptions options = {}) {
    std::vector<double> params(samples.size());
    for (std::size_t k = 0; k < params.size(); ++k) params[k] = static_cast<double>(k);
    return make_curve(std::move(samples), std::move(params), std::nullopt, options);
}

namespace detail {

/// Samples one primitive over [offset, offset+1]; segments through L get an
/// exact sample on L inserted.
inline void sample_primitive(const CurvePrimitive& prim, std::size_t n, double offset, std::vector<SymPoint>& pts,
                             std::vector<double>& params) {
    if (n < 2) throw Error(ErrorKind::InvalidCurve, "each analytic part needs n >= 2 samples");
    std::vector<double> s_values(n);
    for (std::size_t k = 0; k < n; ++k) s_values[k] = static_cast<double>(k) / static_cast<double>(n - 1);

    std::optional<double> hit;
    if (const auto* seg = std::get_if<LineSegment>(&prim)) hit = seg->crossing_parameter();
    if (hit) {
        auto it = std::lower_bound(s_values.begin(), s_values.end(), *hit);
        const bool near_existing = (it != s_values.end() && std::abs(*it - *hit) < 1e-12) ||
                                   (it != s_values.begin() && std::abs(*(it - 1) - *hit) < 1e-12);
        if (!near_existing) s_values.insert(it, *hit);
    }

    for (double s : s_values) {
        Vec3 p = std::visit([s](const auto& q) { return q.position(s); }, prim);
        if (hit && std::abs(s - *hit) < 1e-12) p.head<2>().setZero();
        pts.push_back(SymPoint::from_cartesian(p));
        params.push_back(offset + s);
    }
}

}  // namespace detail

/// Samples an analytic path with `samples_per_part[i]` samples on part i;
/// coincident joints are emitted once.
inline MatrixCurve sample_path(const AnalyticPath& path, const std::vector<std::size_t>& samples_per_part,
                               CurveOptions options = {}) {
    if (samples_per_part.size() != path.parts().size()) {
        throw Error(ErrorKind::InvalidCurve, "one sample count per analytic part required");
    }
    std::vector<SymPoint> pts;
    std::vector<double> params;
    for (std::size_t i = 0; i < path.parts().size(); ++i) {
        std::vector<SymPoint> part_pts;
        std::vector<double> part_params;
        detail::sample_primitive(path.parts()[i], samples_per_part[i], static_cast<double>(i), part_pts, part_params);
        std::size_t start = 0;
        if (!pts.empty()) {
            if (!detail::coincide(pts.back(), part_pts.front())) {
                throw Error(ErrorKind::InvalidCurve, "analytic parts must join continuously");
            }
            start = 1;
        }
        pts.insert(pts.end(), part_pts.begin() + static_cast<std::ptrdiff_t>(start), part_pts.end());
        params.insert(params.end(), part_params.begin() + static_cast<std::ptrdiff_t>(start), part_params.end());
    }
    return make_curve(std::move(pts), std::move(params), path, options);
}

inline MatrixCurve sample_path(const AnalyticPath& path, std::size_t n_per_part, CurveOptions options = {}) {
    return sample_path(path, std::vector<std::size_t>(path.parts().size(), n_per_part), options);
}

inline MatrixCurve sample_circle(const CircleArc& arc, std::size_t n, CurveOptions options = {}) {
    return sample_path(AnalyticPath({arc}), n, options);
}

inline MatrixCurve sample_segment(const LineSegment& seg, std::size_t n, CurveOptions options = {}) {
    return sample_path(AnalyticPath({seg}), n, options);
}

/// Same samples traversed backwards; the parameter maps t -> t0 + t1 - t.
inline MatrixCurve reverse_curve(const MatrixCurve& c) {
    std::vector<SymPoint> pts(c.samples().rbegin(), c.samples().rend());
    const double t0 = c.params().front();
    const double t1 = c.params().back();
    std::vector<double> params;
    params.reserve(c.size());
    for (auto it = c.params().rbegin(); it != c.params().rend(); ++it) params.push_back(t0 + t1 - *it);
    std::optional<AnalyticPath> path;
    if (c.path()) path = c.path()->reversed();
    return make_curve(std::move(pts), std::move(params), std::move(path), c.options());
}

/// Joins b after a; a's last sample must coincide with b's first.
inline MatrixCurve concat_curves(const MatrixCurve& a, const MatrixCurve& b) {
    if (!detail::coincide(a.samples().back(), b.samples().front())) {
        throw Error(ErrorKind::InvalidCurve, "concatenated curves must share the joint sample");
    }
    std::vector<SymPoint> pts = a.samples();
    pts.insert(pts.end(), b.samples().begin() + 1, b.samples().end());

    const double shift = a.params().back() - b.params().front();
    std::vector<double> params = a.params();
    for (std::size_t k = 1; k < b.size(); ++k) params.push_back(b.params()[k] + shift);

    std::optional<AnalyticPath> path;
    const bool unit_params = a.path() && b.path() && a.params().front() == 0.0 && b.params().front() == 0.0 &&
                             a.params().back() == a.path()->param_end();
    if (unit_params) {
        std::vector<CurvePrimitive> parts = a.path()->parts();
        parts.insert(parts.end(), b.path()->parts().begin(), b.path()->parts().end());
        path = AnalyticPath(std::move(parts));
    }

    CurveOptions options;
    if (a.options().crossing_eps || b.options().crossing_eps) {
        options.crossing_eps = std::min(a.crossing_eps(), b.crossing_eps());
    }
    return make_curve(std::move(pts), std::move(params), std::move(path), options);
}

}  // namespace symcone
