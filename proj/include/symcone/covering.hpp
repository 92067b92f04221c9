#pragma once

// The branched double cover of the trace-free plane, r e^{i phibar} -> r e^{2 i phibar},
// extended by the trace coordinate z. Depth d iterates the angle doubling;
// the metric and phase are only defined for d = 1.

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <set>
#include <vector>

#include "symcone/error.hpp"
#include "symcone/symspace.hpp"
#include "symcone/transport.hpp"

namespace symcone {

struct CoverPoint {
    double rbar = 0.0;
    double phibar = 0.0;
    double z = 0.0;
    int depth = 1;

    /// Position in the cover's own flat chart.
    Vec3 cartesian() const { return {rbar * std::cos(phibar), rbar * std::sin(phibar), z}; }
};

struct LiftedCurve {
    std::vector<CoverPoint> points;
    int depth = 1;
    bool closed = false;
    double crossing_eps = 0.0;  ///< rbar below this counts as the branch point
};

namespace detail {

inline void require_depth(int depth) {
    if (depth < 1) throw Error(ErrorKind::InvalidArgument, "cover depth must be >= 1");
}

inline double sheet_factor(int depth) { return std::ldexp(1.0, depth); }

inline bool lifted_closed(const std::vector<CoverPoint>& pts) {
    const SymPoint a = SymPoint::from_cartesian(pts.front().cartesian());
    const SymPoint b = SymPoint::from_cartesian(pts.back().cartesian());
    return coincide(a, b);
}

}  // namespace detail

inline SymPoint project(const CoverPoint& q) {
    detail::require_depth(q.depth);
    if (q.rbar == 0.0) return SymPoint::from_cartesian(0.0, 0.0, q.z);
    return SymPoint::from_cylindrical(q.rbar, detail::sheet_factor(q.depth) * q.phibar, q.z);
}

/// Generator of the deck group: the sheet shift 2 pi / 2^d (pi for the double cover).
inline CoverPoint deck_transform(const CoverPoint& q) {
    detail::require_depth(q.depth);
    CoverPoint out = q;
    out.phibar += two_pi / detail::sheet_factor(q.depth);
    return out;
}

/// Continuous lift following the curve's unwrapped angle track.
inline LiftedCurve lift_curve(const MatrixCurve& c, int start_branch, int depth = 1) {
    detail::require_depth(depth);
    if (start_branch != 1 && start_branch != -1) {
        throw Error(ErrorKind::InvalidArgument, "start branch must be +1 or -1");
    }
    const double factor = detail::sheet_factor(depth);
    const double offset = start_branch == 1 ? 0.0 : two_pi / factor;

    LiftedCurve out;
    out.depth = depth;
    out.crossing_eps = c.crossing_eps();
    out.points.reserve(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) {
        const SymPoint& p = c.samples()[k];
        out.points.push_back({p.r(), c.unwrapped_phi()[k] / factor + offset, p.z(), depth});
    }
    out.closed = detail::lifted_closed(out.points);
    return out;
}

/// A curve given directly in the cover's flat chart (x, y, z), angle unwrapped.
inline LiftedCurve cover_curve_from_cartesian(const std::vector<Vec3>& pts, int depth = 1) {
    detail::require_depth(depth);
    if (pts.size() < 2) throw Error(ErrorKind::InvalidCurve, "a curve needs at least two samples");
    std::vector<SymPoint> as_points;
    as_points.reserve(pts.size());
    double max_r = 0.0;
    for (const Vec3& p : pts) {
        as_points.push_back(SymPoint::from_cartesian(p));
        max_r = std::max(max_r, as_points.back().r());
    }
    if (max_r == 0.0) throw Error(ErrorKind::AllSingular, "every sample lies on the branch point");
    const double eps = 1e-9 * max_r;
    const std::vector<double> track = detail::unwrap_track(as_points, eps);

    LiftedCurve out;
    out.depth = depth;
    out.crossing_eps = eps;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        out.points.push_back({as_points[k].r(), track[k], as_points[k].z(), depth});
    }
    out.closed = detail::lifted_closed(out.points);
    return out;
}

/// Polar components of the pulled-back metric h on the double cover.
inline Eigen::Matrix2d cover_metric_at(const CoverPoint& q) {
    if (q.depth != 1) throw Error(ErrorKind::UnsupportedDepth, "the metric is only defined on the double cover");
    if (!(q.rbar > 0.0)) throw Error(ErrorKind::SingularPoint, "cover metric is undefined at the branch point");
    Eigen::Matrix2d h;
    h << 4.0, 0.0, 0.0, 4.0 * q.rbar * q.rbar;
    return h;
}

/// Integral of omega_h = dphibar around a closed lifted curve (= 2 pi times its
/// winding about the branch point). Passages through the branch point add
/// the projected crossing rotation, which vanishes for straight passages.
inline double cover_phase(const LiftedCurve& lc) {
    if (lc.depth != 1) throw Error(ErrorKind::UnsupportedDepth, "cover phase is only defined on the double cover");
    if (!lc.closed) throw Error(ErrorKind::NotClosed, "cover phase needs a closed lifted curve");
    const auto& q = lc.points;
    auto singular = [&](std::size_t k) { return q[k].rbar < lc.crossing_eps; };

    double phase = 0.0;
    std::size_t last = q.size();
    for (std::size_t k = 0; k < q.size(); ++k) {
        if (singular(k)) continue;
        if (last != q.size()) {
            if (last + 1 == k) {
                const double step = wrap_angle(q[k].phibar - q[last].phibar);
                if (std::abs(step) >= pi - 1e-12) {
                    throw Error(ErrorKind::SamplingTooCoarse, "lifted angle step of pi or more");
                }
                phase += step;
            } else {
                phase += eigen_preserving_rotation(2.0 * (q[k].phibar - q[last].phibar));
            }
        } else if (k != 0) {
            throw Error(ErrorKind::CurveEndsOnL, "lifted curve starts on the branch point");
        }
        last = k;
    }
    if (last == q.size()) throw Error(ErrorKind::AllSingular, "every sample lies on the branch point");
    if (last + 1 != q.size()) throw Error(ErrorKind::CurveEndsOnL, "lifted curve ends on the branch point");
    return phase;
}

/// Upstairs unit circle: winding 1 about the branch point.
inline LiftedCurve cover_unit_loop(std::size_t n = 257) {
    std::vector<Vec3> pts;
    for (std::size_t k = 0; k < n; ++k) {
        const double a = two_pi * static_cast<double>(k) / static_cast<double>(n - 1);
        pts.emplace_back(std::cos(a), std::sin(a), 0.0);
    }
    pts.back() = pts.front();
    return cover_curve_from_cartesian(pts);
}

/// Upstairs half circle closed by the diameter through the branch point: winding 1/2.
inline LiftedCurve cover_half_loop(std::size_t n_per_part = 129) {
    std::vector<Vec3> pts;
    for (std::size_t k = 0; k < n_per_part; ++k) {
        const double a = pi * static_cast<double>(k) / static_cast<double>(n_per_part - 1);
        pts.emplace_back(std::cos(a), std::sin(a), 0.0);
    }
    pts.back() = Vec3(-1.0, 0.0, 0.0);
    for (std::size_t k = 1; k < n_per_part; ++k) {
        const double s = static_cast<double>(k) / static_cast<double>(n_per_part - 1);
        pts.emplace_back(-1.0 + 2.0 * s, 0.0, 0.0);
    }
    if (n_per_part % 2 == 0) {
        // keep an exact sample on the branch point
        pts.insert(pts.begin() + static_cast<std::ptrdiff_t>(n_per_part - 1 + n_per_part / 2), Vec3::Zero());
    } else {
        pts[n_per_part - 1 + (n_per_part - 1) / 2] = Vec3::Zero();
    }
    return cover_curve_from_cartesian(pts);
}

/// Holonomy classes (mod 2 pi) upstairs, from the phases of generator loops.
inline std::vector<double> cover_holonomy_group(bool include_branch_crossings) {
    std::vector<int> generators{detail::quarter_turns(cover_phase(cover_unit_loop()))};
    if (include_branch_crossings) generators.push_back(detail::quarter_turns(cover_phase(cover_half_loop())));
    return detail::close_group(generators);
}

}  // namespace symcone
