#pragma once

// Parallel transport along matrix curves. In the reference frame the
// transport equation is a pure rotation of (a1, a2) at rate omega(gamma'),
// with omega = dphi / 2, so eigenvector fields are carried along by a single
// fixed-step RK4 pass instead of one eigendecomposition per sample.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <cstddef>
#include <set>
#include <vector>

#include "symcone/eigen_oracle.hpp"
#include "symcone/error.hpp"
#include "symcone/metric_geometry.hpp"
#include "symcone/symspace.hpp"

namespace symcone {

/// Passage of a curve through (or touching) the singular line L.
struct CrossingEvent {
    std::size_t index = 0;    ///< first sample of the run within eps of L
    std::size_t run_end = 0;  ///< last sample of that run
    double phi_in = 0.0;      ///< angle at the last sample before the run
    double phi_out = 0.0;     ///< angle at the first sample after the run
    /// Half the principal angle difference (ties toward +): the jump of the
    /// larger-eigenvalue half-angle branch, and of the unwrapped angle track / 2.
    double phase_jump = 0.0;
    /// Rotation applied to transported vectors: the smallest rotation taking
    /// an eigenvector before the run to an eigenvector after it. Zero for
    /// transversal crossings, where the eigenvalues exchange instead.
    double vector_rotation = 0.0;
};

struct TransportOptions {
    int substeps = 4;  ///< RK4 steps per sample interval
};

struct TransportResult {
    std::vector<TangentVec> vectors;  ///< one per sample, frame components
    std::vector<double> phases;       ///< accumulated phase at each sample
    double phase = 0.0;               ///< total accumulated phase
    std::vector<CrossingEvent> crossings;
};

/// Half of `angle_difference` reduced mod pi into (-pi/2, pi/2], ties toward +.
inline double eigen_preserving_rotation(double angle_difference, double tie_tol = 1e-9) {
    double d = std::remainder(angle_difference, pi);
    if (d < -0.5 * pi + tie_tol) d += pi;
    return 0.5 * d;
}

inline std::vector<CrossingEvent> detect_crossings(const MatrixCurve& c, double eps) {
    if (!(eps > 0.0)) throw Error(ErrorKind::InvalidArgument, "crossing eps must be > 0");
    const auto& s = c.samples();
    const std::size_t n = s.size();
    auto singular = [&](std::size_t k) { return s[k].r() < eps; };

    std::size_t n_singular = 0;
    for (std::size_t k = 0; k < n; ++k) n_singular += singular(k) ? 1 : 0;
    if (n_singular > 1 && 4 * n_singular > n) {
        throw Error(ErrorKind::DegenerateCrossing, "curve lingers on the singular line for more than 25% of samples");
    }

    std::vector<CrossingEvent> events;
    std::size_t k = 0;
    while (k < n) {
        if (!singular(k)) {
            ++k;
            continue;
        }
        std::size_t end = k;
        while (end + 1 < n && singular(end + 1)) ++end;
        if (k == 0 || end + 1 == n) {
            throw Error(ErrorKind::CurveEndsOnL, "curve starts or ends on the singular line");
        }
        CrossingEvent ev;
        ev.index = k;
        ev.run_end = end;
        ev.phi_in = *s[k - 1].phi();
        ev.phi_out = *s[end + 1].phi();
        const double delta = ev.phi_out - ev.phi_in;
        ev.phase_jump = 0.5 * wrap_angle_tie_plus(delta);
        ev.vector_rotation = eigen_preserving_rotation(delta);
        events.push_back(ev);
        k = end + 1;
    }
    return events;
}

inline std::vector<CrossingEvent> detect_crossings(const MatrixCurve& c) {
    return detect_crossings(c, c.crossing_eps());
}

/// theta = 1/2 (angle increment over the parts off L) + rotations at crossings.
inline double geometric_phase(const MatrixCurve& c) {
    const auto& u = c.unwrapped_phi();
    double smooth = 0.0;
    for (std::size_t k = 0; k + 1 < c.size(); ++k) {
        if (!c.is_singular(k) && !c.is_singular(k + 1)) smooth += u[k + 1] - u[k];
    }
    double jumps = 0.0;
    for (const auto& ev : detect_crossings(c)) jumps += ev.vector_rotation;
    return 0.5 * smooth + jumps;
}

/// Winding number about L; half-integer for closed curves crossing L once.
inline double winding_number(const MatrixCurve& c) {
    if (!c.closed()) throw Error(ErrorKind::NotClosed, "winding number needs a closed curve");
    return geometric_phase(c) / pi;
}

/// Classic fourth-order Runge-Kutta step for a small fixed-size system.
template <std::size_t N, typename Rhs>
void rk4_step(Rhs&& rhs, std::array<double, N>& y, double t, double h) {
    auto axpy = [](const std::array<double, N>& a, double s, const std::array<double, N>& b) {
        std::array<double, N> out;
        for (std::size_t i = 0; i < N; ++i) out[i] = a[i] + s * b[i];
        return out;
    };
    const auto k1 = rhs(t, y);
    const auto k2 = rhs(t + 0.5 * h, axpy(y, 0.5 * h, k1));
    const auto k3 = rhs(t + 0.5 * h, axpy(y, 0.5 * h, k2));
    const auto k4 = rhs(t + h, axpy(y, h, k3));
    for (std::size_t i = 0; i < N; ++i) y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

namespace detail {

/// omega(v) at position p; the hot-loop form of connection_form_coords.
inline double omega_rate(const Vec3& p, const Vec3& v) {
    return (p.x() * v.y() - p.y() * v.x()) / (2.0 * (p.x() * p.x() + p.y() * p.y()));
}

inline Vec3 rotate_in_plane(const Vec3& a, double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {c * a.x() - s * a.y(), s * a.x() + c * a.y(), a.z()};
}

}  // namespace detail

/// Solves nabla_{gamma'} E = 0 in frame components:
/// a1' = -omega a2, a2' = omega a1, a3' = 0, and theta' = omega.
inline TransportResult parallel_transport(const MatrixCurve& c, const TangentVec& v0, TransportOptions opts = {}) {
    if (opts.substeps < 1) throw Error(ErrorKind::InvalidArgument, "substeps must be >= 1");
    if (c.is_singular(0)) throw Error(ErrorKind::SingularStart, "transport must start off the singular line");
    if (!detail::coincide(v0.base, c.samples().front())) {
        throw Error(ErrorKind::BaseMismatch, "initial vector is not based at the first sample");
    }

    TransportResult res;
    res.crossings = detect_crossings(c);
    const std::size_t n = c.size();
    res.vectors.reserve(n);
    res.phases.reserve(n);
    res.vectors.push_back({c.samples()[0], v0.frame});
    res.phases.push_back(0.0);

    std::array<double, 4> y{v0.frame.x(), v0.frame.y(), v0.frame.z(), 0.0};
    std::size_t next_event = 0;

    for (std::size_t k = 0; k + 1 < n; ++k) {
        const bool regular_step = !c.is_singular(k) && !c.is_singular(k + 1);
        if (regular_step) {
            const double t0 = c.params()[k];
            const double h = (c.params()[k + 1] - t0) / opts.substeps;
            auto rhs = [&c, k](double t, const std::array<double, 4>& s) {
                const double w = detail::omega_rate(c.position_at(k, t), c.velocity_at(k, t));
                return std::array<double, 4>{-w * s[1], w * s[0], 0.0, w};
            };
            for (int i = 0; i < opts.substeps; ++i) rk4_step(rhs, y, t0 + i * h, h);
        } else if (!c.is_singular(k + 1)) {
            // leaving a run on L
            const CrossingEvent& ev = res.crossings.at(next_event++);
            const Vec3 a = detail::rotate_in_plane(Vec3(y[0], y[1], y[2]), ev.vector_rotation);
            y = {a.x(), a.y(), a.z(), y[3] + ev.vector_rotation};
        }
        res.vectors.push_back({c.samples()[k + 1], Vec3(y[0], y[1], y[2])});
        res.phases.push_back(y[3]);
    }
    res.phase = y[3];
    return res;
}

/// Transports the larger-eigenvalue eigenvector of the first sample (sign
/// per `sign_hint`); every output vector is an eigenvector of its sample.
inline TransportResult eigenvector_continuation(const MatrixCurve& c, int sign_hint, TransportOptions opts = {}) {
    if (sign_hint != 1 && sign_hint != -1) throw Error(ErrorKind::InvalidArgument, "sign hint must be +1 or -1");
    if (c.is_singular(0)) throw Error(ErrorKind::SingularStart, "continuation must start off the singular line");
    const EigenPair e = eigen_closed_form(c.samples()[0], c.unwrapped_phi()[0]);
    const Vec3 a0(sign_hint * e.v1.x(), sign_hint * e.v1.y(), 0.0);
    return parallel_transport(c, {c.samples()[0], a0}, opts);
}

/// Signed rotation in the (e1, e2) plane taking `from` to `to`, in (-pi, pi].
inline double frame_rotation(const Vec3& from, const Vec3& to) {
    return std::atan2(from.x() * to.y() - from.y() * to.x(), from.x() * to.x() + from.y() * to.y());
}

/// Unit circle about L: winding number 1.
inline MatrixCurve unit_loop(std::size_t n = 257) { return sample_circle({0.0, 1.0, 0.0, two_pi}, n); }

/// Upper half of the unit circle closed by the diameter through L: winding 1/2.
inline MatrixCurve half_loop_through_axis(std::size_t n_per_part = 129) {
    const AnalyticPath path({CircleArc{0.0, 1.0, 0.0, pi}, LineSegment{Vec3(-1.0, 0.0, 0.0), Vec3(1.0, 0.0, 0.0)}});
    return sample_path(path, n_per_part);
}

namespace detail {

/// Phase class of a transported loop as a multiple of pi/2 (mod 4).
inline int quarter_turns(double angle) {
    const double q = angle / (0.5 * pi);
    const double k = std::round(q);
    if (std::abs(q - k) > 1e-6) {
        throw Error(ErrorKind::InvalidArgument, "loop holonomy is not a multiple of pi/2");
    }
    return static_cast<int>(((static_cast<long>(k) % 4) + 4) % 4);
}

inline int loop_quarter_turns(const MatrixCurve& loop) {
    const TangentVec start{loop.samples().front(), Vec3::UnitX()};
    const TransportResult res = parallel_transport(loop, start);
    return quarter_turns(frame_rotation(start.frame, res.vectors.back().frame));
}

inline std::vector<double> close_group(const std::vector<int>& generators) {
    std::set<int> group{0};
    bool grew = true;
    while (grew) {
        grew = false;
        const std::set<int> current = group;
        for (int a : current) {
            for (int g : generators) grew |= group.insert((a + g) % 4).second;
        }
    }
    std::vector<double> out;
    for (int k : group) out.push_back(0.5 * pi * k);
    return out;
}

}  // namespace detail

/// Holonomy phases (mod 2 pi) generated by transporting around generator
/// loops: the winding-1 circle, plus the winding-1/2 loop through L when
/// crossings are allowed.
inline std::vector<double> holonomy_group(bool include_L_crossings) {
    std::vector<int> generators{detail::loop_quarter_turns(unit_loop())};
    if (include_L_crossings) generators.push_back(detail::loop_quarter_turns(half_loop_through_axis()));
    return detail::close_group(generators);
}

}  // namespace symcone
