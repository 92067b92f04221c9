#pragma once

// Eigenvector continuation by one transport pass versus an eigendecomposition
// at every sample. Timings are informational only.

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <vector>

#include "symcone/eigen_oracle.hpp"
#include "symcone/error.hpp"
#include "symcone/symspace.hpp"
#include "symcone/transport.hpp"

namespace symcone {

struct BenchReport {
    std::size_t n_samples = 0;
    int steps_per_sample = 0;
    int repeats = 0;
    double wall_time_transport = 0.0;       ///< seconds, median over repeats
    double wall_time_repeated_eig = 0.0;    ///< seconds, median over repeats
    double max_angle_error = 0.0;           ///< radians, mod sign
    double speed_ratio() const {            ///< repeated_eig / transport
        return wall_time_transport > 0.0 ? wall_time_repeated_eig / wall_time_transport : 0.0;
    }
};

namespace detail {

inline double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

template <typename F>
double time_seconds(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace detail

inline BenchReport run_bench(const MatrixCurve& c, int steps_per_sample = 4, int repeats = 3) {
    if (c.size() < 10) throw Error(ErrorKind::InvalidArgument, "bench needs at least 10 samples");
    if (c.min_radius() < 0.1) throw Error(ErrorKind::InvalidArgument, "bench curve must stay at r >= 0.1");
    if (repeats < 3) throw Error(ErrorKind::InvalidArgument, "bench needs at least 3 repeats");
    if (steps_per_sample < 1) throw Error(ErrorKind::InvalidArgument, "steps per sample must be >= 1");

    const TransportOptions opts{steps_per_sample};
    TransportResult transported;
    std::vector<Eigen::Vector2d> numeric(c.size());
    std::vector<double> t_transport, t_eig;

    for (int rep = 0; rep < repeats; ++rep) {
        t_transport.push_back(detail::time_seconds([&] { transported = eigenvector_continuation(c, 1, opts); }));
        t_eig.push_back(detail::time_seconds([&] {
            for (std::size_t k = 0; k < c.size(); ++k) numeric[k] = eigen_numeric(c.samples()[k]).v1;
        }));
    }

    BenchReport rep;
    rep.n_samples = c.size();
    rep.steps_per_sample = steps_per_sample;
    rep.repeats = repeats;
    rep.wall_time_transport = detail::median(t_transport);
    rep.wall_time_repeated_eig = detail::median(t_eig);
    for (std::size_t k = 0; k < c.size(); ++k) {
        const Vec3& a = transported.vectors[k].frame;
        rep.max_angle_error = std::max(rep.max_angle_error, angle_mod_sign(Eigen::Vector2d(a.x(), a.y()), numeric[k]));
    }
    return rep;
}

}  // namespace symcone
