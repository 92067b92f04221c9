#pragma once

// JSON curve files:
//   {"kind":"samples","points":[[x,y,z],...],"closed":bool}
//   {"kind":"circle","center_z":z,"radius":r,"phi_start":a,"phi_end":b,"n":N}
//   {"kind":"segment","from":[x,y,z],"to":[x,y,z],"n":N}
//   {"kind":"composite","parts":[<circle|segment>, ...]}
// Any of them may carry "crossing_eps".

#include <json.hpp>

#include <cstddef>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "symcone/error.hpp"
#include "symcone/symspace.hpp"

namespace symcone {

namespace detail {

inline const nlohmann::json& require_field(const nlohmann::json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) {
        throw Error(ErrorKind::InvalidCurve, std::string("curve description is missing \"") + key + "\"");
    }
    return j.at(key);
}

inline double number_field(const nlohmann::json& j, const char* key) {
    const auto& v = require_field(j, key);
    if (!v.is_number()) throw Error(ErrorKind::InvalidCurve, std::string("\"") + key + "\" must be a number");
    return v.get<double>();
}

inline Vec3 point_field(const nlohmann::json& v) {
    if (!v.is_array() || v.size() != 3) throw Error(ErrorKind::InvalidCurve, "points must be [x, y, z] arrays");
    for (const auto& c : v) {
        if (!c.is_number()) throw Error(ErrorKind::InvalidCurve, "point coordinates must be numbers");
    }
    return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

inline std::size_t count_field(const nlohmann::json& j, std::optional<std::size_t> n_override) {
    if (n_override) return *n_override;
    const auto& v = require_field(j, "n");
    if (!v.is_number_integer() || v.get<long long>() < 2) {
        throw Error(ErrorKind::InvalidCurve, "\"n\" must be an integer >= 2");
    }
    return v.get<std::size_t>();
}

inline CurvePrimitive primitive_from_json(const nlohmann::json& j) {
    const std::string kind = require_field(j, "kind").get<std::string>();
    if (kind == "circle") {
        CircleArc arc{number_field(j, "center_z"), number_field(j, "radius"), number_field(j, "phi_start"),
                      number_field(j, "phi_end")};
        if (!(arc.radius > 0.0)) throw Error(ErrorKind::InvalidCurve, "circle radius must be > 0");
        return arc;
    }
    if (kind == "segment") return LineSegment{point_field(require_field(j, "from")), point_field(require_field(j, "to"))};
    throw Error(ErrorKind::InvalidCurve, "composite parts must be circles or segments, got \"" + kind + "\"");
}

}  // namespace detail

/// Builds a curve from its JSON description. `n_override` replaces every
/// sample count of analytic kinds (per part for composites).
inline MatrixCurve curve_from_json(const nlohmann::json& j, std::optional<std::size_t> n_override = std::nullopt) {
    CurveOptions options;
    if (j.is_object() && j.contains("crossing_eps")) options.crossing_eps = detail::number_field(j, "crossing_eps");

    const auto& kind_field = detail::require_field(j, "kind");
    if (!kind_field.is_string()) throw Error(ErrorKind::InvalidCurve, "\"kind\" must be a string");
    const std::string kind = kind_field.get<std::string>();

    if (kind == "samples") {
        const auto& pts = detail::require_field(j, "points");
        if (!pts.is_array()) throw Error(ErrorKind::InvalidCurve, "\"points\" must be an array");
        std::vector<SymPoint> samples;
        for (const auto& p : pts) samples.push_back(SymPoint::from_cartesian(detail::point_field(p)));
        const bool closed = j.value("closed", false);
        if (closed && !samples.empty() && !detail::coincide(samples.front(), samples.back())) {
            samples.push_back(samples.front());
        }
        return unwrap_curve(std::move(samples), options);
    }
    if (kind == "circle" || kind == "segment") {
        return sample_path(AnalyticPath({detail::primitive_from_json(j)}), detail::count_field(j, n_override), options);
    }
    if (kind == "composite") {
        const auto& parts = detail::require_field(j, "parts");
        if (!parts.is_array() || parts.empty()) throw Error(ErrorKind::InvalidCurve, "\"parts\" must be a non-empty array");
        std::vector<CurvePrimitive> prims;
        std::vector<std::size_t> counts;
        for (const auto& part : parts) {
            prims.push_back(detail::primitive_from_json(part));
            counts.push_back(detail::count_field(part, n_override));
        }
        return sample_path(AnalyticPath(std::move(prims)), counts, options);
    }
    throw Error(ErrorKind::InvalidCurve, "unknown curve kind \"" + kind + "\"");
}

inline nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorKind::InvalidCurve, path + ": " + e.what());
    }
}

inline MatrixCurve load_curve(const std::string& path, std::optional<std::size_t> n_override = std::nullopt) {
    const nlohmann::json j = read_json_file(path);
    try {
        return curve_from_json(j, n_override);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::InvalidCurve, path + ": " + e.what());
    }
}

}  // namespace symcone
