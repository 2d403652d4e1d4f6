// spherecc scenario files and deterministic output
// Scenario JSON ingestion (intrinsic, embedded and pole-distance forms),
// 17-significant-digit number formatting, CSV rows and a JSON writer with
// fixed field order.
#pragma once

#include <spherecc/point_predict.hpp>

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace spherecc::io {

using Json = nlohmann::ordered_json;

inline constexpr double kDeg = kPi / 180.0;

/// %.17g, with NaN and infinities spelled out.
inline std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string csv_row(const std::vector<std::string> &cells) {
    std::string line;
    for (std::size_t k = 0; k < cells.size(); ++k) {
        if (k) line += ',';
        const std::string &c = cells[k];
        if (c.find_first_of(",\"\n") != std::string::npos) {
            line += '"';
            for (char ch : c) line += ch == '"' ? std::string("\"\"") : std::string(1, ch);
            line += '"';
        } else {
            line += c;
        }
    }
    line += '\n';
    return line;
}

namespace detail {
inline void write_json(std::ostream &os, const Json &j, int indent, int depth) {
    const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
    const std::string close(static_cast<std::size_t>(indent * depth), ' ');
    switch (j.type()) {
    case Json::value_t::object: {
        if (j.empty()) { os << "{}"; return; }
        os << "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) os << ",\n";
            first = false;
            os << pad << Json(it.key()).dump() << ": ";
            write_json(os, it.value(), indent, depth + 1);
        }
        os << '\n' << close << '}';
        return;
    }
    case Json::value_t::array: {
        if (j.empty()) { os << "[]"; return; }
        os << "[\n";
        for (std::size_t k = 0; k < j.size(); ++k) {
            if (k) os << ",\n";
            os << pad;
            write_json(os, j[k], indent, depth + 1);
        }
        os << '\n' << close << ']';
        return;
    }
    case Json::value_t::number_float: {
        const double v = j.get<double>();
        os << (std::isfinite(v) ? fmt(v) : std::string("null"));
        return;
    }
    default:
        os << j.dump();
    }
}
} // namespace detail

/// JSON text with a fixed two-space layout and %.17g numbers.
inline std::string to_json_text(const Json &j) {
    std::ostringstream os;
    detail::write_json(os, j, 2, 0);
    os << '\n';
    return os.str();
}

enum class ScenarioMode { intrinsic, embedded, pole };

/// Canonical scenario. Lengths are arc radians (physical length / radius);
/// angular rates are speed / radius, so times are physical.
struct Scenario {
    ScenarioMode mode = ScenarioMode::intrinsic;
    double radius = 1;
    double speed_a = 1;
    double speed_b = 1;
    std::optional<TrackPair> track_pair; ///< physical angular rates
    /// Intrinsic state; absent when the tracks admit none (coincident
    /// circles or coincident start points).
    std::optional<EngagementState> state;
    std::optional<ZPair> pole_z; ///< given directly in pole mode
    std::optional<double> pole_gamma;
    std::optional<double> patch_radius; ///< arc radians

    double nu() const { return speed_a / speed_b; }

    const TrackPair &tracks() const {
        if (!track_pair) throw Error(ErrorKind::InvalidArgument, "scenario has no tracks");
        return *track_pair;
    }

    const EngagementState &engagement() const {
        if (!state)
            throw Error(ErrorKind::InvalidArgument,
                        "scenario has no intrinsic engagement (degenerate tracks)");
        return *state;
    }

    ZPair z() const { return pole_z ? *pole_z : compute_z_pair(engagement()); }

    double gamma() const {
        if (pole_gamma) return *pole_gamma;
        const EngagementState &e = engagement();
        return solve_gamma(e.alpha0, e.beta0, e.s0);
    }

    Heading dir_b() const { return state ? state->dir_b : Heading::toward_N; }
};

namespace detail {

[[noreturn]] inline void parse_fail(const std::string &msg) {
    throw Error(ErrorKind::ParseError, msg);
}

inline const Json &member(const Json &j, const char *key, const std::string &where) {
    if (!j.is_object() || !j.contains(key)) parse_fail(where + ": missing \"" + key + "\"");
    return j.at(key);
}

inline double number(const Json &j, const char *key, const std::string &where) {
    const Json &v = member(j, key, where);
    if (!v.is_number()) parse_fail(where + "." + key + ": expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) parse_fail(where + "." + key + ": not finite");
    return d;
}

inline double number_or(const Json &j, const char *key, double fallback,
                        const std::string &where) {
    return j.contains(key) ? number(j, key, where) : fallback;
}

inline Heading heading(const Json &j, const char *key, const std::string &where) {
    if (!j.contains(key)) return Heading::toward_N;
    const Json &v = j.at(key);
    if (v == "toward_N") return Heading::toward_N;
    if (v == "toward_S") return Heading::toward_S;
    parse_fail(where + "." + key + ": expected \"toward_N\" or \"toward_S\"");
}

inline void positive(double v, const std::string &what) {
    if (!(v > 0)) parse_fail(what + " must be > 0");
}

/// Local east/north frame at a geographic point; heading is clockwise from
/// north.
inline GreatCircleTrack geographic_track(double lat, double lon, double heading,
                                         double rate) {
    const SpherePoint p = SpherePoint::from_lat_lon(lat, lon);
    const Vec3 east(-std::sin(lon), std::cos(lon), 0);
    const Vec3 north(-std::sin(lat) * std::cos(lon), -std::sin(lat) * std::sin(lon),
                     std::cos(lat));
    return GreatCircleTrack::through(p, std::cos(heading) * north + std::sin(heading) * east,
                                     rate);
}

} // namespace detail

inline Scenario parse_scenario(const Json &j) {
    using namespace detail;
    if (!j.is_object()) parse_fail("scenario: expected a JSON object");
    Scenario sc;
    sc.radius = number_or(j, "radius", 1.0, "scenario");
    positive(sc.radius, "radius");

    double unit = 1.0;
    if (j.contains("units")) {
        const Json &u = j.at("units");
        if (u == "deg") unit = kDeg;
        else if (u != "rad") parse_fail("units: expected \"rad\" or \"deg\"");
    }
    const std::string mode = j.contains("mode") && j.at("mode").is_string()
                                 ? j.at("mode").get<std::string>()
                                 : std::string("intrinsic");
    for (const char *k : {"intrinsic", "embedded", "pole"})
        if (j.contains(k) && mode != k)
            parse_fail(std::string("scenario: \"") + k + "\" given but mode is \"" + mode + "\"");

    if (j.contains("patch_radius")) {
        const double rl = number(j, "patch_radius", "scenario") / sc.radius;
        if (!(rl > 0 && rl < kHalfPi)) parse_fail("patch_radius / radius must lie in (0, pi/2)");
        sc.patch_radius = rl;
    }

    if (mode == "intrinsic") {
        sc.mode = ScenarioMode::intrinsic;
        const Json &b = member(j, "intrinsic", "scenario");
        EngagementState e;
        e.s0 = number(b, "s0", "intrinsic") / sc.radius;
        e.alpha0 = number(b, "alpha0", "intrinsic") * unit;
        e.beta0 = number(b, "beta0", "intrinsic") * unit;
        sc.speed_a = number_or(b, "speed_a", 1.0, "intrinsic");
        sc.speed_b = number_or(b, "speed_b", 1.0, "intrinsic");
        positive(sc.speed_a, "speed_a");
        positive(sc.speed_b, "speed_b");
        e.nu = sc.speed_a / sc.speed_b;
        e.dir_a = heading(b, "dir_a", "intrinsic");
        e.dir_b = heading(b, "dir_b", "intrinsic");
        try {
            e.validate();
        } catch (const Error &err) {
            parse_fail(std::string("intrinsic: ") + err.what());
        }
        const TrackPair unit_tracks = build_tracks(e);
        sc.track_pair = TrackPair{GreatCircleTrack(unit_tracks.a.start(), unit_tracks.a.tangent(),
                                      sc.speed_a / sc.radius),
                     GreatCircleTrack(unit_tracks.b.start(), unit_tracks.b.tangent(),
                                      sc.speed_b / sc.radius)};
        sc.state = e;
    } else if (mode == "embedded") {
        sc.mode = ScenarioMode::embedded;
        const Json &b = member(j, "embedded", "scenario");
        auto object = [&](const char *key) {
            const Json &o = member(b, key, "embedded");
            const std::string w = std::string("embedded.") + key;
            const double speed = number(o, "speed", w);
            positive(speed, w + ".speed");
            return std::pair{detail::geographic_track(number(o, "lat", w) * unit,
                                                      number(o, "lon", w) * unit,
                                                      number(o, "heading", w) * unit,
                                                      speed / sc.radius),
                             speed};
        };
        const auto [ta, va] = object("a");
        const auto [tb, vb] = object("b");
        sc.track_pair = TrackPair{ta, tb};
        sc.speed_a = va;
        sc.speed_b = vb;
        try {
            sc.state = measure_engagement(*sc.track_pair);
            sc.state->validate();
        } catch (const Error &) {
            sc.state.reset();
        }
    } else if (mode == "pole") {
        sc.mode = ScenarioMode::pole;
        const Json &b = member(j, "pole", "scenario");
        ZPair z;
        z.z_alpha0 = z.z_bar_alpha0 = number(b, "z_alpha0", "pole") / sc.radius;
        z.z_beta0 = z.z_bar_beta0 = number(b, "z_beta0", "pole") / sc.radius;
        const double gamma = number_or(b, "gamma", kHalfPi / unit, "pole") * unit;
        sc.speed_a = number_or(b, "speed_a", 1.0, "pole");
        sc.speed_b = number_or(b, "speed_b", 1.0, "pole");
        positive(sc.speed_a, "speed_a");
        positive(sc.speed_b, "speed_b");
        const Heading dir_b = heading(b, "dir_b", "pole");
        try {
            sc.track_pair = tracks_from_pole_distances(z.z_alpha0, z.z_beta0, gamma,
                                                   sc.speed_a / sc.radius,
                                                   sc.speed_b / sc.radius, dir_b);
        } catch (const Error &err) {
            parse_fail(std::string("pole: ") + err.what());
        }
        sc.pole_z = z;
        sc.pole_gamma = gamma;
        try {
            sc.state = measure_engagement(*sc.track_pair);
        } catch (const Error &) {
            sc.state.reset();
        }
    } else {
        parse_fail("mode: expected \"intrinsic\", \"embedded\" or \"pole\"");
    }
    return sc;
}

inline Scenario parse_scenario_text(const std::string &text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::exception &e) {
        throw Error(ErrorKind::ParseError, std::string("scenario JSON: ") + e.what());
    }
    return parse_scenario(j);
}

inline Scenario load_scenario(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open scenario file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario_text(ss.str());
}

} // namespace spherecc::io
