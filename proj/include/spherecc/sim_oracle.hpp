// spherecc simulation oracle
// Brute-force reference for every analytic prediction: exact great-circle
// propagation sampled on a uniform grid, golden-section refinement of local
// separation minima, and pole-passage events located by bisection.
#pragma once

#include <spherecc/numeric.hpp>
#include <spherecc/point_predict.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

namespace spherecc {

struct SimConfig {
    double step = 1e-4;        ///< arc advanced by the faster object per sample
    double refine_tol = 1e-10; ///< arc tolerance of minimum refinement
    double max_revolutions = 4; ///< span, in revolutions of the faster object
    double t_begin = 0;
    std::optional<double> t_end; ///< overrides max_revolutions when set

    void validate() const {
        if (!(step > 0)) throw Error(ErrorKind::InvalidArgument, "step must be > 0");
        if (!(refine_tol > 0) || !(refine_tol < step))
            throw Error(ErrorKind::InvalidArgument, "refine_tol must lie in (0, step)");
        if (!(max_revolutions > 0))
            throw Error(ErrorKind::InvalidArgument, "max_revolutions must be > 0");
        if (t_end && !(*t_end > t_begin))
            throw Error(ErrorKind::InvalidArgument, "t_end must exceed t_begin");
    }
};

struct SeparationSample {
    double time;
    double separation;
};

struct PoleEvent {
    Object object;
    Pole pole;
    double time;
    double separation; ///< geodesic distance between the objects at `time`
};

struct SimResult {
    std::vector<SeparationSample> samples;
    std::vector<SeparationSample> minima;
    std::vector<PoleEvent> pole_events;
    double t_begin = 0;
    double t_end = 0;
    bool coincident_circles = false; ///< no poles, so no pole events
};

inline double separation_at(const TrackPair &tracks, double t) {
    const Vec3 a = tracks.a.position(t);
    const Vec3 b = tracks.b.position(t);
    return std::atan2(a.cross(b).norm(), a.dot(b));
}

namespace detail {

struct PoleWatch {
    Object object;
    Pole pole;
    const GreatCircleTrack *track;
    Vec3 at;    ///< pole position
    Vec3 ahead; ///< tangent at the pole in the direction of travel
    double prev_sin = 0;
    bool prev_near = false;
};

inline double pole_coordinate(const PoleWatch &w, double t) {
    return w.track->position(t).dot(w.ahead);
}

} // namespace detail

/// Samples the geodesic separation of the two tracks and records refined
/// local minima and pole passages.
inline SimResult simulate(const TrackPair &tracks, const SimConfig &cfg = {}) {
    cfg.validate();
    const double w_fast =
        std::max(std::abs(tracks.a.angular_rate()), std::abs(tracks.b.angular_rate()));
    SimResult res;
    res.t_begin = cfg.t_begin;
    res.t_end = cfg.t_end ? *cfg.t_end
                          : cfg.t_begin + cfg.max_revolutions * 2 * kPi / w_fast;
    const double span = res.t_end - res.t_begin;
    const auto n = static_cast<std::size_t>(std::ceil(span * w_fast / cfg.step));
    auto time_at = [&](std::size_t k) {
        return res.t_begin + span * static_cast<double>(k) / static_cast<double>(n);
    };

    std::vector<detail::PoleWatch> watches;
    const Vec3 c = tracks.a.motion_normal().cross(tracks.b.motion_normal());
    res.coincident_circles = c.norm() < 1e-12;
    if (!res.coincident_circles) {
        const PoleFrame poles = pole_frame(tracks);
        for (auto [obj, track] : {std::pair{Object::A, &tracks.a},
                                  std::pair{Object::B, &tracks.b}}) {
            for (auto [pole, at] : {std::pair{Pole::N, poles.north.vec()},
                                    std::pair{Pole::S, poles.south.vec()}}) {
                watches.push_back({obj, pole, track, at,
                                   track->motion_normal().cross(at), 0, false});
            }
        }
    }

    res.samples.reserve(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        const double t = time_at(k);
        res.samples.push_back({t, separation_at(tracks, t)});
        for (auto &w : watches) {
            const Vec3 x = w.track->position(t);
            const double s = x.dot(w.ahead);
            const bool near = x.dot(w.at) > 0;
            if (k > 0 && w.prev_sin < 0 && s >= 0 && (near || w.prev_near)) {
                auto f = [&](double tt) { return detail::pole_coordinate(w, tt); };
                const double tol = 1e-12 / std::abs(w.track->angular_rate());
                double lo = time_at(k - 1), hi = t;
                while (hi - lo > tol) {
                    const double mid = 0.5 * (lo + hi);
                    if (mid <= lo || mid >= hi) break;
                    (f(mid) < 0 ? lo : hi) = mid;
                }
                const double te = std::abs(f(lo)) < std::abs(f(hi)) ? lo : hi;
                res.pole_events.push_back(
                    {w.object, w.pole, te, separation_at(tracks, te)});
            }
            w.prev_sin = s;
            w.prev_near = near;
        }
    }

    const double t_tol = cfg.refine_tol / w_fast;
    auto sep = [&](double t) { return separation_at(tracks, t); };
    for (std::size_t k = 1; k + 1 <= n; ++k) {
        const double d = res.samples[k].separation;
        if (d < res.samples[k - 1].separation && d <= res.samples[k + 1].separation) {
            const double t = numeric::golden_section_min(
                sep, res.samples[k - 1].time, res.samples[k + 1].time, t_tol);
            const double v = sep(t);
            res.minima.push_back(v <= d ? SeparationSample{t, v} : res.samples[k]);
        }
    }
    std::sort(res.pole_events.begin(), res.pole_events.end(),
              [](const PoleEvent &x, const PoleEvent &y) { return x.time < y.time; });
    return res;
}

struct MinSeparation {
    double time;
    double separation;
    bool refined; ///< false when no refined minimum lay in the window
};

struct TimeWindow {
    double begin;
    double end;
};

/// Times at which both objects are within `half_width` of the pole met in
/// the (p, q) window, clipped to t >= 0; rates are the absolute angular rates.
inline std::optional<TimeWindow> collision_window(const ZPair &z, double omega_a,
                                                  double omega_b, CycleIndex idx,
                                                  double half_width) {
    const double da = z.z_beta0 + idx.q * kPi;
    const double db = z.z_alpha0 + idx.p * kPi;
    const double lo = std::max({0.0, (da - half_width) / omega_a, (db - half_width) / omega_b});
    const double hi = std::min((da + half_width) / omega_a, (db + half_width) / omega_b);
    if (!(hi > lo)) return std::nullopt;
    return TimeWindow{lo, hi};
}

/// Smallest refined minimum in the window, else the smallest raw sample.
inline MinSeparation min_separation(const SimResult &res, TimeWindow window) {
    if (!(window.end >= window.begin) || window.end < res.t_begin ||
        window.begin > res.t_end)
        throw Error(ErrorKind::EmptyWindow, "window does not overlap the simulation");
    std::optional<MinSeparation> best;
    for (const auto &m : res.minima) {
        if (m.time < window.begin || m.time > window.end) continue;
        if (!best || m.separation < best->separation)
            best = MinSeparation{m.time, m.separation, true};
    }
    if (best) return *best;
    for (const auto &s : res.samples) {
        if (s.time < window.begin || s.time > window.end) continue;
        if (!best || s.separation < best->separation)
            best = MinSeparation{s.time, s.separation, false};
    }
    if (!best) throw Error(ErrorKind::EmptyWindow, "no samples inside the window");
    return *best;
}

inline MinSeparation min_separation(const SimResult &res) {
    return min_separation(res, {res.t_begin, res.t_end});
}

/// Minimum separation over a window, simulated only across that window.
inline MinSeparation window_min_separation(const TrackPair &tracks, TimeWindow window,
                                           double step = 1e-4) {
    SimConfig cfg;
    cfg.step = step;
    cfg.t_begin = window.begin;
    cfg.t_end = window.end;
    return min_separation(simulate(tracks, cfg));
}

/// Separation between the objects when `which` first passes a pole.
inline const PoleEvent &first_pole_arrival(const SimResult &res, Object which) {
    for (const auto &e : res.pole_events)
        if (e.object == which) return e;
    throw Error(ErrorKind::NoPoleEvent, "object never reached a pole");
}

inline double separation_at_first_pole_arrival(const SimResult &res, Object which) {
    return first_pole_arrival(res, which).separation;
}

/// Instantaneous (s, alpha, beta) measured from the motion tangents.
struct EngagementSample {
    double s;
    double alpha;
    double beta;
};

inline EngagementSample measure_angles(const TrackPair &tracks, double t) {
    const SpherePoint a(tracks.a.position(t));
    const SpherePoint b(tracks.b.position(t));
    return {geodesic_distance(a, b), vertex_angle(a, tracks.a.velocity_direction(t), b),
            vertex_angle(b, tracks.b.velocity_direction(t), a)};
}

} // namespace spherecc
