// spherecc engagement geometry
// Intrinsic two-object engagement (s0, alpha0, beta0, nu), its canonical 3D
// embedding, lune / half-lune classification and pole distances.
//
// Conventions
//   * N is the first pole (circle intersection) that A reaches; S = -N.
//   * alpha0, beta0 are the interior angles at A and B of the triangle
//     (A, B, N). When B travels away from N its motion tangent makes the
//     angle pi - beta0 with the line of sight.
//   * Lune 1 holds objects whose first pole is N, Lune 2 those heading to S
//     first. Q_I / Q_II split Lune 1 at arc pi/2 (Q_II touches N, Q_I touches
//     S). Q_III / Q_IV split Lune 2 (Q_III touches S, Q_IV touches N).
//   * z_beta0 is A's arc distance to its first pole, z_alpha0 is B's arc
//     distance to its own first pole.
#pragma once

#include <spherecc/sphere_core.hpp>

#include <string_view>
#include <utility>

namespace spherecc {

enum class Heading { toward_N, toward_S };
enum class HalfLune { Q_I, Q_II, Q_III, Q_IV };
enum class Pole { N, S };
enum class Object { A, B };

constexpr std::string_view to_string(Heading h) {
    return h == Heading::toward_N ? "toward_N" : "toward_S";
}
constexpr std::string_view to_string(Pole p) { return p == Pole::N ? "N" : "S"; }
constexpr std::string_view to_string(HalfLune q) {
    switch (q) {
    case HalfLune::Q_I: return "Q_I";
    case HalfLune::Q_II: return "Q_II";
    case HalfLune::Q_III: return "Q_III";
    case HalfLune::Q_IV: return "Q_IV";
    }
    return "?";
}

constexpr Pole other(Pole p) { return p == Pole::N ? Pole::S : Pole::N; }
constexpr Heading other(Heading h) {
    return h == Heading::toward_N ? Heading::toward_S : Heading::toward_N;
}

struct EngagementState {
    double s0 = 0;     ///< initial geodesic separation (arc radians)
    double alpha0 = 0; ///< interior angle at A
    double beta0 = 0;  ///< interior angle at B
    double nu = 1;     ///< speed ratio V_A / V_B
    Heading dir_a = Heading::toward_N;
    Heading dir_b = Heading::toward_N;

    void validate() const {
        auto open = [](double v, double lo, double hi) { return v > lo && v < hi; };
        if (!open(s0, 0, kPi))
            throw Error(ErrorKind::InvalidArgument, "s0 must lie in (0, pi)");
        if (!open(alpha0, 0, kPi) || !open(beta0, 0, kPi))
            throw Error(ErrorKind::InvalidArgument,
                        "alpha0 and beta0 must lie in (0, pi)");
        if (!(nu > 0) || !std::isfinite(nu))
            throw Error(ErrorKind::InvalidArgument, "nu must be positive");
    }

    bool same_lune() const { return dir_a == dir_b; }
};

struct TrackPair {
    GreatCircleTrack a;
    GreatCircleTrack b;
};

/// Pole-distance quantities. Barred values are the principal arcsin values;
/// the unbarred ones carry the half-lune correction.
struct ZPair {
    double z_bar_alpha0 = 0;
    double z_bar_beta0 = 0;
    double z_alpha0 = 0;
    double z_beta0 = 0;
};

struct PoleFrame {
    SpherePoint north; ///< first pole reached by A
    SpherePoint south;
};

/// Canonical embedding: A at +x, B at distance s0 toward +y, both circles
/// tilted into the +z hemisphere so that N has positive z. Angular rates are
/// nu for A and 1 for B (R = 1, V_B = 1).
inline TrackPair build_tracks(const EngagementState &e) {
    e.validate();
    if (e.s0 <= 1e-9 || e.s0 >= kPi - 1e-9)
        throw Error(ErrorKind::DegenerateGeodesic, "s0 too close to 0 or pi");
    const double cs = std::cos(e.s0), ss = std::sin(e.s0);
    const SpherePoint a(1, 0, 0);
    const SpherePoint b(cs, ss, 0);

    const Vec3 los_a(0, 1, 0);      // at A toward B
    const Vec3 los_b(ss, -cs, 0);   // at B toward A
    const Vec3 up(0, 0, 1);

    const Vec3 ta = std::cos(e.alpha0) * los_a + std::sin(e.alpha0) * up;
    Vec3 tb = std::cos(e.beta0) * los_b + std::sin(e.beta0) * up;
    if (!e.same_lune()) tb = -tb;

    return {GreatCircleTrack::through(a, ta, e.nu),
            GreatCircleTrack::through(b, tb, 1.0)};
}

/// Track pair realizing given pole distances around a common pole placed at
/// +z: A sits z_beta from N heading to N, B sits z_alpha from its first pole
/// (N when dir_b is toward_N, S otherwise), and the circles cross at N with
/// angle gamma between the directions toward A and toward B.
inline TrackPair tracks_from_pole_distances(double z_alpha, double z_beta,
                                            double gamma, double omega_a,
                                            double omega_b,
                                            Heading dir_b = Heading::toward_N) {
    if (!(z_beta > 0 && z_beta < kPi) || !(z_alpha > 0 && z_alpha < kPi))
        throw Error(ErrorKind::InvalidArgument, "pole distances must lie in (0, pi)");
    if (!(gamma > 0 && gamma < kPi))
        throw Error(ErrorKind::InvalidArgument, "gamma must lie in (0, pi)");
    if (!(omega_a > 0) || !(omega_b > 0))
        throw Error(ErrorKind::InvalidArgument, "angular rates must be positive");
    const Vec3 n(0, 0, 1);
    const Vec3 ua(1, 0, 0);
    const Vec3 ub(std::cos(gamma), std::sin(gamma), 0);

    // point at signed arc d from N along u, and the tangent of decreasing d
    auto place = [&](const Vec3 &u, double d) {
        return std::pair{Vec3(n * std::cos(d) + u * std::sin(d)),
                         Vec3(n * std::sin(d) - u * std::cos(d))};
    };
    const auto [pa, ta] = place(ua, z_beta);
    const bool b_north = dir_b == Heading::toward_N;
    const auto [pb, tb] = place(ub, b_north ? z_alpha : kPi - z_alpha);
    return {GreatCircleTrack::through(SpherePoint(pa), ta, omega_a),
            GreatCircleTrack::through(SpherePoint(pb), b_north ? tb : Vec3(-tb),
                                      omega_b)};
}

/// Circle intersections with N chosen as A's first pole.
inline PoleFrame pole_frame(const TrackPair &tracks) {
    const Vec3 c = tracks.a.motion_normal().cross(tracks.b.motion_normal());
    if (c.norm() < 1e-12)
        throw Error(ErrorKind::CoincidentCircles, "track circles coincide");
    Vec3 p = c.normalized();
    if (p.dot(tracks.a.velocity_direction(0)) < 0) p = -p;
    return {SpherePoint(p), SpherePoint(-p)};
}

/// Half-lune of a point lying on one of the two circles. The subject's lune
/// follows from the travel direction of the track it lies on.
inline HalfLune classify_half_lune(const SpherePoint &subject,
                                   const TrackPair &tracks) {
    const PoleFrame poles = pole_frame(tracks);
    const Vec3 &x = subject.vec();
    const GreatCircleTrack *track = nullptr;
    if (std::abs(x.dot(tracks.a.motion_normal())) < 1e-9)
        track = &tracks.a;
    else if (std::abs(x.dot(tracks.b.motion_normal())) < 1e-9)
        track = &tracks.b;
    else
        throw Error(ErrorKind::OffTrack, "point is on neither great circle");

    const Vec3 travel = track->motion_normal().cross(x);
    const bool lune1 = poles.north.vec().dot(travel) > 0;
    const bool near_north = geodesic_distance(subject, poles.north) <= kHalfPi;
    if (lune1) return near_north ? HalfLune::Q_II : HalfLune::Q_I;
    return near_north ? HalfLune::Q_IV : HalfLune::Q_III;
}

/// Half-lunes of (A, B) straight from the intrinsic state: the sign of the
/// cosine of each object's side to N decides which half it occupies.
inline std::pair<HalfLune, HalfLune> half_lunes(const EngagementState &e) {
    e.validate();
    const double gamma = solve_gamma(e.alpha0, e.beta0, e.s0);
    const double ca = std::cos(e.alpha0), cb = std::cos(e.beta0);
    const double cg = std::cos(gamma);
    // cos(AN) and cos(BN) up to positive factors
    const bool a_near = cb + ca * cg >= 0;
    const bool b_near = ca + cb * cg >= 0;
    const HalfLune qa = a_near ? HalfLune::Q_II : HalfLune::Q_I;
    HalfLune qb;
    if (e.same_lune())
        qb = b_near ? HalfLune::Q_II : HalfLune::Q_I;
    else
        qb = b_near ? HalfLune::Q_IV : HalfLune::Q_III;
    return {qa, qb};
}

namespace detail {
inline bool far_from_first_pole(HalfLune q) {
    return q == HalfLune::Q_I || q == HalfLune::Q_IV;
}
} // namespace detail

/// Pole distances from the sine rule with half-lune corrections: Q_I and Q_IV
/// take pi - zbar, Q_II and Q_III keep zbar.
inline ZPair compute_z_pair(const EngagementState &e,
                            std::pair<HalfLune, HalfLune> lunes) {
    e.validate();
    const double c = lemma2_value(e.alpha0, e.beta0, e.s0);
    const double sin_gamma_sq = (1.0 - c) * (1.0 + c);
    const double sin_gamma = std::sqrt(std::max(sin_gamma_sq, 0.0));
    if (sin_gamma < 1e-14)
        throw Error(ErrorKind::DegenerateTriangle,
                    "great circles coincide (sin gamma ~ 0)");
    const double ss = std::sin(e.s0);
    ZPair z;
    z.z_bar_alpha0 = checked_asin(std::sin(e.alpha0) * ss / sin_gamma, "z_bar_alpha0");
    z.z_bar_beta0 = checked_asin(std::sin(e.beta0) * ss / sin_gamma, "z_bar_beta0");
    z.z_beta0 = detail::far_from_first_pole(lunes.first) ? kPi - z.z_bar_beta0
                                                          : z.z_bar_beta0;
    z.z_alpha0 = detail::far_from_first_pole(lunes.second) ? kPi - z.z_bar_alpha0
                                                            : z.z_bar_alpha0;
    return z;
}

inline ZPair compute_z_pair(const EngagementState &e) {
    return compute_z_pair(e, half_lunes(e));
}

/// Arc distance to the pole reached after `half_cycles` extra half turns.
inline double distance_to_pole(const ZPair &z, Object which, int half_cycles) {
    if (half_cycles < 0)
        throw Error(ErrorKind::InvalidArgument, "half_cycles must be >= 0");
    const double base = which == Object::A ? z.z_beta0 : z.z_alpha0;
    return base + half_cycles * kPi;
}

/// Recovers the intrinsic state from an embedded track pair (dir_a is
/// toward_N by the naming convention).
inline EngagementState measure_engagement(const TrackPair &tracks) {
    const PoleFrame poles = pole_frame(tracks);
    const SpherePoint &a = tracks.a.start();
    const SpherePoint &b = tracks.b.start();
    EngagementState e;
    e.s0 = geodesic_distance(a, b);
    e.alpha0 = vertex_angle(a, tracks.a.velocity_direction(0), b);
    const Vec3 vb = tracks.b.velocity_direction(0);
    const bool b_north = poles.north.vec().dot(vb) > 0;
    e.dir_a = Heading::toward_N;
    e.dir_b = b_north ? Heading::toward_N : Heading::toward_S;
    e.beta0 = vertex_angle(b, b_north ? vb : Vec3(-vb), a);
    e.nu = std::abs(tracks.a.angular_rate()) / std::abs(tracks.b.angular_rate());
    return e;
}

} // namespace spherecc
