// spherecc sphere core
// Points and great-circle tracks on the unit sphere, geodesic distance,
// spherical-triangle identities and the collision-triangle invariant.
//
// All arc lengths are central angles on the unit sphere. A physical radius
// only appears at I/O boundaries.
#pragma once

#include <spherecc/errors.hpp>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace spherecc {

using Vec3 = Eigen::Vector3d;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kHalfPi = 0.5 * std::numbers::pi;

/// Arguments of acos/asin outside [-1, 1] by at most this much are rounding.
inline constexpr double kClampSlack = 1e-12;

namespace detail {

inline double clamp_unit(double x, const char *where) {
    if (!std::isfinite(x) || x > 1.0 + kClampSlack || x < -1.0 - kClampSlack) {
        throw Error(ErrorKind::NumericalDomain,
                    std::string(where) + ": argument " + std::to_string(x) +
                        " outside [-1, 1]");
    }
    return std::clamp(x, -1.0, 1.0);
}

} // namespace detail

inline double checked_acos(double x, const char *where = "acos") {
    return std::acos(detail::clamp_unit(x, where));
}

inline double checked_asin(double x, const char *where = "asin") {
    return std::asin(detail::clamp_unit(x, where));
}

/// Unit 3-vector on the sphere.
class SpherePoint {
public:
    /// Normalizes v; throws for a (near) zero vector.
    explicit SpherePoint(const Vec3 &v) {
        const double n = v.norm();
        if (!(n > 1e-300) || !std::isfinite(n))
            throw Error(ErrorKind::InvalidArgument, "SpherePoint from zero vector");
        v_ = v / n;
    }

    SpherePoint(double x, double y, double z) : SpherePoint(Vec3(x, y, z)) {}

    /// Geographic construction (radians); x toward (0, 0), z toward the
    /// geographic north pole.
    static SpherePoint from_lat_lon(double lat, double lon) {
        return SpherePoint(Vec3(std::cos(lat) * std::cos(lon),
                                std::cos(lat) * std::sin(lon), std::sin(lat)));
    }

    const Vec3 &vec() const { return v_; }
    SpherePoint antipode() const { return SpherePoint(-v_); }

private:
    Vec3 v_;
};

/// Central angle between p and q in [0, pi], via atan2(|p x q|, p . q).
inline double geodesic_distance(const SpherePoint &p, const SpherePoint &q) {
    return std::atan2(p.vec().cross(q.vec()).norm(), p.vec().dot(q.vec()));
}

/// Uniform motion along a great circle: position(t) = start cos(w t) +
/// tangent sin(w t) with w = angular_rate (= V / R, signed).
class GreatCircleTrack {
public:
    GreatCircleTrack(const SpherePoint &start, const Vec3 &tangent,
                     double angular_rate)
        : start_(start), tangent_(tangent), rate_(angular_rate) {
        if (std::abs(tangent_.norm() - 1.0) > 1e-12)
            throw Error(ErrorKind::InvalidArgument, "track tangent is not unit");
        if (std::abs(tangent_.dot(start_.vec())) > 1e-12)
            throw Error(ErrorKind::InvalidArgument,
                        "track tangent not orthogonal to start");
        if (!std::isfinite(rate_) || rate_ == 0.0)
            throw Error(ErrorKind::InvalidArgument,
                        "track angular rate must be finite and nonzero");
    }

    /// Projects `direction` onto the tangent plane at start and normalizes.
    static GreatCircleTrack through(const SpherePoint &start,
                                    const Vec3 &direction, double angular_rate) {
        const Vec3 &p = start.vec();
        Vec3 t = direction - direction.dot(p) * p;
        const double n = t.norm();
        if (n < 1e-14)
            throw Error(ErrorKind::InvalidArgument,
                        "track direction parallel to start point");
        t /= n;
        // one more pass keeps orthogonality at the 1e-16 level
        t -= t.dot(p) * p;
        t.normalize();
        return GreatCircleTrack(start, t, angular_rate);
    }

    const SpherePoint &start() const { return start_; }
    const Vec3 &tangent() const { return tangent_; }
    double angular_rate() const { return rate_; }

    /// Unit normal oriented with the direction of motion (right-handed about
    /// the travel direction).
    Vec3 motion_normal() const {
        const Vec3 n = start_.vec().cross(tangent_);
        return rate_ > 0 ? n : Vec3(-n);
    }

    Vec3 position(double t) const {
        const double phase = rate_ * t;
        return start_.vec() * std::cos(phase) + tangent_ * std::sin(phase);
    }

    /// Unit direction of travel at time t.
    Vec3 velocity_direction(double t) const {
        const double phase = rate_ * t;
        const Vec3 d = -start_.vec() * std::sin(phase) + tangent_ * std::cos(phase);
        return rate_ > 0 ? d : Vec3(-d);
    }

private:
    SpherePoint start_;
    Vec3 tangent_;
    double rate_;
};

inline SpherePoint propagate(const GreatCircleTrack &track, double t) {
    return SpherePoint(track.position(t));
}

/// Unit initial tangent at `from` of the minor geodesic toward `to`.
inline Vec3 geodesic_tangent(const SpherePoint &from, const SpherePoint &to) {
    const Vec3 &a = from.vec();
    const Vec3 c = a.cross(to.vec());
    if (c.norm() < 1e-9)
        throw Error(ErrorKind::DegenerateGeodesic,
                    "geodesic undefined between coincident or antipodal points");
    return c.cross(a).normalized();
}

/// Angle in [0, pi] between a motion tangent at `at` and the geodesic from
/// `at` toward `toward`.
inline double vertex_angle(const SpherePoint &at, const Vec3 &motion_tangent,
                           const SpherePoint &toward) {
    const Vec3 g = geodesic_tangent(at, toward);
    return std::atan2(motion_tangent.cross(g).norm(), motion_tangent.dot(g));
}

/// cos(gamma) of the collision triangle: sin a sin b cos s - cos a cos b.
/// Constant along any pre-collision trajectory pair.
inline double lemma2_value(double alpha, double beta, double s) {
    return std::sin(alpha) * std::sin(beta) * std::cos(s) -
           std::cos(alpha) * std::cos(beta);
}

/// Angle between the two great circles at the collision point, from the
/// instantaneous (alpha, beta, s) via the second spherical law of cosines.
inline double solve_gamma(double alpha, double beta, double s) {
    return checked_acos(lemma2_value(alpha, beta, s), "solve_gamma");
}

/// First law of cosines: side opposite the angle Z between sides x and y.
inline double cosine_law_side(double x, double y, double Z) {
    return checked_acos(std::cos(x) * std::cos(y) +
                            std::sin(x) * std::sin(y) * std::cos(Z),
                        "cosine_law_side");
}

/// Second law of cosines: angle opposite side z given the other two angles.
inline double cosine_law_angle(double X, double Y, double z) {
    return checked_acos(-std::cos(X) * std::cos(Y) +
                            std::sin(X) * std::sin(Y) * std::cos(z),
                        "cosine_law_angle");
}

inline double sine_rule_ratio(double angle, double side) {
    const double s = std::sin(side);
    if (std::abs(s) < 1e-14)
        throw Error(ErrorKind::DegenerateSide, "sine rule with sin(side) ~ 0");
    return std::sin(angle) / s;
}

/// Spherical triangle with vertices X, Y, Z and opposite sides x, y, z.
struct SphericalTriangle {
    double x = 0, y = 0, z = 0; ///< sides (arc radians)
    double X = 0, Y = 0, Z = 0; ///< angles (radians)
    bool consistent = false;    ///< built from actual geometry

    static SphericalTriangle from_points(const SpherePoint &px,
                                         const SpherePoint &py,
                                         const SpherePoint &pz) {
        SphericalTriangle t;
        t.x = geodesic_distance(py, pz);
        t.y = geodesic_distance(px, pz);
        t.z = geodesic_distance(px, py);
        t.X = angle_at(px, py, pz);
        t.Y = angle_at(py, pz, px);
        t.Z = angle_at(pz, px, py);
        t.consistent = true;
        return t;
    }

    double angle_sum() const { return X + Y + Z; }

    /// max - min of the three sine-rule ratios.
    double sine_rule_spread() const {
        const double r1 = sine_rule_ratio(X, x);
        const double r2 = sine_rule_ratio(Y, y);
        const double r3 = sine_rule_ratio(Z, z);
        return std::max({r1, r2, r3}) - std::min({r1, r2, r3});
    }

    /// Largest |cos side - (cos cos + sin sin cos angle)| over the three
    /// cyclic forms.
    double first_cosine_residual() const {
        auto r = [](double a, double b, double c, double C) {
            return std::abs(std::cos(c) - (std::cos(a) * std::cos(b) +
                                           std::sin(a) * std::sin(b) * std::cos(C)));
        };
        return std::max({r(x, y, z, Z), r(y, z, x, X), r(z, x, y, Y)});
    }

    /// Largest |cos angle - (-cos cos + sin sin cos side)| over the three
    /// cyclic forms.
    double second_cosine_residual() const {
        auto r = [](double A, double B, double C, double c) {
            return std::abs(std::cos(C) - (-std::cos(A) * std::cos(B) +
                                           std::sin(A) * std::sin(B) * std::cos(c)));
        };
        return std::max({r(X, Y, Z, z), r(Y, Z, X, x), r(Z, X, Y, y)});
    }

private:
    static double angle_at(const SpherePoint &v, const SpherePoint &a,
                           const SpherePoint &b) {
        const Vec3 ta = geodesic_tangent(v, a);
        const Vec3 tb = geodesic_tangent(v, b);
        return std::atan2(ta.cross(tb).norm(), ta.dot(tb));
    }
};

} // namespace spherecc
