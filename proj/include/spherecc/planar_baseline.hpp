// spherecc planar baseline
// Euclidean collision-course test for constant-velocity point objects: the
// line of sight from A to B must not rotate and must be shrinking. Serves as
// the small-separation limit of the spherical results.
#pragma once

#include <spherecc/sphere_core.hpp>

namespace spherecc {

/// A and B on a plane. theta is the LOS angle (A toward B), alpha and beta
/// the headings of A and B, all measured from the same reference axis.
struct PlanarEngagement {
    double r = 1;
    double theta = 0;
    double v_a = 1;
    double v_b = 1;
    double alpha = 0;
    double beta = 0;

    void validate() const {
        if (!(r > 0)) throw Error(ErrorKind::InvalidArgument, "r must be > 0");
        if (!(v_a > 0) || !(v_b > 0))
            throw Error(ErrorKind::InvalidArgument, "speeds must be > 0");
    }
};

struct RelativeVelocity {
    double v_theta; ///< normal to the LOS
    double v_r;     ///< along the LOS, negative when closing
};

inline RelativeVelocity relative_velocity_components(const PlanarEngagement &e) {
    e.validate();
    return {e.v_b * std::sin(e.beta - e.theta) - e.v_a * std::sin(e.alpha - e.theta),
            e.v_b * std::cos(e.beta - e.theta) - e.v_a * std::cos(e.alpha - e.theta)};
}

/// Non-rotating, shrinking LOS.
inline bool is_collision_course_planar(const PlanarEngagement &e, double tol = 1e-9) {
    if (!(tol > 0)) throw Error(ErrorKind::InvalidArgument, "tol must be > 0");
    const RelativeVelocity v = relative_velocity_components(e);
    return std::abs(v.v_theta) < tol && v.v_r < 0;
}

/// 3D form: rel_pos points from A to B. The LOS must stay in the plane of the
/// two velocities, carry no transverse relative speed, and be closing. The
/// transverse term is the norm of the relative velocity's component normal to
/// the LOS, which also covers parallel velocities where the triple product
/// vanishes identically.
inline bool is_collision_course_3d(const Vec3 &rel_pos, const Vec3 &v_a, const Vec3 &v_b,
                                   double tol = 1e-9) {
    if (v_a.norm() < 1e-14 || v_b.norm() < 1e-14)
        throw Error(ErrorKind::DegenerateVelocity, "velocity norm below 1e-14");
    if (rel_pos.norm() < 1e-300)
        throw Error(ErrorKind::InvalidArgument, "objects already coincide");
    if (!(tol > 0)) throw Error(ErrorKind::InvalidArgument, "tol must be > 0");
    const Vec3 r = rel_pos.normalized();
    const double coplanar = r.dot(v_a.normalized().cross(v_b.normalized()));
    const Vec3 vr = v_b - v_a;
    const double radial = vr.dot(r);
    const double transverse = (vr - radial * r).norm();
    return std::abs(coplanar) < tol && transverse < tol && radial < 0;
}

} // namespace spherecc
