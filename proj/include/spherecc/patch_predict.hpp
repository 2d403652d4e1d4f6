// spherecc circular-patch collision prediction
//
// Coordinates: r1, r2 are the signed arc distances of A and B from the
// collision pole (positive before passage). With gamma the angle between the
// circles at the pole, the geodesic separation obeys
//     cos d = cos r1 cos r2 + sin r1 sin r2 cos gamma,
// and A lies within the patch radius rl of B exactly when cos d >= cos rl.
// That set, around (0, 0), is the proximity region C. Its copies C_{i,j} sit
// at (i pi, j pi) with i + j even.
//
// For a cycle window (p, q) the trajectory is the straight line through the
// initial condition (z_beta0 + q pi, z_alpha0 + p pi) with slope 1/nu, moving
// toward decreasing r1 as time runs.
#pragma once

#include <spherecc/point_predict.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

namespace spherecc {

/// Angle between the circles and the patch radius, with a = cos gamma and
/// b = cos rl cached.
class LethalGeometry {
public:
    LethalGeometry(double gamma, double rl)
        : gamma_(gamma), rl_(rl), a_(std::cos(gamma)), b_(std::cos(rl)) {
        if (!(gamma > 0 && gamma < kPi))
            throw Error(ErrorKind::InvalidArgument, "gamma must lie in (0, pi)");
        if (!(rl > 0 && rl < kHalfPi))
            throw Error(ErrorKind::InvalidArgument, "patch radius must lie in (0, pi/2)");
    }

    double gamma() const { return gamma_; }
    double rl() const { return rl_; }
    double a() const { return a_; }
    double b() const { return b_; }

private:
    double gamma_, rl_, a_, b_;
};

enum class Branch { plus, minus };

constexpr std::string_view to_string(Branch b) {
    return b == Branch::plus ? "plus" : "minus";
}

/// Offsets of a region copy, in half turns: C_{i pi, j pi}.
struct RegionId {
    int i = 0;
    int j = 0;
};

/// cos r1 cos r2 + sin r1 sin r2 cos gamma - cos rl (>= 0 inside C).
inline double proximity_residual(double r1, double r2, const LethalGeometry &g) {
    return std::cos(r1) * std::cos(r2) + std::sin(r1) * std::sin(r2) * g.a() - g.b();
}

inline bool proximity_holds(double r1, double r2, const LethalGeometry &g) {
    return proximity_residual(r1, r2, g) >= 0;
}

struct Interval {
    double lo;
    double hi;
    bool contains(double x) const { return x >= lo && x <= hi; }
};

/// Range of r1 covered by the boundary of C_{0,0}.
inline Interval region_r1_extent(const LethalGeometry &g) {
    const double ratio = std::sin(g.rl()) / std::sin(g.gamma());
    const double w = ratio >= 1.0 ? kHalfPi : std::asin(ratio);
    return {-w, w};
}

/// Half-width of region_r1_extent.
inline double region_half_width(const LethalGeometry &g) {
    return region_r1_extent(g).hi;
}

/// r2 on the boundary of C_{0,0} above (plus) or below (minus) r1, from the
/// half-angle closed form. The square-root argument
/// a^2 sin^2 r1 + cos^2 r1 - b^2 is evaluated as sin^2 rl - sin^2 r1 sin^2 gamma.
inline double region_boundary_r2(double r1, const LethalGeometry &g, Branch branch) {
    const double w = region_half_width(g);
    const double sr = std::sin(r1);
    const double sg = std::sin(g.gamma());
    const double srl = std::sin(g.rl());
    double disc = srl * srl - sr * sr * sg * sg;
    if (std::abs(r1) > w + 1e-12 || disc < -1e-12)
        throw Error(ErrorKind::OutOfExtent, "r1 outside the region extent");
    disc = std::max(disc, 0.0);
    const double root = std::sqrt(disc);
    const double num = g.a() * sr + (branch == Branch::plus ? root : -root);
    return 2.0 * std::atan(num / (g.b() + std::cos(r1)));
}

struct BoundaryVertex {
    double r1;
    double r2;
    Branch branch;
};

/// Closed counterclockwise polyline around C_{i,j}: the minus branch left to
/// right, then the plus branch back, first vertex repeated at the end.
/// Vertices are cosine-spaced in r1 to resolve the vertical tangents at the
/// extent endpoints.
inline std::vector<BoundaryVertex> grid_region_boundary(const LethalGeometry &g,
                                                        RegionId id, int samples) {
    if (samples < 8)
        throw Error(ErrorKind::InvalidArgument, "grid_region_boundary needs >= 8 samples");
    const int m = samples / 2;
    const double w = region_half_width(g);
    const double di = id.i * kPi, dj = id.j * kPi;
    std::vector<BoundaryVertex> out;
    out.reserve(2 * (m + 1) + 1);
    for (int k = 0; k <= m; ++k) {
        const double r1 = -w * std::cos(kPi * k / m);
        out.push_back({r1 + di, region_boundary_r2(r1, g, Branch::minus) + dj,
                       Branch::minus});
    }
    for (int k = m; k >= 0; --k) {
        const double r1 = -w * std::cos(kPi * k / m);
        out.push_back({r1 + di, region_boundary_r2(r1, g, Branch::plus) + dj,
                       Branch::plus});
    }
    out.push_back(out.front());
    return out;
}

struct Line {
    double slope;
    double intercept;
    double at(double r1) const { return slope * r1 + intercept; }
};

/// Initial condition of the (p, q) window in local (r1, r2) coordinates.
inline std::array<double, 2> initial_point(const ZPair &z, CycleIndex idx) {
    return {z.z_beta0 + idx.q * kPi, z.z_alpha0 + idx.p * kPi};
}

/// r2 = r1 / nu - z_beta0 / nu + z_alpha0 + pi (p - q / nu).
inline Line trajectory_line(const ZPair &z, double nu, CycleIndex idx) {
    if (!(nu > 0)) throw Error(ErrorKind::InvalidArgument, "nu must be positive");
    return {1.0 / nu, -z.z_beta0 / nu + z.z_alpha0 + kPi * (idx.p - idx.q / nu)};
}

/// Part of the trajectory line that can meet C_{0,0}: r1 within the extent,
/// r2 within the same half-width, and not before the initial condition.
inline std::optional<Interval> trajectory_search_interval(const ZPair &z, double nu,
                                                          const LethalGeometry &g,
                                                          CycleIndex idx) {
    const Line line = trajectory_line(z, nu, idx);
    const double w = region_half_width(g);
    double lo = std::max(-w, (-w - line.intercept) / line.slope);
    double hi = std::min(w, (w - line.intercept) / line.slope);
    hi = std::min(hi, initial_point(z, idx)[0]);
    if (!(hi > lo)) return std::nullopt;
    return Interval{lo, hi};
}

/// Roots r1 of the proximity equality along the trajectory line; an empty
/// result means no collision in this (p, q) window.
inline std::vector<double> implicit_collision_roots(const ZPair &z, double nu,
                                                    const LethalGeometry &g,
                                                    CycleIndex idx,
                                                    const numeric::ScanOptions &opts = {}) {
    const auto span = trajectory_search_interval(z, nu, g, idx);
    if (!span) return {};
    const Line line = trajectory_line(z, nu, idx);
    auto f = [&](double r1) { return proximity_residual(r1, line.at(r1), g); };
    return numeric::find_roots(f, span->lo, span->hi, opts);
}

/// True when the trajectory line dips into C_{0,0} inside the window, found
/// by minimizing the separation cosine gap along the line.
inline bool trajectory_enters_region(const ZPair &z, double nu, const LethalGeometry &g,
                                     CycleIndex idx, int samples = 512) {
    const auto span = trajectory_search_interval(z, nu, g, idx);
    if (!span) return false;
    const Line line = trajectory_line(z, nu, idx);
    auto neg = [&](double r1) { return -proximity_residual(r1, line.at(r1), g); };
    const auto m = numeric::global_min(neg, span->lo, span->hi, samples, 1e-13);
    return m && m->value <= 0;
}

/// Speed ratio whose trajectory through the initial condition meets the
/// boundary point above/below r1.
inline double speed_ratio_for_r1(double r1, const ZPair &z, const LethalGeometry &g,
                                 CycleIndex idx, Branch branch) {
    const auto init = initial_point(z, idx);
    const double den = region_boundary_r2(r1, g, branch) - init[1];
    if (std::abs(den) < 1e-14)
        throw Error(ErrorKind::DivisionDegenerate, "boundary point level with initial r2");
    return (r1 - init[0]) / den;
}

struct SpeedRatioRange {
    double nu_min;
    double nu_max;
    double r1_at_min;
    Branch branch_at_min;
    double r1_at_max;
    Branch branch_at_max;
    /// nu_min is 0: A barely moves while B sweeps through the region.
    bool open_below = false;
    /// nu_max is infinite: B barely moves while A sweeps through.
    bool open_above = false;
};

/// Interval of speed ratios whose trajectory meets C_{0,0} in the (p, q)
/// window: extremes of speed_ratio_for_r1 over both branches, restricted to
/// boundary points reached after t = 0.
inline SpeedRatioRange speed_ratio_range(const ZPair &z, const LethalGeometry &g,
                                         CycleIndex idx, int samples = 4096) {
    const auto init = initial_point(z, idx);
    if (proximity_holds(init[0], init[1], g) && std::abs(init[0]) <= kHalfPi &&
        std::abs(init[1]) <= kHalfPi)
        throw Error(ErrorKind::InsideRegion, "initial condition already inside the region");
    const Interval ext = region_r1_extent(g);

    std::optional<SpeedRatioRange> out;
    for (Branch br : {Branch::plus, Branch::minus}) {
        auto ratio = [&](double r1) {
            if (!(r1 < init[0])) return numeric::kUndefined;
            const double r2 = region_boundary_r2(std::clamp(r1, ext.lo, ext.hi), g, br);
            if (!(r2 < init[1])) return numeric::kUndefined;
            return (r1 - init[0]) / (r2 - init[1]);
        };
        auto neg_ratio = [&](double r1) { return -ratio(r1); };
        const auto lo = numeric::global_min(ratio, ext.lo, ext.hi, samples, 1e-10);
        const auto hi = numeric::global_min(neg_ratio, ext.lo, ext.hi, samples, 1e-10);
        if (!lo || !hi) continue;
        if (!out) {
            out = SpeedRatioRange{lo->value, -hi->value, lo->x, br, hi->x, br};
            continue;
        }
        if (lo->value < out->nu_min) {
            out->nu_min = lo->value;
            out->r1_at_min = lo->x;
            out->branch_at_min = br;
        }
        if (-hi->value > out->nu_max) {
            out->nu_max = -hi->value;
            out->r1_at_max = hi->x;
            out->branch_at_max = br;
        }
    }
    if (!out || !(out->nu_max > 0))
        throw Error(ErrorKind::EmptyRange, "no positive finite speed ratio for this window");
    // A vertical (horizontal) trajectory through the initial condition that
    // still cuts the region makes the interval open at 0 (infinity). The
    // region is symmetric under r1 <-> r2, so the same branch formula gives
    // the leftmost r1 at a given r2.
    if (ext.lo < init[0] && init[0] < ext.hi &&
        region_boundary_r2(init[0], g, Branch::minus) < init[1]) {
        out->nu_min = 0;
        out->r1_at_min = init[0];
        out->branch_at_min = Branch::minus;
        out->open_below = true;
    }
    if (ext.lo < init[1] && init[1] < ext.hi &&
        region_boundary_r2(init[1], g, Branch::minus) < init[0]) {
        out->nu_max = std::numeric_limits<double>::infinity();
        out->r1_at_max = region_boundary_r2(init[1], g, Branch::minus);
        out->branch_at_max = Branch::minus;
        out->open_above = true;
    }
    return *out;
}

// ---------------------------------------------------------------------------
// Tangency

/// Implicit-derivative slope dr2/dr1 of the boundary at (r1, r2), as a
/// numerator/denominator pair.
struct BoundarySlope {
    double num;
    double den;
    double value() const { return num / den; }
};

inline BoundarySlope boundary_slope(double r1, double r2, const LethalGeometry &g) {
    const double s1 = std::sin(r1), c1 = std::cos(r1);
    const double s2 = std::sin(r2), c2 = std::cos(r2);
    return {s1 * c2 - c1 * s2 * g.a(), s1 * c2 * g.a() - c1 * s2};
}

struct TangencyPoint {
    double r1_bar;
    double r2_bar;
    Branch branch;
    /// tan r2 / tan r1 at the point; equals (nu - cos g) / (nu cos g - 1).
    double m_value;
};

/// Ratio tan r2 / tan r1 that the slope condition dr2/dr1 = 1/nu imposes.
inline double tangency_m(double nu, double gamma) {
    const double a = std::cos(gamma);
    return (nu - a) / (nu * a - 1.0);
}

/// The two boundary points of C_{0,0} whose tangent has slope 1/nu, one on
/// each branch, located by a 1-D root search of nu * num - den along the
/// branch.
inline std::array<TangencyPoint, 2> tangency_points(double nu, const LethalGeometry &g,
                                                    int samples = 256) {
    if (!(nu > 0)) throw Error(ErrorKind::InvalidArgument, "nu must be positive");
    const Interval ext = region_r1_extent(g);
    std::array<TangencyPoint, 2> out{};
    int slot = 0;
    for (Branch br : {Branch::plus, Branch::minus}) {
        auto f = [&](double r1) {
            const double r2 = region_boundary_r2(r1, g, br);
            const BoundarySlope s = boundary_slope(r1, r2, g);
            return nu * s.num - s.den;
        };
        numeric::ScanOptions opts;
        opts.samples = samples;
        opts.residual_tol = 1e-13;
        const auto roots = numeric::find_roots(f, ext.lo, ext.hi, opts);
        // the extent endpoints carry a vertical tangent; drop roots there
        std::optional<double> pick;
        for (double r : roots) {
            const double r2 = region_boundary_r2(r, g, br);
            const BoundarySlope s = boundary_slope(r, r2, g);
            if (std::abs(s.den) < 1e-300) continue;
            if (!pick || std::abs(s.value() - 1.0 / nu) <
                             std::abs(boundary_slope(*pick, region_boundary_r2(*pick, g, br), g)
                                          .value() -
                                      1.0 / nu))
                pick = r;
        }
        if (!pick)
            throw Error(ErrorKind::NoTangency, "no boundary point with slope 1/nu");
        const double r2 = region_boundary_r2(*pick, g, br);
        out[slot++] = {*pick, r2, br, std::tan(r2) / std::tan(*pick)};
    }
    return out;
}

/// Agreement report of a closed-form tangency expression with the numeric
/// tangency points.
struct ClosedFormCheck {
    bool evaluated = false;     ///< the expression produced real candidates
    bool agrees = false;        ///< every numeric point matched within tol
    double discrepancy = 0;     ///< worst |r1| mismatch (inf when not evaluated)
    std::vector<double> r1_abs; ///< candidate |r1| values
};

namespace detail {
inline ClosedFormCheck compare_abs_r1(std::vector<double> candidates,
                                      const std::array<TangencyPoint, 2> &pts, double tol) {
    ClosedFormCheck c;
    c.r1_abs = std::move(candidates);
    c.evaluated = !c.r1_abs.empty();
    c.discrepancy = std::numeric_limits<double>::infinity();
    if (!c.evaluated) return c;
    double worst = 0;
    for (const auto &p : pts) {
        double best = std::numeric_limits<double>::infinity();
        for (double r : c.r1_abs) best = std::min(best, std::abs(std::abs(p.r1_bar) - r));
        worst = std::max(worst, best);
    }
    c.discrepancy = worst;
    c.agrees = worst <= tol;
    return c;
}
} // namespace detail

/// The printed closed form: M = (nu - cos g)/(nu - 1) and
/// cos^2 r1 = ( [2M - (1+M) b^2 + b sqrt((1+M)^2 b^2 - 4M)] / (2(M-1)) )^(1/2).
inline ClosedFormCheck printed_closed_form_check(double nu, const LethalGeometry &g,
                                               const std::array<TangencyPoint, 2> &pts,
                                               double tol = 1e-8) {
    std::vector<double> cand;
    const double m = (nu - g.a()) / (nu - 1.0);
    const double b2 = g.b() * g.b();
    const double disc = (1 + m) * (1 + m) * b2 - 4 * m;
    if (std::isfinite(m) && disc >= 0 && m != 1.0) {
        const double inner = (2 * m - (1 + m) * b2 + g.b() * std::sqrt(disc)) / (2 * (m - 1));
        if (inner >= 0) {
            const double cos2 = std::sqrt(inner);
            if (cos2 <= 1.0) cand.push_back(std::acos(std::sqrt(cos2)));
        }
    }
    return detail::compare_abs_r1(std::move(cand), pts, tol);
}

/// Closed form rederived from tan r2 = M tan r1 with M = tangency_m: with
/// Z = cos^2 r1 and K = M cos g,
///   (1-K)^2 Z^2 + [2K(1-K) - b^2 (1-M^2)] Z + K^2 - b^2 M^2 = 0.
/// Roots are kept only when they reproduce a boundary point near C_{0,0}.
inline ClosedFormCheck corrected_closed_form_check(double nu, const LethalGeometry &g,
                                                   const std::array<TangencyPoint, 2> &pts,
                                                   double tol = 1e-8) {
    std::vector<double> cand;
    const double m = tangency_m(nu, g.gamma());
    if (std::isfinite(m)) {
        const double k = m * g.a();
        const double b2 = g.b() * g.b();
        const double qa = (1 - k) * (1 - k);
        const double qb = 2 * k * (1 - k) - b2 * (1 - m * m);
        const double qc = k * k - b2 * m * m;
        std::vector<double> zs;
        if (std::abs(qa) < 1e-300) {
            if (qb != 0) zs.push_back(-qc / qb);
        } else {
            const double d = qb * qb - 4 * qa * qc;
            if (d >= 0) {
                const double sq = std::sqrt(d);
                const double q = -0.5 * (qb + (qb >= 0 ? sq : -sq));
                zs.push_back(q / qa);
                if (q != 0) zs.push_back(qc / q);
            }
        }
        for (double z : zs) {
            if (!(z >= -1e-14 && z <= 1 + 1e-14)) continue;
            const double r1 = std::acos(std::sqrt(std::clamp(z, 0.0, 1.0)));
            for (double s1 : {r1, -r1}) {
                const double t2 = m * std::tan(s1);
                const double r2 = std::atan(t2);
                if (std::abs(proximity_residual(s1, r2, g)) < 1e-9) cand.push_back(r1);
            }
        }
    }
    return detail::compare_abs_r1(std::move(cand), pts, tol);
}

// ---------------------------------------------------------------------------
// Collision cone

struct ConeInterval {
    double alpha_lo;
    double alpha_hi;
    double gamma_lo; ///< interception angle at alpha_lo
    double gamma_hi; ///< interception angle at alpha_hi
    bool lo_is_boundary = true; ///< false when the interval runs into 0
    bool hi_is_boundary = true; ///< false when the interval runs into pi
};

struct CollisionCone {
    std::vector<ConeInterval> intervals;
    std::vector<double> boundaries; ///< all boundary roots, ascending
};

/// Signed offsets of the (p, q) initial condition from the two tangent lines
/// of slope 1/nu at heading alpha0; the heading is inside the cone when the
/// offsets differ in sign. NaN entries mark headings without a valid geometry.
inline std::array<double, 2> cone_offsets(double alpha0, double beta0, double s0,
                                          double nu, double rl, CycleIndex idx,
                                          Heading dir_b = Heading::toward_N,
                                          int tangency_samples = 256) {
    try {
        const EngagementState e{s0, alpha0, beta0, nu, Heading::toward_N, dir_b};
        const ZPair z = compute_z_pair(e);
        const LethalGeometry g(solve_gamma(alpha0, beta0, s0), rl);
        const auto tp = tangency_points(nu, g, tangency_samples);
        const auto init = initial_point(z, idx);
        std::array<double, 2> h{};
        for (int k = 0; k < 2; ++k)
            h[k] = init[1] - ((init[0] - tp[k].r1_bar) / nu + tp[k].r2_bar);
        return h;
    } catch (const Error &) {
        return {numeric::kUndefined, numeric::kUndefined};
    }
}

/// Headings alpha0 of A that bring it within rl of B in the (p, q) window.
/// Boundaries solve the tangent-line condition for each tangency branch with
/// gamma, the pole distances and the tangency points recomputed per
/// candidate; every reported interval is checked at its midpoint against the
/// implicit collision equation.
inline CollisionCone collision_cone(double beta0, double s0, double nu, double rl,
                                    CycleIndex idx, Heading dir_b = Heading::toward_N,
                                    const numeric::ScanOptions &opts = {1024, 1e-12}) {
    if (!(s0 > 0 && s0 < kPi) || !(beta0 > 0 && beta0 < kPi) || !(nu > 0) ||
        !(rl > 0 && rl < kHalfPi))
        throw Error(ErrorKind::InvalidArgument, "collision_cone: bad input");
    const double lo = 1e-9, hi = kPi - 1e-9;

    CollisionCone cone;
    for (int k = 0; k < 2; ++k) {
        auto f = [&](double a) { return cone_offsets(a, beta0, s0, nu, rl, idx, dir_b)[k]; };
        for (double r : numeric::find_roots(f, lo, hi, opts)) cone.boundaries.push_back(r);
    }
    std::sort(cone.boundaries.begin(), cone.boundaries.end());
    if (cone.boundaries.empty())
        throw Error(ErrorKind::EmptyCone, "no cone boundary for this (p, q)");

    auto inside = [&](double a) {
        const auto h = cone_offsets(a, beta0, s0, nu, rl, idx, dir_b);
        if (!numeric::defined(h[0]) || !numeric::defined(h[1])) return false;
        if ((h[0] < 0) == (h[1] < 0)) return false;
        const EngagementState e{s0, a, beta0, nu, Heading::toward_N, dir_b};
        const ZPair z = compute_z_pair(e);
        const LethalGeometry g(solve_gamma(a, beta0, s0), rl);
        return !implicit_collision_roots(z, nu, g, idx).empty() ||
               trajectory_enters_region(z, nu, g, idx);
    };

    std::vector<double> edges;
    edges.push_back(lo);
    edges.insert(edges.end(), cone.boundaries.begin(), cone.boundaries.end());
    edges.push_back(hi);
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
        const double a0 = edges[k], a1 = edges[k + 1];
        if (!(a1 > a0) || !inside(0.5 * (a0 + a1))) continue;
        if (!cone.intervals.empty() && cone.intervals.back().alpha_hi == a0) {
            cone.intervals.back().alpha_hi = a1;
            cone.intervals.back().hi_is_boundary = k + 1 < edges.size() - 1;
            continue;
        }
        cone.intervals.push_back({a0, a1, 0, 0, k > 0, k + 1 < edges.size() - 1});
    }
    for (auto &iv : cone.intervals) {
        iv.gamma_lo = solve_gamma(iv.alpha_lo, beta0, s0);
        iv.gamma_hi = solve_gamma(iv.alpha_hi, beta0, s0);
    }
    return cone;
}

} // namespace spherecc
