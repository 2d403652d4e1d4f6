// spherecc point-object collision prediction
// Collision speed ratios over half-cycle indices, parity admissibility,
// collision headings for a given speed ratio, and the miss distance at the
// pole.
#pragma once

#include <spherecc/engagement.hpp>
#include <spherecc/numeric.hpp>

#include <optional>
#include <vector>

namespace spherecc {

/// Half-cycle counts completed before collision: p for B, q for A.
struct CycleIndex {
    int p = 0;
    int q = 0;
};

enum class Parity { even, odd };

constexpr Parity parity_of(int k) { return (k % 2 == 0) ? Parity::even : Parity::odd; }
constexpr std::string_view to_string(Parity p) {
    return p == Parity::even ? "even" : "odd";
}

struct ParityRule {
    Pole pole = Pole::N;
    Parity p_parity = Parity::even;
    Parity q_parity = Parity::even;

    bool admits(CycleIndex idx) const {
        return parity_of(idx.p) == p_parity && parity_of(idx.q) == q_parity;
    }
};

/// Name of the first pole an object heading `h` reaches (A's first pole is N
/// when dir_a is toward_N; with dir_a toward_S the poles are relabelled).
constexpr Pole first_pole(Heading h) {
    return h == Heading::toward_N ? Pole::N : Pole::S;
}

/// Parities of (p, q) that make both objects sit at `pole` together.
inline ParityRule admissible_parities(Heading dir_a, Heading dir_b, Pole pole) {
    ParityRule rule;
    rule.pole = pole;
    rule.q_parity = pole == first_pole(dir_a) ? Parity::even : Parity::odd;
    rule.p_parity = pole == first_pole(dir_b) ? Parity::even : Parity::odd;
    return rule;
}

/// Pole where the (p, q) passage would happen, or nullopt when A and B would
/// be at opposite poles.
inline std::optional<Pole> collision_pole(Heading dir_a, Heading dir_b,
                                          CycleIndex idx) {
    const Pole pa = parity_of(idx.q) == Parity::even ? first_pole(dir_a)
                                                     : other(first_pole(dir_a));
    const Pole pb = parity_of(idx.p) == Parity::even ? first_pole(dir_b)
                                                     : other(first_pole(dir_b));
    if (pa != pb) return std::nullopt;
    return pa;
}

/// nu = (z_beta0 + q pi) / (z_alpha0 + p pi).
inline double collision_speed_ratio(const ZPair &z, CycleIndex idx) {
    const double num = z.z_beta0 + idx.q * kPi;
    const double den = z.z_alpha0 + idx.p * kPi;
    if (!(num > 0) || !(den > 0))
        throw Error(ErrorKind::InvalidIndex,
                    "pole distance for this cycle index is not positive");
    return num / den;
}

struct SpeedRatioRow {
    int p = 0;
    int q = 0;
    double nu = 0;
    std::optional<Pole> pole; ///< set when filtered by a parity rule
};

/// Every (p, q) in [0, p_max] x [0, q_max], p-major order.
inline std::vector<SpeedRatioRow> speed_ratio_grid(const ZPair &z, int p_max,
                                                   int q_max) {
    if (p_max < 0 || q_max < 0)
        throw Error(ErrorKind::InvalidArgument, "grid bounds must be >= 0");
    std::vector<SpeedRatioRow> rows;
    for (int p = 0; p <= p_max; ++p)
        for (int q = 0; q <= q_max; ++q) {
            const CycleIndex idx{p, q};
            if (z.z_beta0 + q * kPi <= 0 || z.z_alpha0 + p * kPi <= 0) continue;
            rows.push_back({p, q, collision_speed_ratio(z, idx), std::nullopt});
        }
    return rows;
}

/// Grid restricted to the rows admitted by `rule`.
inline std::vector<SpeedRatioRow> speed_ratio_grid(const ZPair &z, int p_max,
                                                   int q_max,
                                                   const ParityRule &rule) {
    std::vector<SpeedRatioRow> rows;
    for (auto row : speed_ratio_grid(z, p_max, q_max)) {
        if (!rule.admits({row.p, row.q})) continue;
        row.pole = rule.pole;
        rows.push_back(row);
    }
    return rows;
}

/// Residual of the collision-heading condition at a candidate alpha0:
/// nu (z_alpha0 + p pi) - (z_beta0 + q pi), with the pole distances
/// recomputed (including half-lune corrections) for that heading. NaN when
/// the candidate is outside the geometric domain.
inline double heading_residual(double alpha0, double beta0, double s0,
                               double nu, CycleIndex idx,
                               Heading dir_b = Heading::toward_N) {
    try {
        const EngagementState e{s0, alpha0, beta0, nu, Heading::toward_N, dir_b};
        const ZPair z = compute_z_pair(e);
        return nu * (z.z_alpha0 + idx.p * kPi) - (z.z_beta0 + idx.q * kPi);
    } catch (const Error &) {
        return numeric::kUndefined;
    }
}

/// Headings alpha0 in (0, pi) of A that put it on a collision course with B
/// for speed ratio nu at cycle index idx. Empty when there is none.
inline std::vector<double> collision_headings(double beta0, double s0, double nu,
                                              CycleIndex idx,
                                              Heading dir_b = Heading::toward_N,
                                              const numeric::ScanOptions &opts = {}) {
    if (!(s0 > 0 && s0 < kPi) || !(beta0 > 0 && beta0 < kPi) || !(nu > 0))
        throw Error(ErrorKind::InvalidArgument, "collision_headings: bad input");
    auto f = [&](double a) { return heading_residual(a, beta0, s0, nu, idx, dir_b); };
    return numeric::find_roots(f, 1e-9, kPi - 1e-9, opts);
}

inline double interception_gamma(double alpha0_root, double beta0, double s0) {
    return solve_gamma(alpha0_root, beta0, s0);
}

/// Separation from the pole of B at the instant A reaches it,
/// |z_beta0 - nu z_alpha0| / nu, folded onto [0, pi] as a geodesic distance.
inline double miss_distance_at_pole(const ZPair &z, double nu) {
    if (!(nu > 0)) throw Error(ErrorKind::InvalidArgument, "nu must be positive");
    double d = std::abs(z.z_beta0 - nu * z.z_alpha0) / nu;
    d = std::fmod(d, 2 * kPi);
    return d > kPi ? 2 * kPi - d : d;
}

struct CollisionPrediction {
    double nu = 0;
    CycleIndex index;
    Pole pole = Pole::N;
    double gamma = 0;
    /// A's travel arc over its angular rate, in units R = 1, V_B = 1.
    double time_to_collision = 0;
};

/// Collision speed ratio and timing for an engagement geometry (e.nu is
/// ignored). nullopt when idx puts the objects at opposite poles.
inline std::optional<CollisionPrediction> predict_collision(const EngagementState &e,
                                                            CycleIndex idx) {
    const auto pole = collision_pole(e.dir_a, e.dir_b, idx);
    if (!pole) return std::nullopt;
    const ZPair z = compute_z_pair(e);
    CollisionPrediction c;
    c.nu = collision_speed_ratio(z, idx);
    c.index = idx;
    c.pole = *pole;
    c.gamma = solve_gamma(e.alpha0, e.beta0, e.s0);
    c.time_to_collision = (z.z_beta0 + idx.q * kPi) / c.nu;
    return c;
}

} // namespace spherecc
