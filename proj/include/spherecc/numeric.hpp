// spherecc numeric kernels
// Bracketing root finders and golden-section extremization shared by the
// prediction modules and the simulation oracle.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

namespace spherecc::numeric {

/// Scan/refine settings for 1-D root and extremum searches.
struct ScanOptions {
    int samples = 4096;          ///< dense scan density over the search interval
    double residual_tol = 1e-12; ///< accepted |f| at a root
};

/// Scalar function value that may be undefined at a candidate (outside the
/// geometric domain). NaN is used as the "undefined" marker so callers can
/// return plain doubles from lambdas.
inline constexpr double kUndefined = std::numeric_limits<double>::quiet_NaN();

inline bool defined(double v) { return std::isfinite(v); }

/// Bisection on a sign-changing bracket. Runs until the bracket collapses to
/// adjacent doubles or the residual drops below tol; returns the endpoint with
/// the smaller |f|.
template <typename F>
double bisect(F &&f, double lo, double hi, double f_lo, double tol) {
    double best = std::abs(f_lo) <= std::abs(f(hi)) ? lo : hi;
    double f_best = f(best);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double f_mid = f(mid);
        if (!defined(f_mid)) break;
        if (std::abs(f_mid) < std::abs(f_best)) {
            best = mid;
            f_best = f_mid;
        }
        if (f_mid == 0.0 || std::abs(f_mid) < tol * 1e-3) break;
        if ((f_mid < 0) == (f_lo < 0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return best;
}

/// Golden-section minimization of a unimodal function on [lo, hi] down to a
/// bracket width of tol.
template <typename F>
double golden_section_min(F &&f, double lo, double hi, double tol) {
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    while (hi - lo > tol) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
        if (x1 <= lo || x2 >= hi) break;
    }
    return f1 <= f2 ? x1 : x2;
}

/// All roots of f on [lo, hi]: sign changes between consecutive defined samples
/// are bisected; local minima of |f| without a sign change are refined by
/// golden section to catch double (tangential) roots. A candidate is kept only
/// if its residual is below opts.residual_tol, which rejects jumps across
/// discontinuities.
template <typename F>
std::vector<double> find_roots(F &&f, double lo, double hi,
                               const ScanOptions &opts = {}) {
    std::vector<double> roots;
    if (!(hi > lo) || opts.samples < 2) return roots;

    const int n = opts.samples;
    std::vector<double> xs(n + 1), fs(n + 1);
    for (int k = 0; k <= n; ++k) {
        xs[k] = lo + (hi - lo) * static_cast<double>(k) / n;
        fs[k] = f(xs[k]);
    }

    auto accept = [&](double x) {
        const double fx = f(x);
        if (!defined(fx) || std::abs(fx) > opts.residual_tol) return;
        const double merge = (hi - lo) / n * 1e-3;
        for (double r : roots)
            if (std::abs(r - x) < merge) return;
        roots.push_back(x);
    };

    for (int k = 0; k <= n; ++k) {
        if (!defined(fs[k])) continue;
        if (fs[k] == 0.0) {
            accept(xs[k]);
            continue;
        }
        if (k < n && defined(fs[k + 1]) && fs[k + 1] != 0.0 &&
            (fs[k] < 0) != (fs[k + 1] < 0)) {
            accept(bisect(f, xs[k], xs[k + 1], fs[k], opts.residual_tol));
            continue;
        }
        // |f| dip that does not cross zero: possible double root.
        if (k > 0 && k < n && defined(fs[k - 1]) && defined(fs[k + 1]) &&
            (fs[k - 1] < 0) == (fs[k] < 0) && (fs[k + 1] < 0) == (fs[k] < 0) &&
            std::abs(fs[k]) <= std::abs(fs[k - 1]) &&
            std::abs(fs[k]) <= std::abs(fs[k + 1])) {
            auto abs_f = [&](double x) {
                const double v = f(x);
                return defined(v) ? std::abs(v)
                                  : std::numeric_limits<double>::infinity();
            };
            const double x = golden_section_min(abs_f, xs[k - 1], xs[k + 1],
                                                (hi - lo) * 1e-16 + 1e-15);
            accept(x);
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

/// Location and value of an extremum found by dense sampling plus
/// golden-section refinement.
struct Extremum {
    double x;
    double value;
};

/// Global minimum of f on [lo, hi] (undefined samples ignored). Each sampled
/// local minimum is refined to tol; std::nullopt when f is nowhere defined.
template <typename F>
std::optional<Extremum> global_min(F &&f, double lo, double hi, int samples,
                                   double tol) {
    std::vector<double> xs(samples + 1), fs(samples + 1);
    for (int k = 0; k <= samples; ++k) {
        xs[k] = lo + (hi - lo) * static_cast<double>(k) / samples;
        fs[k] = f(xs[k]);
    }
    std::optional<Extremum> best;
    auto consider = [&](double x, double v) {
        if (defined(v) && (!best || v < best->value)) best = Extremum{x, v};
    };
    auto guarded = [&](double x) {
        const double v = f(x);
        return defined(v) ? v : std::numeric_limits<double>::infinity();
    };
    for (int k = 0; k <= samples; ++k) {
        if (!defined(fs[k])) continue;
        consider(xs[k], fs[k]);
        const bool left_ok = k == 0 || !defined(fs[k - 1]) || fs[k] <= fs[k - 1];
        const bool right_ok =
            k == samples || !defined(fs[k + 1]) || fs[k] <= fs[k + 1];
        if (left_ok && right_ok) {
            const double a = xs[std::max(k - 1, 0)];
            const double b = xs[std::min(k + 1, samples)];
            const double x = golden_section_min(guarded, a, b, tol);
            consider(x, f(x));
        }
    }
    return best;
}

} // namespace spherecc::numeric
