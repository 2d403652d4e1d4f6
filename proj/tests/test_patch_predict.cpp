#include "oracles.hpp"

#include <spherecc/patch_predict.hpp>

#include <gtest/gtest.h>

using namespace spherecc;

namespace {

constexpr double kDeg = kPi / 180;

LethalGeometry random_geometry(oracle::Rng &rng) {
    const double gamma = rng.uniform(0.3, kPi - 0.3);
    const double rl = rng.uniform(0.02, 0.9 * std::min(gamma, kPi - gamma));
    return LethalGeometry(gamma, rl);
}

/// Largest |r1| at which some r2 satisfies the proximity condition, by
/// bisection on the column maximum. The residual is a shifted cosine in r2,
/// so a ternary search finds that maximum.
double scanned_extent(const LethalGeometry &g) {
    auto column_max = [&](double r1) {
        double lo = -kHalfPi, hi = kHalfPi;
        for (int it = 0; it < 200; ++it) {
            const double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
            (proximity_residual(r1, m1, g) < proximity_residual(r1, m2, g) ? lo : hi) =
                proximity_residual(r1, m1, g) < proximity_residual(r1, m2, g) ? m1 : m2;
        }
        return proximity_residual(r1, 0.5 * (lo + hi), g);
    };
    double lo = 0, hi = kHalfPi;
    if (column_max(hi) >= 0) return hi;
    for (int it = 0; it < 50; ++it) {
        const double mid = 0.5 * (lo + hi);
        (column_max(mid) >= 0 ? lo : hi) = mid;
    }
    return lo;
}

double shoelace(const std::vector<BoundaryVertex> &poly) {
    double a = 0;
    for (std::size_t k = 0; k + 1 < poly.size(); ++k)
        a += poly[k].r1 * poly[k + 1].r2 - poly[k + 1].r1 * poly[k].r2;
    return 0.5 * a;
}

} // namespace

TEST(LethalGeometry, Validation) {
    EXPECT_THROW(LethalGeometry(0.0, 0.1), Error);
    EXPECT_THROW(LethalGeometry(1.0, 0.0), Error);
    EXPECT_THROW(LethalGeometry(1.0, kHalfPi), Error);
    const LethalGeometry g(1.0, 0.2);
    EXPECT_DOUBLE_EQ(g.a(), std::cos(1.0));
    EXPECT_DOUBLE_EQ(g.b(), std::cos(0.2));
}

TEST(Region, ExtentThirtyTwenty) {
    const LethalGeometry g(30 * kDeg, 20 * kDeg);
    const Interval ext = region_r1_extent(g);
    EXPECT_NEAR(ext.hi / kDeg, 43.16, 0.01);
    EXPECT_NEAR(ext.hi, 0.7533, 5e-5);
    EXPECT_DOUBLE_EQ(ext.lo, -ext.hi);
    EXPECT_NEAR(ext.hi, scanned_extent(g), 1e-6);
}

TEST(Region, FullSpanWhenPatchCoversAngle) {
    for (double rl : {30.0, 40.0, 80.0}) {
        const LethalGeometry g(30 * kDeg, rl * kDeg);
        EXPECT_DOUBLE_EQ(region_half_width(g), kHalfPi);
    }
}

TEST(Region, ExtentMatchesScanOnRandomGeometries) {
    oracle::Rng rng(41);
    for (int k = 0; k < 30; ++k) {
        const LethalGeometry g = random_geometry(rng);
        EXPECT_NEAR(region_half_width(g), scanned_extent(g), 1e-6);
    }
}

TEST(Region, BoundaryPointsSatisfyEquality) {
    const LethalGeometry g(30 * kDeg, 20 * kDeg);
    const auto poly = grid_region_boundary(g, {0, 0}, 2000);
    for (const auto &v : poly) EXPECT_LT(std::abs(proximity_residual(v.r1, v.r2, g)), 1e-12);
    oracle::Rng rng(42);
    for (int k = 0; k < 50; ++k) {
        const LethalGeometry h = random_geometry(rng);
        for (const auto &v : grid_region_boundary(h, {0, 0}, 200))
            EXPECT_LT(std::abs(proximity_residual(v.r1, v.r2, h)), 1e-12);
    }
}

TEST(Region, PolylineIsClosedCounterClockwiseAndJoined) {
    const LethalGeometry g(30 * kDeg, 20 * kDeg);
    const auto poly = grid_region_boundary(g, {0, 0}, 64);
    EXPECT_EQ(poly.size(), 2u * 33 + 1);
    EXPECT_DOUBLE_EQ(poly.front().r1, poly.back().r1);
    EXPECT_DOUBLE_EQ(poly.front().r2, poly.back().r2);
    EXPECT_GT(shoelace(poly), 0);
    // branches meet at the extent endpoints
    EXPECT_NEAR(poly[32].r2, poly[33].r2, 1e-9);
    EXPECT_THROW(grid_region_boundary(g, {0, 0}, 4), Error);
}

TEST(Region, CopiesAreShiftedByHalfTurns) {
    const LethalGeometry g(50 * kDeg, 10 * kDeg);
    const auto base = grid_region_boundary(g, {0, 0}, 32);
    int regions = 0;
    for (int i = -1; i <= 2; ++i)
        for (int j = -1; j <= 2; ++j) {
            if ((i + j) % 2 != 0) continue;
            const auto copy = grid_region_boundary(g, {i, j}, 32);
            for (std::size_t k = 0; k < base.size(); ++k) {
                EXPECT_NEAR(copy[k].r1 - base[k].r1, i * kPi, 1e-12);
                EXPECT_NEAR(copy[k].r2 - base[k].r2, j * kPi, 1e-12);
                EXPECT_GE(proximity_residual(copy[k].r1, copy[k].r2, g), -1e-12);
            }
            ++regions;
        }
    EXPECT_EQ(regions, 8);
}

TEST(Region, OutsideExtentThrows) {
    const LethalGeometry g(30 * kDeg, 20 * kDeg);
    try {
        region_boundary_r2(0.8, g, Branch::plus);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::OutOfExtent);
    }
}

TEST(Region, MembershipMatchesBoundaryBracket) {
    oracle::Rng rng(43);
    const LethalGeometry g(70 * kDeg, 15 * kDeg);
    const double w = region_half_width(g);
    for (int k = 0; k < 2000; ++k) {
        const double r1 = rng.uniform(-w, w), r2 = rng.uniform(-1.0, 1.0);
        const double lo = region_boundary_r2(r1, g, Branch::minus);
        const double hi = region_boundary_r2(r1, g, Branch::plus);
        if (std::abs(r2 - lo) < 1e-9 || std::abs(r2 - hi) < 1e-9) continue;
        EXPECT_EQ(proximity_holds(r1, r2, g), r2 > lo && r2 < hi);
    }
}

TEST(Trajectory, LinePassesThroughInitialPoint) {
    const ZPair z{0, 0, 1.0, 0.4};
    const Line l = trajectory_line(z, 1.7, {2, 1});
    const auto init = initial_point(z, {2, 1});
    EXPECT_NEAR(l.at(init[0]), init[1], 1e-14);
    EXPECT_DOUBLE_EQ(l.slope, 1 / 1.7);
    EXPECT_THROW(trajectory_line(z, 0.0, {0, 0}), Error);
}

TEST(Trajectory, PointCollisionRatioHasRoots) {
    oracle::Rng rng(44);
    for (int k = 0; k < 30; ++k) {
        const LethalGeometry g = random_geometry(rng);
        const ZPair z{0, 0, rng.uniform(0.5, 3.0), rng.uniform(0.5, 3.0)};
        const int p = rng.integer(0, 2);
        const CycleIndex idx{p, p + 2 * rng.integer(0, 1)};
        const double nu = collision_speed_ratio(z, idx);
        EXPECT_EQ(implicit_collision_roots(z, nu, g, idx).size(), 2u);
    }
}

TEST(SpeedRatioRange, IntervalCorrectness) {
    oracle::Rng rng(45);
    for (int k = 0; k < 30; ++k) {
        const LethalGeometry g = random_geometry(rng);
        const ZPair z{0, 0, rng.uniform(0.5, 3.0), rng.uniform(0.5, 3.0)};
        const int p = rng.integer(0, 2);
        const CycleIndex idx{p, p + 2 * rng.integer(0, 1)};
        const auto init = initial_point(z, idx);
        if (proximity_holds(init[0], init[1], g)) continue;
        const SpeedRatioRange r = speed_ratio_range(z, g, idx, 2048);
        EXPECT_LT(r.nu_min, r.nu_max);
        // an open end means the initial condition sits inside the band swept
        // by one object alone
        EXPECT_EQ(r.open_below, std::abs(init[0]) < region_half_width(g) &&
                                    region_boundary_r2(init[0], g, Branch::minus) < init[1]);
        if (r.open_below || r.open_above) {
            const double nu = r.open_above ? 2 * r.nu_min + 1 : 0.5 * r.nu_max;
            EXPECT_TRUE(trajectory_enters_region(z, nu, g, idx));
            if (r.open_below) {
                EXPECT_TRUE(trajectory_enters_region(z, 1e-6, g, idx));
            }
            if (r.open_above) {
                EXPECT_TRUE(trajectory_enters_region(z, 1e6, g, idx));
            }
            continue;
        }
        const double point_nu = collision_speed_ratio(z, idx);
        EXPECT_GT(point_nu, r.nu_min);
        EXPECT_LT(point_nu, r.nu_max);
        for (int s = 1; s < 10; ++s) {
            const double nu = r.nu_min + (r.nu_max - r.nu_min) * s / 10.0;
            EXPECT_TRUE(trajectory_enters_region(z, nu, g, idx)) << nu;
        }
        EXPECT_FALSE(trajectory_enters_region(z, 1.01 * r.nu_max, g, idx));
        EXPECT_FALSE(trajectory_enters_region(z, 0.99 * r.nu_min, g, idx));
        EXPECT_TRUE(implicit_collision_roots(z, 0.5 * (r.nu_min + r.nu_max), g, idx).size() >= 1u);
        EXPECT_TRUE(implicit_collision_roots(z, 1.01 * r.nu_max, g, idx).empty());
    }
}

TEST(SpeedRatioRange, ExtremesAreTangentLines) {
    const LethalGeometry g(30 * kDeg, 20 * kDeg);
    const ZPair z{0, 0, 1.0, 1.2};
    const SpeedRatioRange r = speed_ratio_range(z, g, {1, 1});
    for (auto [nu, r1, br] : {std::tuple{r.nu_min, r.r1_at_min, r.branch_at_min},
                              std::tuple{r.nu_max, r.r1_at_max, r.branch_at_max}}) {
        const double r2 = region_boundary_r2(r1, g, br);
        EXPECT_NEAR(boundary_slope(r1, r2, g).value(), 1 / nu, 1e-6);
        EXPECT_NEAR(speed_ratio_for_r1(r1, z, g, {1, 1}, br), nu, 1e-12);
    }
}

TEST(SpeedRatioRange, Errors) {
    const LethalGeometry g(30 * kDeg, 20 * kDeg);
    try {
        speed_ratio_range(ZPair{0, 0, 0.05, 0.05}, g, {0, 0});
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::InsideRegion);
    }
    try {
        speed_ratio_range(ZPair{0, 0, -2.0, -2.0}, g, {0, 0});
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::EmptyRange);
    }
}

TEST(SpeedRatioForR1, DivisionDegenerate) {
    const LethalGeometry g(30 * kDeg, 20 * kDeg);
    const double r2 = region_boundary_r2(0.1, g, Branch::plus);
    try {
        speed_ratio_for_r1(0.1, ZPair{0, 0, r2, 2.0}, g, {0, 0}, Branch::plus);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::DivisionDegenerate);
    }
}

TEST(Tangency, CertificatesOnRandomCases) {
    oracle::Rng rng(46);
    for (int k = 0; k < 100; ++k) {
        const LethalGeometry g = random_geometry(rng);
        const double nu = std::exp(rng.uniform(std::log(0.2), std::log(5.0)));
        const auto pts = tangency_points(nu, g);
        EXPECT_EQ(pts[0].branch, Branch::plus);
        EXPECT_EQ(pts[1].branch, Branch::minus);
        for (const auto &p : pts) {
            EXPECT_LT(std::abs(proximity_residual(p.r1_bar, p.r2_bar, g)), 1e-10);
            EXPECT_NEAR(boundary_slope(p.r1_bar, p.r2_bar, g).value(), 1 / nu, 1e-8);
            EXPECT_NEAR(p.m_value, tangency_m(nu, g.gamma()), 1e-6 * (1 + std::abs(p.m_value)));
        }
        // central symmetry of the region
        EXPECT_NEAR(pts[0].r1_bar, -pts[1].r1_bar, 1e-9);
        EXPECT_TRUE(corrected_closed_form_check(nu, g, pts).agrees);
    }
}

TEST(Tangency, EqualSpeedsTouchOnAntiDiagonal) {
    const LethalGeometry g(60 * kDeg, 10 * kDeg);
    for (const auto &p : tangency_points(1.0, g)) EXPECT_NEAR(p.r2_bar, -p.r1_bar, 1e-9);
}

TEST(Tangency, PrintedClosedFormIsReportedNotTrusted) {
    // The printed M = (nu - cos g)/(nu - 1) does not describe the numeric
    // tangency; the check reports that instead of hiding it.
    const LethalGeometry g(30 * kDeg, 20 * kDeg);
    int evaluated = 0, agreed = 0;
    for (double nu : {0.3, 0.6, 1.3, 2.0, 4.0}) {
        const auto pts = tangency_points(nu, g);
        const auto c = printed_closed_form_check(nu, g, pts);
        evaluated += c.evaluated;
        agreed += c.agrees;
        if (!c.agrees) {
            EXPECT_GT(c.discrepancy, 1e-8);
        }
        const double printed_m = (nu - g.a()) / (nu - 1);
        EXPECT_GT(std::abs(pts[0].m_value - printed_m), 1e-3);
    }
    EXPECT_EQ(agreed, 0) << evaluated;
}

TEST(Cone, TinyPatchCollapsesOntoHeadingRoots) {
    const double beta0 = kPi / 3, s0 = kPi / 6, nu = 1.4;
    const CycleIndex idx{0, 0};
    const auto roots = collision_headings(beta0, s0, nu, idx);
    ASSERT_FALSE(roots.empty());
    const CollisionCone cone = collision_cone(beta0, s0, nu, 1e-6, idx);
    ASSERT_EQ(cone.intervals.size(), roots.size());
    for (std::size_t k = 0; k < roots.size(); ++k) {
        const auto &iv = cone.intervals[k];
        EXPECT_NEAR(0.5 * (iv.alpha_lo + iv.alpha_hi), roots[k], 1e-5);
        EXPECT_LT(iv.alpha_hi - iv.alpha_lo, 1e-4);
    }
}

TEST(Cone, ContainsPointCollisionHeading) {
    const double beta0 = 1.0, s0 = 0.8, nu = 1.2, rl = 0.1;
    const auto roots = collision_headings(beta0, s0, nu, {0, 0});
    const CollisionCone cone = collision_cone(beta0, s0, nu, rl, {0, 0});
    for (double r : roots) {
        bool inside = false;
        for (const auto &iv : cone.intervals) inside |= iv.alpha_lo < r && r < iv.alpha_hi;
        EXPECT_TRUE(inside) << r;
    }
    for (double b : cone.boundaries) {
        const auto h = cone_offsets(b, beta0, s0, nu, rl, {0, 0});
        EXPECT_TRUE(std::abs(h[0]) < 1e-12 || std::abs(h[1]) < 1e-12);
    }
}

TEST(Cone, EmptyConeIsAnError) {
    try {
        collision_cone(kPi / 3, kPi / 6, 3.6, kPi / 9, {3, 0});
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::EmptyCone);
    }
}
