// spherecc command-line application
// Subcommands: simulate, speed-ratios, headings, region, nu-range, cone.
// Exit status: 0 on success and on mathematically valid no-solution outcomes,
// 2 on input errors, 1 on other failures.
#pragma once

#include <spherecc/cli_io.hpp>
#include <spherecc/patch_predict.hpp>
#include <spherecc/sim_oracle.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

namespace spherecc::io {

struct CliOptions {
    std::string scenario;
    std::string out;
    std::string summary;
    bool degrees = false;
    bool verify = false;
    bool all_parities = false;
    int samples = 0; ///< 0 means the per-command default
    double step = 1e-4;
    double revolutions = 4;
    int p = 0, q = 0, p_max = 3, q_max = 3;
    std::optional<double> nu, rl, gamma;
    std::vector<std::string> regions;
};

namespace detail {

constexpr double kVerifyMargin = 0.05;

/// Output sink: --out file when given, otherwise the supplied stream.
class Sink {
public:
    Sink(const std::string &path, std::ostream &fallback) : os_(&fallback) {
        if (path.empty()) return;
        file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
        if (!*file_) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
        os_ = file_.get();
    }
    std::ostream &operator*() { return *os_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream *os_;
};

inline double angle_in(double v, const CliOptions &o) { return o.degrees ? v * kDeg : v; }
inline double angle_out(double v, const CliOptions &o) { return o.degrees ? v / kDeg : v; }
inline std::string angle_col(const std::string &name, const CliOptions &o) {
    return name + (o.degrees ? "_deg" : "_rad");
}

inline Scenario require_scenario(const CliOptions &o) {
    if (o.scenario.empty()) throw Error(ErrorKind::ParseError, "--scenario is required");
    return load_scenario(o.scenario);
}

inline double patch_radius(const CliOptions &o, const Scenario &sc) {
    if (o.rl) return angle_in(*o.rl, o);
    if (sc.patch_radius) return *sc.patch_radius;
    throw Error(ErrorKind::InvalidArgument, "patch radius needed (scenario or --rl)");
}

inline Json min_json(const MinSeparation &m) {
    Json j;
    j["time"] = m.time;
    j["separation_rad"] = m.separation;
    j["refined"] = m.refined;
    return j;
}

/// Minimum separation of unit-rate tracks (A at nu, B at 1) while both are
/// within a quarter turn of the pole of window idx; nullopt when they never
/// are at the same time.
inline std::optional<MinSeparation> window_check(const TrackPair &tracks, const ZPair &z,
                                                 double nu, CycleIndex idx, double step) {
    const auto w = collision_window(z, nu, 1.0, idx, kHalfPi);
    if (!w) return std::nullopt;
    return window_min_separation(tracks, *w, step);
}

inline int cmd_simulate(const CliOptions &o, std::ostream &out) {
    const Scenario sc = require_scenario(o);
    SimConfig cfg;
    cfg.step = o.step;
    cfg.max_revolutions = o.revolutions;
    const SimResult res = simulate(sc.tracks(), cfg);
    {
        Sink csv(o.out, out);
        *csv << csv_row({"time", "separation_rad"});
        for (const auto &s : res.samples) *csv << csv_row({fmt(s.time), fmt(s.separation)});
    }
    Json j;
    const MinSeparation m = min_separation(res);
    j["samples"] = res.samples.size();
    j["t_end"] = res.t_end;
    j["global_min"] = min_json(m);
    j["coincident_circles"] = res.coincident_circles;
    Json events = Json::array();
    for (const auto &e : res.pole_events) {
        Json ev;
        ev["object"] = e.object == Object::A ? "A" : "B";
        ev["pole"] = std::string(to_string(e.pole));
        ev["time"] = e.time;
        ev["separation_rad"] = e.separation;
        events.push_back(ev);
    }
    j["pole_events"] = events;
    if (!o.summary.empty()) {
        Sink s(o.summary, out);
        *s << to_json_text(j);
    } else if (!o.out.empty()) {
        out << to_json_text(j);
    }
    return 0;
}

inline int cmd_speed_ratios(const CliOptions &o, std::ostream &out) {
    const Scenario sc = require_scenario(o);
    const ZPair z = sc.z();
    const Heading da = sc.state ? sc.state->dir_a : Heading::toward_N;
    const Heading db = sc.dir_b();
    Sink csv(o.out, out);
    *csv << csv_row({"p", "q", "nu", "pole"});
    for (const auto &row : speed_ratio_grid(z, o.p_max, o.q_max)) {
        const auto pole = collision_pole(da, db, {row.p, row.q});
        if (!pole && !o.all_parities) continue;
        *csv << csv_row({std::to_string(row.p), std::to_string(row.q), fmt(row.nu),
                         pole ? std::string(to_string(*pole)) : std::string("none")});
    }
    return 0;
}

inline int cmd_headings(const CliOptions &o, std::ostream &out, std::ostream &err) {
    const Scenario sc = require_scenario(o);
    const EngagementState &e0 = sc.engagement();
    const double nu = o.nu ? *o.nu : sc.nu();
    const CycleIndex idx{o.p, o.q};
    numeric::ScanOptions scan;
    if (o.samples > 0) scan.samples = o.samples;
    // the heading equation also has roots where A and B pass opposite poles
    // together; those are not collisions
    const auto pole = collision_pole(e0.dir_a, e0.dir_b, idx);
    const auto roots = pole ? collision_headings(e0.beta0, e0.s0, nu, idx, e0.dir_b, scan)
                            : std::vector<double>{};

    Sink csv(o.out, out);
    std::vector<std::string> head{angle_col("alpha0", o), angle_col("gamma", o)};
    if (o.verify) head.push_back("sim_min_separation_rad");
    *csv << csv_row(head);
    for (double a : roots) {
        std::vector<std::string> row{fmt(angle_out(a, o)),
                                     fmt(angle_out(interception_gamma(a, e0.beta0, e0.s0), o))};
        if (o.verify) {
            EngagementState e = e0;
            e.alpha0 = a;
            e.nu = nu;
            e.dir_a = Heading::toward_N;
            const ZPair z = compute_z_pair(e);
            const double tc = (z.z_beta0 + idx.q * kPi) / nu;
            const MinSeparation m = window_min_separation(
                build_tracks(e), {std::max(0.0, tc - kVerifyMargin), tc + kVerifyMargin},
                o.step);
            row.push_back(fmt(m.separation));
        }
        *csv << csv_row(row);
    }
    if (!pole)
        err << "no solution: this (p, q) puts the objects at opposite poles\n";
    else if (roots.empty())
        err << "no solution: no heading gives a collision for this (p, q)\n";
    return 0;
}

inline RegionId parse_region(const std::string &s) {
    const auto comma = s.find(',');
    try {
        if (comma == std::string::npos) throw std::invalid_argument(s);
        std::size_t used_i = 0, used_j = 0;
        const std::string si = s.substr(0, comma), sj = s.substr(comma + 1);
        const int i = std::stoi(si, &used_i);
        const int j = std::stoi(sj, &used_j);
        if (used_i != si.size() || used_j != sj.size()) throw std::invalid_argument(s);
        if ((i + j) % 2 != 0)
            throw Error(ErrorKind::InvalidArgument, "--region i,j needs i + j even");
        return {i, j};
    } catch (const std::logic_error &) {
        throw Error(ErrorKind::ParseError, "--region expects i,j integers, got " + s);
    }
}

inline int cmd_region(const CliOptions &o, std::ostream &out) {
    if (!o.gamma || !o.rl) throw Error(ErrorKind::InvalidArgument, "region needs --gamma and --rl");
    const LethalGeometry g(angle_in(*o.gamma, o), angle_in(*o.rl, o));
    std::vector<RegionId> ids;
    for (const auto &s : o.regions) ids.push_back(parse_region(s));
    if (ids.empty()) ids.push_back({0, 0});
    const int samples = o.samples > 0 ? o.samples : 256;
    Sink csv(o.out, out);
    *csv << csv_row({"region_i", "region_j", "branch", angle_col("r1", o), angle_col("r2", o)});
    for (const RegionId id : ids)
        for (const auto &v : grid_region_boundary(g, id, samples))
            *csv << csv_row({std::to_string(id.i), std::to_string(id.j),
                             std::string(to_string(v.branch)), fmt(angle_out(v.r1, o)),
                             fmt(angle_out(v.r2, o))});
    return 0;
}

inline Json tangency_certificate(double nu, double r1, Branch br, const LethalGeometry &g) {
    const double r2 = region_boundary_r2(r1, g, br);
    const BoundarySlope s = boundary_slope(r1, r2, g);
    Json j;
    j["nu"] = nu;
    j["branch"] = std::string(to_string(br));
    j["r1_rad"] = r1;
    j["r2_rad"] = r2;
    j["boundary_residual"] = proximity_residual(r1, r2, g);
    j["slope"] = s.value();
    j["inverse_nu"] = 1.0 / nu;
    return j;
}

inline int cmd_nu_range(const CliOptions &o, std::ostream &out) {
    const Scenario sc = require_scenario(o);
    const double rl = patch_radius(o, sc);
    const ZPair z = sc.z();
    const double gamma = sc.gamma();
    const LethalGeometry g(gamma, rl);
    const CycleIndex idx{o.p, o.q};
    Json j;
    j["p"] = idx.p;
    j["q"] = idx.q;
    j["gamma_rad"] = gamma;
    j["patch_radius_rad"] = rl;
    Sink sink(o.out, out);
    try {
        const SpeedRatioRange r = speed_ratio_range(z, g, idx, o.samples > 0 ? o.samples : 4096);
        j["status"] = "ok";
        j["nu_min"] = r.nu_min;
        j["nu_max"] = r.nu_max;
        j["open_below"] = r.open_below;
        j["open_above"] = r.open_above;
        Json tangency = Json::array();
        if (!r.open_below)
            tangency.push_back(tangency_certificate(r.nu_min, r.r1_at_min, r.branch_at_min, g));
        if (!r.open_above)
            tangency.push_back(tangency_certificate(r.nu_max, r.r1_at_max, r.branch_at_max, g));
        j["tangency"] = tangency;
        if (o.verify) {
            Json v = Json::array();
            std::vector<std::pair<const char *, double>> cases;
            cases.emplace_back("interior", r.open_above ? 2 * r.nu_min + 1
                                                        : 0.5 * (r.nu_min + r.nu_max));
            if (!r.open_below) cases.emplace_back("below", 0.99 * r.nu_min);
            if (!r.open_above) cases.emplace_back("above", 1.01 * r.nu_max);
            for (auto [label, nu] : cases) {
                const TrackPair t = tracks_from_pole_distances(z.z_alpha0, z.z_beta0, gamma,
                                                               nu, 1.0, sc.dir_b());
                const auto m = window_check(t, z, nu, idx, o.step);
                Json c;
                c["case"] = label;
                c["nu"] = nu;
                c["min_separation_rad"] = m ? Json(m->separation) : Json(nullptr);
                c["collides"] = m && m->separation <= rl + 1e-6;
                v.push_back(c);
            }
            j["verify"] = v;
        }
    } catch (const Error &e) {
        if (e.kind() != ErrorKind::EmptyRange && e.kind() != ErrorKind::InsideRegion) throw;
        j["status"] = e.kind() == ErrorKind::EmptyRange ? "empty_range" : "inside_region";
        j["message"] = e.what();
    }
    *sink << to_json_text(j);
    return 0;
}

inline int cmd_cone(const CliOptions &o, std::ostream &out) {
    const Scenario sc = require_scenario(o);
    const EngagementState &e0 = sc.engagement();
    const double rl = patch_radius(o, sc);
    const double nu = o.nu ? *o.nu : sc.nu();
    const CycleIndex idx{o.p, o.q};
    numeric::ScanOptions scan{1024, 1e-12};
    if (o.samples > 0) scan.samples = o.samples;
    Json j;
    j["nu"] = nu;
    j["p"] = idx.p;
    j["q"] = idx.q;
    j["patch_radius_rad"] = rl;
    Sink sink(o.out, out);
    try {
        const CollisionCone cone = collision_cone(e0.beta0, e0.s0, nu, rl, idx, e0.dir_b, scan);
        j["status"] = cone.intervals.empty() ? "empty_cone" : "ok";
        Json ivs = Json::array();
        for (const auto &iv : cone.intervals) {
            Json k;
            k[angle_col("alpha_lo", o)] = angle_out(iv.alpha_lo, o);
            k[angle_col("alpha_hi", o)] = angle_out(iv.alpha_hi, o);
            k[angle_col("gamma_lo", o)] = angle_out(iv.gamma_lo, o);
            k[angle_col("gamma_hi", o)] = angle_out(iv.gamma_hi, o);
            if (o.verify) {
                auto check = [&](double a) {
                    EngagementState e = e0;
                    e.alpha0 = a;
                    e.nu = nu;
                    e.dir_a = Heading::toward_N;
                    return window_check(build_tracks(e), compute_z_pair(e), nu, idx, o.step);
                };
                Json cert = Json::array();
                for (auto [edge, a, is_boundary] :
                     {std::tuple{"lo", iv.alpha_lo, iv.lo_is_boundary},
                      std::tuple{"hi", iv.alpha_hi, iv.hi_is_boundary}}) {
                    if (!is_boundary) continue;
                    const auto m = check(a);
                    Json c;
                    c["edge"] = edge;
                    c["min_separation_rad"] = m ? Json(m->separation) : Json(nullptr);
                    c["grazing_error"] = m ? Json(std::abs(m->separation - rl)) : Json(nullptr);
                    cert.push_back(c);
                }
                const auto mid = check(0.5 * (iv.alpha_lo + iv.alpha_hi));
                k["grazing"] = cert;
                k["midpoint_min_separation_rad"] = mid ? Json(mid->separation) : Json(nullptr);
            }
            ivs.push_back(k);
        }
        j["intervals"] = ivs;
    } catch (const Error &e) {
        if (e.kind() != ErrorKind::EmptyCone) throw;
        j["status"] = "empty_cone";
        j["intervals"] = Json::array();
    }
    *sink << to_json_text(j);
    return 0;
}

inline void add_common(CLI::App *sub, CliOptions &o, bool needs_scenario) {
    if (needs_scenario) sub->add_option("--scenario", o.scenario, "scenario JSON file");
    sub->add_option("--out", o.out, "output file (default stdout)");
    sub->add_flag("--degrees", o.degrees, "angle flags and angle outputs in degrees");
    sub->add_option("--samples", o.samples, "scan or contour samples");
    sub->add_option("--step", o.step, "simulation arc step");
}

} // namespace detail

/// Entry point shared by the executable and the tests.
inline int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"spherecc: collision prediction for objects on great circles"};
    app.require_subcommand(1);
    CliOptions o;

    auto *sim = app.add_subcommand("simulate", "sampled separation and pole events");
    detail::add_common(sim, o, true);
    sim->add_option("--summary", o.summary, "summary JSON file");
    sim->add_option("--revolutions", o.revolutions, "span in revolutions of the faster object");

    auto *sr = app.add_subcommand("speed-ratios", "collision speed ratio grid");
    detail::add_common(sr, o, true);
    sr->add_option("--p-max", o.p_max);
    sr->add_option("--q-max", o.q_max);
    sr->add_flag("--all-parities", o.all_parities, "keep rows with opposite-pole parities");

    auto *hd = app.add_subcommand("headings", "collision headings of A for a speed ratio");
    detail::add_common(hd, o, true);
    hd->add_option("--nu", o.nu);
    hd->add_option("--p", o.p);
    hd->add_option("--q", o.q);
    hd->add_flag("--verify", o.verify, "confirm each root by simulation");

    auto *rg = app.add_subcommand("region", "proximity region contours");
    detail::add_common(rg, o, false);
    rg->add_option("--gamma", o.gamma)->required();
    rg->add_option("--rl", o.rl)->required();
    rg->add_option("--region", o.regions, "region copy i,j (repeatable)");

    auto *nr = app.add_subcommand("nu-range", "speed ratios that reach the patch");
    detail::add_common(nr, o, true);
    nr->add_option("--rl", o.rl);
    nr->add_option("--p", o.p);
    nr->add_option("--q", o.q);
    nr->add_flag("--verify", o.verify, "simulate interior and exterior ratios");

    auto *cn = app.add_subcommand("cone", "collision cone of headings");
    detail::add_common(cn, o, true);
    cn->add_option("--nu", o.nu);
    cn->add_option("--rl", o.rl);
    cn->add_option("--p", o.p);
    cn->add_option("--q", o.q);
    cn->add_flag("--verify", o.verify, "grazing certificates by simulation");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (*sim) return detail::cmd_simulate(o, out);
        if (*sr) return detail::cmd_speed_ratios(o, out);
        if (*hd) return detail::cmd_headings(o, out, err);
        if (*rg) return detail::cmd_region(o, out);
        if (*nr) return detail::cmd_nu_range(o, out);
        if (*cn) return detail::cmd_cone(o, out);
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        const bool input = e.kind() == ErrorKind::ParseError ||
                           e.kind() == ErrorKind::InvalidArgument;
        return input ? 2 : 1;
    }
    return 1;
}

} // namespace spherecc::io
