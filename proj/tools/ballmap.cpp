// ballmap - cycle enumeration and square-root obstruction for Hamiltonian
// ball maps. Subcommands: construct, cycles, obstruct, verify, sweep.

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>

#include "ballmap/report.hpp"
#include "ballmap/sampling.hpp"

namespace {

using namespace ballmap;

constexpr int kExitOk = 0;
constexpr int kExitInvalidConfig = 2;
constexpr int kExitInconclusive = 3;
constexpr int kExitNumericalFailure = 4;

struct CommonFlags {
    std::string config_path;
    std::string out_path;
    std::string csv_path;
    std::uint64_t seed = 0;
    int grid = 0;
    int order = 0;
    std::string map_name;
    int samples = -1;
    // params overrides
    int n = 0;
    double radius = 0.0;
    int k = 0;
    double delta = 0.0;
    double epsilon = 0.0;
    double step = 0.0;
    double newton_tol = 0.0;
    double dedup_radius = 0.0;
};

void add_common_options(CLI::App* sub, CommonFlags& f) {
    sub->add_option("--config", f.config_path, "configuration file (key = value; [command] sections)");
    sub->add_option("--out", f.out_path, "output report path ('-' for stdout)");
    sub->add_option("--csv", f.csv_path, "optional CSV export path");
    sub->add_option("--seed", f.seed, "RNG seed recorded in reports");
    sub->add_option("--grid", f.grid, "grid resolution per real dimension");
    sub->add_option("--order", f.order, "cycle order (default 2k)");
    sub->add_option("--map", f.map_name, "map variant: phi | phi2 | flow_h | control");
    sub->add_option("--samples", f.samples, "sample count for checks");
    sub->add_option("--n", f.n, "complex dimension N");
    sub->add_option("--radius", f.radius, "ball radius R");
    sub->add_option("--k", f.k, "cycle parameter k");
    sub->add_option("--delta", f.delta, "outer-band angular rate");
    sub->add_option("--epsilon", f.epsilon, "perturbation strength");
    sub->add_option("--step", f.step, "integrator step");
    sub->add_option("--newton-tol", f.newton_tol, "Newton residual tolerance");
    sub->add_option("--dedup", f.dedup_radius, "deduplication radius");
}

RunConfig resolve_config(const CLI::App* sub, const CommonFlags& f, const std::string& command) {
    RunConfig cfg = load_run_config(f.config_path, command);
    if (sub->count("--out")) cfg.out_path = f.out_path;
    if (sub->count("--csv")) cfg.csv_path = f.csv_path;
    if (sub->count("--seed")) cfg.seed = f.seed;
    if (sub->count("--grid")) {
        cfg.grid = f.grid;
        cfg.verify_grid = f.grid;
        cfg.sweep_grid = f.grid;
    }
    if (sub->count("--order")) cfg.order = f.order;
    if (sub->count("--map")) cfg.map_name = f.map_name;
    if (sub->count("--samples")) {
        cfg.samples = f.samples;
        cfg.sweep_samples = f.samples;
    }
    if (sub->count("--n")) cfg.params.N = f.n;
    if (sub->count("--radius")) cfg.params.R = f.radius;
    if (sub->count("--k")) cfg.params.k = f.k;
    if (sub->count("--delta")) cfg.params.delta = f.delta;
    if (sub->count("--epsilon")) cfg.params.epsilon = f.epsilon;
    if (sub->count("--step")) cfg.params.integrator_step = f.step;
    if (sub->count("--newton-tol")) cfg.params.newton_tol = f.newton_tol;
    if (sub->count("--dedup")) cfg.params.dedup_radius = f.dedup_radius;
    return cfg;
}

MapHandle select_map(const RunConfig& cfg) {
    if (cfg.map_name == "phi") return make_phi_map(cfg.params);
    if (cfg.map_name == "phi2") return make_phi_squared_map(cfg.params);
    if (cfg.map_name == "flow_h") return make_flow_h_map(cfg.params, 1.0);
    if (cfg.map_name == "control") return make_control_phi_map(cfg.params);
    throw std::invalid_argument("unknown map '" + cfg.map_name + "' (expected phi | phi2 | flow_h | control)");
}

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

int cmd_construct(const RunConfig& cfg) {
    cfg.params.validate();
    const Params& p = cfg.params;
    const Profile profile = make_rho(p);
    const Cutoff cutoff = make_beta(p);

    const double cap = p.theta_rate_cap();
    std::printf("pi/(2k)        = %.17g\n", cap);
    std::printf("epsilon_max    = %.17g  (epsilon = %.17g)\n", p.epsilon_max(), p.epsilon);
    std::printf("rho'(R^2/2)    = %.17g\n", profile.slope(0.5 * p.R2()));
    std::printf("rho' floor     = %.17g on [8R^2/9, R^2]\n", profile.slope(0.9 * p.R2()));
    std::printf("beta plateaus  = 1 on [%.6g, %.6g], 0 outside (%.6g, %.6g)\n", cutoff.flat_lo(),
                cutoff.flat_hi(), cutoff.support_lo(), cutoff.support_hi());

    Json d_points = Json::array();
    std::vector<BallPoint> d_list;
    const double r = std::sqrt(0.5) * p.R;
    std::printf("D (2k = %d points, |z_N| = %.17g):\n", 2 * p.k, r);
    for (int j = 0; j < 2 * p.k; ++j) {
        PolarLast pl;
        pl.head.assign(static_cast<std::size_t>(p.N - 1), Complex{0.0, 0.0});
        pl.ell = 0.5 * p.R2();
        pl.theta = j * std::numbers::pi / p.k;
        const BallPoint z = pl.to_point();
        d_list.push_back(z);
        d_points.push_back(point_to_json(z));
        std::printf("  theta = %2d*pi/%d  ->  (%.12g, %.12g)\n", j, p.k, z.coords.back().real(),
                    z.coords.back().imag());
    }

    if (!cfg.out_path.empty()) {
        Json report = make_report("construct", cfg);
        report["results"] = Json{{"pi_over_2k", cap},
                                 {"epsilon_max", p.epsilon_max()},
                                 {"profile", Json{{"peak", profile.peak()},
                                                  {"floor", profile.floor()},
                                                  {"center", profile.center()},
                                                  {"half_width", profile.half_width()}}},
                                 {"cutoff", Json{{"support", {cutoff.support_lo(), cutoff.support_hi()}},
                                                 {"flat", {cutoff.flat_lo(), cutoff.flat_hi()}}}},
                                 {"d_points", d_points}};
        write_json_atomic(cfg.out_path, report);
    }
    if (!cfg.csv_path.empty()) write_points_csv_atomic(cfg.csv_path, d_list, p.N);
    return kExitOk;
}

int cmd_cycles(const RunConfig& cfg) {
    cfg.params.validate();
    const MapHandle map = select_map(cfg);
    const int order = cfg.resolved_order();
    const auto start = std::chrono::steady_clock::now();

    EnumerationLog log;
    const std::vector<CycleClass> classes = cycle_space(map, order, cfg.params, cfg.grid, &log);

    Json report = make_report("cycles", cfg);
    Json class_array = Json::array();
    Json family_array = Json::array();
    std::vector<BallPoint> all_points;
    std::size_t isolated = 0;
    for (const CycleClass& cls : classes) {
        (cls.non_isolated ? family_array : class_array).push_back(class_to_json(cls));
        if (!cls.non_isolated) ++isolated;
        all_points.insert(all_points.end(), cls.points.begin(), cls.points.end());
    }
    report["results"] = Json{{"map", map.name},
                             {"order", order},
                             {"count", isolated},
                             {"classes", class_array},
                             {"non_isolated_samples", family_array},
                             {"enumeration", enumeration_log_to_json(log)}};
    report["timing"] = Json{{"seconds", elapsed_seconds(start)}};

    std::printf("map %s, order %d: %zu cycle class(es), %zu sampled family point(s)"
                "  [%zu seeds, %zu converged, %.1fs]\n",
                map.name.c_str(), order, isolated, classes.size() - isolated, log.seeds_total,
                log.converged, elapsed_seconds(start));
    if (!cfg.out_path.empty()) write_json_atomic(cfg.out_path, report);
    if (!cfg.csv_path.empty()) write_points_csv_atomic(cfg.csv_path, all_points, cfg.params.N);
    return kExitOk;
}

int cmd_obstruct(const RunConfig& cfg) {
    cfg.params.validate();
    const MapHandle map = select_map(cfg);
    const int order = cfg.resolved_order();
    const auto start = std::chrono::steady_clock::now();

    EnumerationLog log;
    const std::vector<CycleClass> classes = cycle_space(map, order, cfg.params, cfg.grid, &log);
    const Certificate cert = parity_certificate(classes, order, cfg.params, cfg.grid);

    Json report = make_report("obstruct", cfg);
    report["results"] = Json{{"map", map.name},
                             {"certificate", certificate_to_json(cert)},
                             {"enumeration", enumeration_log_to_json(log)}};
    report["timing"] = Json{{"seconds", elapsed_seconds(start)}};

    std::printf("map %s, order %d: cycle_count = %zu (non-isolated samples %zu) -> %s\n",
                map.name.c_str(), order, cert.cycle_count, cert.non_isolated_count,
                Certificate::verdict_name(cert.verdict));
    if (!cfg.out_path.empty()) write_json_atomic(cfg.out_path, report);
    return cert.verdict == Certificate::Verdict::NoSquareRoot ? kExitOk : kExitInconclusive;
}

int cmd_verify(const RunConfig& cfg) {
    cfg.params.validate();
    SuiteOptions options;
    options.selection = cfg.selection;
    options.samples = cfg.samples;
    options.grid_resolution = cfg.verify_grid;
    options.seed = cfg.seed;
    const auto start = std::chrono::steady_clock::now();

    const std::vector<CheckReport> checks = run_suite(cfg.params, options);

    bool all_pass = true;
    Json check_array = Json::array();
    for (const CheckReport& check : checks) {
        check_array.push_back(check_to_json(check));
        all_pass = all_pass && check.pass;
        std::printf("%-32s %s  max_defect %.3e  tol %.1e  (%zu samples)%s%s\n", check.name.c_str(),
                    check.pass ? "PASS" : "FAIL", check.max_defect, check.tolerance, check.samples,
                    check.note.empty() ? "" : "  -- ", check.note.c_str());
    }

    Json report = make_report("verify", cfg);
    report["checks"] = check_array;
    report["results"] = Json{{"all_pass", all_pass}, {"check_count", checks.size()}};
    report["timing"] = Json{{"seconds", elapsed_seconds(start)}};
    if (!cfg.out_path.empty()) write_json_atomic(cfg.out_path, report);
    return all_pass ? kExitOk : kExitNumericalFailure;
}

int cmd_sweep(const RunConfig& cfg) {
    std::vector<int> ks = cfg.sweep_k.empty() ? std::vector<int>{cfg.params.k} : cfg.sweep_k;
    std::vector<double> deltas = cfg.sweep_delta.empty() ? std::vector<double>{cfg.params.delta} : cfg.sweep_delta;
    std::vector<double> epsilons =
        cfg.sweep_epsilon.empty() ? std::vector<double>{cfg.params.epsilon} : cfg.sweep_epsilon;

    struct Tuple {
        int k;
        double delta;
        double epsilon;
    };
    std::vector<Tuple> tuples;
    if (cfg.sweep_zip) {
        const std::size_t len = std::max({ks.size(), deltas.size(), epsilons.size()});
        for (std::size_t i = 0; i < len; ++i)
            tuples.push_back(Tuple{ks[std::min(i, ks.size() - 1)], deltas[std::min(i, deltas.size() - 1)],
                                   epsilons[std::min(i, epsilons.size() - 1)]});
    } else {
        for (int k : ks)
            for (double d : deltas)
                for (double e : epsilons) tuples.push_back(Tuple{k, d, e});
    }

    // Displacement sample: fixed across tuples (same seed, same R and N).
    Rng rng(cfg.seed);
    const std::vector<BallPoint> sample =
        sample_ball(static_cast<std::size_t>(std::max(cfg.sweep_samples, 0)), cfg.params, 0.97, rng);

    const auto start = std::chrono::steady_clock::now();
    Json rows = Json::array();
    std::string csv = "k,delta,epsilon,control,order,count,verdict,displacement\n";
    int hard_failures = 0;
    for (const Tuple& t : tuples) {
        Params p = cfg.params;
        p.k = t.k;
        p.delta = t.delta;
        p.epsilon = t.epsilon;
        const int order = 2 * p.k;
        Json row{{"k", t.k}, {"delta", t.delta}, {"epsilon", t.epsilon},
                 {"control", cfg.control_perturbation}, {"order", order}};
        try {
            p.validate();
            const MapHandle map = cfg.control_perturbation ? make_control_phi_map(p) : make_phi_map(p);
            EnumerationLog log;
            const std::vector<CycleClass> classes = cycle_space(map, order, p, cfg.sweep_grid, &log);
            const Certificate cert = parity_certificate(classes, order, p, cfg.sweep_grid);
            double displacement = 0.0;
            for (const BallPoint& z : sample) displacement = std::max(displacement, distance(map.eval(z), z));
            std::size_t isolated = 0;
            for (const CycleClass& c : classes)
                if (!c.non_isolated) ++isolated;
            row["count"] = isolated;
            row["verdict"] = Certificate::verdict_name(cert.verdict);
            row["displacement"] = displacement;
            row["enumeration"] = enumeration_log_to_json(log);
            char line[256];
            std::snprintf(line, sizeof(line), "%d,%.12g,%.12g,%d,%d,%zu,%s,%.12g\n", t.k, t.delta, t.epsilon,
                          cfg.control_perturbation ? 1 : 0, order, classes.size(),
                          Certificate::verdict_name(cert.verdict), displacement);
            csv += line;
            std::printf("k=%d delta=%.6g epsilon=%.6g: count=%zu verdict=%s displacement=%.6g\n", t.k,
                        t.delta, t.epsilon, classes.size(), Certificate::verdict_name(cert.verdict),
                        displacement);
        } catch (const std::exception& e) {
            row["failure"] = e.what();
            ++hard_failures;
            std::printf("k=%d delta=%.6g epsilon=%.6g: FAILED (%s)\n", t.k, t.delta, t.epsilon, e.what());
        }
        rows.push_back(row);
    }

    Json report = make_report("sweep", cfg);
    report["results"] = Json{{"tuples", rows}, {"failures", hard_failures}};
    report["timing"] = Json{{"seconds", elapsed_seconds(start)}};
    if (!cfg.out_path.empty()) write_json_atomic(cfg.out_path, report);
    if (!cfg.csv_path.empty()) {
        const std::string tmp = cfg.csv_path + ".tmp";
        {
            std::ofstream out(tmp);
            if (!out) throw std::runtime_error("cannot open '" + tmp + "' for writing");
            out << csv;
        }
        std::filesystem::rename(tmp, cfg.csv_path);
    }
    return hard_failures == static_cast<int>(tuples.size()) && !tuples.empty() ? kExitNumericalFailure
                                                                               : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ballmap: cycle enumeration and square-root obstruction for Hamiltonian ball maps"};
    app.require_subcommand(1);

    CommonFlags construct_f, cycles_f, obstruct_f, verify_f, sweep_f;
    CLI::App* construct = app.add_subcommand("construct", "build the map and print derived constants");
    CLI::App* cycles = app.add_subcommand("cycles", "enumerate cycle classes of the selected map");
    CLI::App* obstruct = app.add_subcommand("obstruct", "enumerate cycles and emit the parity certificate");
    CLI::App* verify = app.add_subcommand("verify", "run the property-check suite");
    CLI::App* sweep = app.add_subcommand("sweep", "run cycles over parameter ranges");
    add_common_options(construct, construct_f);
    add_common_options(cycles, cycles_f);
    add_common_options(obstruct, obstruct_f);
    add_common_options(verify, verify_f);
    add_common_options(sweep, sweep_f);
    std::vector<std::string> selection;
    verify->add_option("--select", selection, "check names to run (default: all)");
    bool control_flag = false;
    sweep->add_flag("--control", control_flag, "use the cos(2k theta) control perturbation");
    bool zip_flag = false;
    sweep->add_flag("--zip", zip_flag, "pair list entries instead of taking the product");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitInvalidConfig;
    }

    try {
        if (construct->parsed()) return cmd_construct(resolve_config(construct, construct_f, "construct"));
        if (cycles->parsed()) return cmd_cycles(resolve_config(cycles, cycles_f, "cycles"));
        if (obstruct->parsed()) return cmd_obstruct(resolve_config(obstruct, obstruct_f, "obstruct"));
        if (verify->parsed()) {
            RunConfig cfg = resolve_config(verify, verify_f, "verify");
            if (!selection.empty()) cfg.selection = selection;
            return cmd_verify(cfg);
        }
        if (sweep->parsed()) {
            RunConfig cfg = resolve_config(sweep, sweep_f, "sweep");
            if (control_flag) cfg.control_perturbation = true;
            if (zip_flag) cfg.sweep_zip = true;
            return cmd_sweep(cfg);
        }
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "invalid configuration: %s\n", e.what());
        return kExitInvalidConfig;
    } catch (const ballmap::NumericalError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return kExitNumericalFailure;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNumericalFailure;
    }
    return kExitInvalidConfig;
}
