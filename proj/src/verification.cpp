#include "ballmap/verification.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "ballmap/obstruction.hpp"

namespace ballmap {

namespace {

Eigen::MatrixXd symplectic_form(int N) {
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * N, 2 * N);
    for (int i = 0; i < N; ++i) {
        omega(2 * i, 2 * i + 1) = 1.0;
        omega(2 * i + 1, 2 * i) = -1.0;
    }
    return omega;
}

Eigen::VectorXd to_eigen(const BallPoint& z) {
    Eigen::VectorXd v(2 * static_cast<int>(z.dim()));
    for (std::size_t i = 0; i < z.dim(); ++i) {
        v[2 * static_cast<int>(i)] = z.coords[i].real();
        v[2 * static_cast<int>(i) + 1] = z.coords[i].imag();
    }
    return v;
}

BallPoint from_eigen(const Eigen::VectorXd& v) {
    BallPoint z;
    z.coords.reserve(static_cast<std::size_t>(v.size() / 2));
    for (int i = 0; i + 1 < v.size(); i += 2) z.coords.emplace_back(v[i], v[i + 1]);
    return z;
}

double dist_to_fixed_set(const BallPoint& z, double R) {
    // Distance to {0} union the circle {head = 0, |z_N| = R/sqrt(2)}.
    const double to_origin = std::sqrt(z.norm_sq());
    double head_sq = 0.0;
    for (std::size_t i = 0; i + 1 < z.dim(); ++i) head_sq += std::norm(z.coords[i]);
    const double rn = std::abs(z.coords.back());
    const double dr = rn - R / std::numbers::sqrt2;
    const double to_circle = std::sqrt(head_sq + dr * dr);
    return std::min(to_origin, to_circle);
}

double theta_advance(const BallPoint& before, const BallPoint& after) {
    const Complex ratio = after.coords.back() * std::conj(before.coords.back());
    return std::arg(ratio);  // in (-pi, pi]
}

}  // namespace

double symplectic_defect(const MapHandle& map, const BallPoint& z, double fd_step) {
    const int N = static_cast<int>(z.dim());
    const int d = 2 * N;
    const double R2 = map.params.R2();
    Eigen::VectorXd base = to_eigen(z);
    Eigen::MatrixXd J(d, d);
    for (int j = 0; j < d; ++j) {
        Eigen::VectorXd xp = base, xm = base;
        xp[j] += fd_step;
        xm[j] -= fd_step;
        const BallPoint zp = from_eigen(xp);
        const BallPoint zm = from_eigen(xm);
        if (!(zp.norm_sq() < R2) || !(zm.norm_sq() < R2))
            throw NumericalError("symplectic_defect: FD stencil leaves the ball", z);
        J.col(j) = (to_eigen(map.eval(zp)) - to_eigen(map.eval(zm))) / (2.0 * fd_step);
    }
    const Eigen::MatrixXd omega = symplectic_form(N);
    return (J.transpose() * omega * J - omega).cwiseAbs().maxCoeff();
}

FixedSetReport check_fixed_set_unperturbed(const Params& params, const Profile& profile, int grid_resolution) {
    FixedSetReport report;
    const MapHandle map = make_flow_h_map(params, 1.0);
    const int order = 2 * params.k;
    const std::vector<FixedPointRecord> records = enumerate_fixed_points(map, order, params, grid_resolution);

    CheckReport& membership = report.membership;
    membership.name = "fixed_set_membership";
    membership.samples = records.size();
    membership.tolerance = 1e-7 * params.R;
    for (const FixedPointRecord& rec : records) {
        const double d = dist_to_fixed_set(rec.point, params.R);
        if (d > membership.max_defect) {
            membership.max_defect = d;
            membership.worst_point = rec.point;
        }
    }
    membership.pass = membership.max_defect <= membership.tolerance;
    if (records.empty()) membership.note = "no converged fixed points (vacuous)";

    CheckReport& rotation = report.rotation;
    rotation.name = "fixed_set_rotation";
    rotation.tolerance = 1e-12;
    const int rotation_samples = 16;
    rotation.samples = rotation_samples;
    const double target = std::numbers::pi / params.k;
    for (int j = 0; j < rotation_samples; ++j) {
        PolarLast p;
        p.head.assign(static_cast<std::size_t>(params.N - 1), Complex{0.0, 0.0});
        p.ell = 0.5 * params.R2();
        p.theta = 2.0 * std::numbers::pi * j / rotation_samples;
        const BallPoint z = p.to_point();
        const double advance = theta_advance(z, flow_H(z, 1.0, params, profile));
        const double defect = std::abs(advance - target);
        if (defect > rotation.max_defect) {
            rotation.max_defect = defect;
            rotation.worst_point = z;
        }
    }
    rotation.pass = rotation.max_defect <= rotation.tolerance;
    return report;
}

CheckReport check_boundary_rigidity(const Params& params, const Profile& profile, const Cutoff& cutoff,
                                    int samples, std::uint64_t seed) {
    CheckReport report;
    report.name = "boundary_rigidity";
    report.tolerance = 1e-12 * params.R;
    report.seed = seed;
    Rng rng(seed);
    const MapHandle rigid = make_rigid_rotation_map(params);
    const double band = 8.0 * params.R2() / 9.0;

    std::vector<BallPoint> pts = sample_outer_band(static_cast<std::size_t>(std::max(samples, 0)), params, rng);
    int skipped = 0;
    for (const BallPoint& z : pts) {
        const double s = weighted_action(z, params.N);
        const double ell = std::norm(z.coords.back());
        const bool admissible = s >= band && (ell >= band || ell <= params.R2() / 9.0);
        if (!admissible) {
            ++skipped;
            continue;
        }
        const double defect = distance(map_Phi(z, params, profile, cutoff), rigid.eval(z));
        if (defect > report.max_defect) {
            report.max_defect = defect;
            report.worst_point = z;
        }
        ++report.samples;
    }
    if (skipped > 0) report.note = std::to_string(skipped) + " samples skipped (outside the admissible region)";
    if (report.samples == 0) {
        report.note += (report.note.empty() ? "" : "; ");
        report.note += "vacuous pass: no admissible samples";
    }
    report.pass = report.max_defect <= report.tolerance;
    return report;
}

CheckReport check_rotation_step(const Params& params, const Profile& profile, const Cutoff& cutoff,
                                int samples, std::uint64_t seed) {
    CheckReport report;
    report.name = "rotation_step";
    report.tolerance = 1e-12;
    report.seed = seed;
    Rng rng(seed);
    const double R2 = params.R2();
    const double cap = std::numbers::pi / params.k;

    std::vector<BallPoint> pts =
        sample_invariant_plane(static_cast<std::size_t>(std::max(samples, 0)), params, 0.02 * R2, 0.97 * R2, rng);
    {
        // Deterministic extremal samples: the rotation peak and a point on
        // the edge of the cutoff support.
        PolarLast peak;
        peak.head.assign(static_cast<std::size_t>(params.N - 1), Complex{0.0, 0.0});
        peak.ell = 0.5 * R2;
        peak.theta = 0.0;
        pts.push_back(peak.to_point());
        peak.ell = R2 / 9.0;
        peak.theta = 1.0;
        pts.push_back(peak.to_point());
    }

    int equality_cases = 0;
    int equality_violations = 0;
    for (const BallPoint& z : pts) {
        const BallPoint image = map_Phi(z, params, profile, cutoff);
        const double advance = theta_advance(z, image);
        double defect = 0.0;
        if (!(advance > 0.0))
            defect = std::abs(advance) + 1e-9;  // non-positive advance: hard violation
        else if (advance > cap)
            defect = advance - cap;
        if (defect > report.max_defect) {
            report.max_defect = defect;
            report.worst_point = z;
        }
        if (std::abs(advance - cap) <= 1e-12) {
            ++equality_cases;
            const double ell_post = std::norm(image.coords.back());
            if (std::abs(ell_post - 0.5 * R2) > 1e-8 * R2) ++equality_violations;
        }
        ++report.samples;
    }
    report.note = std::to_string(equality_cases) + " equality cases";
    if (equality_violations > 0) {
        report.note += ", " + std::to_string(equality_violations) + " with post-step ell away from R^2/2";
        report.pass = false;
        report.max_defect = std::max(report.max_defect, 1.0);
    } else {
        report.pass = report.max_defect <= report.tolerance;
    }
    return report;
}

namespace {

struct SuiteContext {
    const Params& params;
    const SuiteOptions& options;
    Profile profile;
    Cutoff cutoff;
    MapHandle phi;

    int scaled(int base) const {
        // options.samples == 200 keeps the documented per-check counts.
        return static_cast<int>(static_cast<long long>(base) * options.samples / 200);
    }
};

CheckReport vacuous(CheckReport report) {
    if (report.samples == 0 && report.note.empty()) {
        report.pass = true;
        report.note = "vacuous pass: zero samples requested";
    }
    return report;
}

CheckReport symplectic_check(const SuiteContext& ctx, const std::string& name, const MapHandle& map,
                             std::uint64_t seed) {
    CheckReport report;
    report.name = name;
    report.tolerance = 1e-5;
    report.seed = seed;
    Rng rng(seed);
    const double fd = 1e-5 * ctx.params.R;
    const int n = ctx.scaled(200);
    int skipped = 0;
    for (int i = 0; i < n; ++i) {
        const BallPoint z = sample_ball_point(ctx.params, 0.97, rng);
        double defect;
        try {
            defect = symplectic_defect(map, z, fd);
        } catch (const NumericalError&) {
            ++skipped;
            continue;
        }
        if (defect > report.max_defect) {
            report.max_defect = defect;
            report.worst_point = z;
        }
        ++report.samples;
    }
    if (skipped > 0) report.note = std::to_string(skipped) + " stencil escapes skipped";
    report.pass = report.max_defect <= report.tolerance;
    return vacuous(report);
}

CheckReport modulus_check(const SuiteContext& ctx, std::uint64_t seed) {
    CheckReport report;
    report.name = "modulus_preservation_flow_h";
    report.tolerance = 5e-15 * ctx.params.R;
    report.seed = seed;
    Rng rng(seed);
    std::uniform_real_distribution<double> tdist(-2.0, 2.0);
    const int n = ctx.scaled(1000);
    for (int i = 0; i < n; ++i) {
        const BallPoint z = sample_ball_point(ctx.params, 0.99, rng);
        const BallPoint out = flow_H(z, tdist(rng), ctx.params, ctx.profile);
        for (std::size_t nu = 0; nu < z.dim(); ++nu) {
            const double defect = std::abs(std::abs(out.coords[nu]) - std::abs(z.coords[nu]));
            if (defect > report.max_defect) {
                report.max_defect = defect;
                report.worst_point = z;
            }
        }
        ++report.samples;
    }
    report.pass = report.max_defect <= report.tolerance;
    return vacuous(report);
}

CheckReport band_closed_form_check(const SuiteContext& ctx, std::uint64_t seed) {
    CheckReport report;
    report.name = "flow_f_band_closed_form";
    report.tolerance = 1e-10 * ctx.params.R;
    report.seed = seed;
    Rng rng(seed);
    const double R2 = ctx.params.R2();
    const double margin = 0.02 * R2;
    const int n = ctx.scaled(100);
    std::vector<BallPoint> pts = sample_invariant_plane(static_cast<std::size_t>(n), ctx.params,
                                                        ctx.cutoff.flat_lo() + margin,
                                                        ctx.cutoff.flat_hi() - margin, rng);
    for (const BallPoint& z : pts) {
        const BallPoint integrated = flow_F(z, 1.0, ctx.params, ctx.cutoff);
        PolarLast p = PolarLast::from_point(z);
        p.ell -= 2.0 * ctx.params.epsilon * ctx.params.k * std::sin(ctx.params.k * p.theta);
        const double defect = distance(integrated, p.to_point());
        if (defect > report.max_defect) {
            report.max_defect = defect;
            report.worst_point = z;
        }
        ++report.samples;
    }
    report.pass = report.max_defect <= report.tolerance;
    return vacuous(report);
}

CheckReport integrator_consistency_check(const SuiteContext& ctx, std::uint64_t seed) {
    CheckReport report;
    report.name = "flow_f_integrator_consistency";
    report.tolerance = 1e-10 * ctx.params.R;
    report.seed = seed;
    Rng rng(seed);
    Params half = ctx.params;
    half.integrator_step = 0.5 * ctx.params.integrator_step;
    const int n = ctx.scaled(40);
    // Transition zones of the cutoff, where the dynamics is genuinely
    // nonlinear and step-size error shows.
    std::vector<BallPoint> pts = sample_invariant_plane(static_cast<std::size_t>(n / 2 + n % 2), ctx.params,
                                                        ctx.cutoff.support_lo() + 0.005 * ctx.params.R2(),
                                                        ctx.cutoff.flat_lo() - 0.005 * ctx.params.R2(), rng);
    std::vector<BallPoint> upper = sample_invariant_plane(static_cast<std::size_t>(n / 2), ctx.params,
                                                          ctx.cutoff.flat_hi() + 0.005 * ctx.params.R2(),
                                                          ctx.cutoff.support_hi() - 0.005 * ctx.params.R2(), rng);
    pts.insert(pts.end(), upper.begin(), upper.end());
    for (const BallPoint& z : pts) {
        const BallPoint coarse = flow_F(z, 1.0, ctx.params, ctx.cutoff);
        const BallPoint fine = flow_F(z, 1.0, half, ctx.cutoff);
        const double defect = distance(coarse, fine);
        if (defect > report.max_defect) {
            report.max_defect = defect;
            report.worst_point = z;
        }
        ++report.samples;
    }
    report.pass = report.max_defect <= report.tolerance;
    return vacuous(report);
}

CheckReport energy_h_check(const SuiteContext& ctx, std::uint64_t seed) {
    CheckReport report;
    report.name = "energy_conservation_h";
    report.tolerance = 1e-12;
    report.seed = seed;
    Rng rng(seed);
    std::uniform_real_distribution<double> tdist(0.0, 2.0 * ctx.params.k);
    const int n = ctx.scaled(200);
    for (int i = 0; i < n; ++i) {
        const BallPoint z = sample_ball_point(ctx.params, 0.99, rng);
        const BallPoint out = flow_H(z, tdist(rng), ctx.params, ctx.profile);
        const double defect = std::abs(hamiltonian_H(out, ctx.params, ctx.profile) -
                                       hamiltonian_H(z, ctx.params, ctx.profile));
        if (defect > report.max_defect) {
            report.max_defect = defect;
            report.worst_point = z;
        }
        ++report.samples;
    }
    report.pass = report.max_defect <= report.tolerance;
    return vacuous(report);
}

CheckReport energy_f_check(const SuiteContext& ctx, std::uint64_t seed) {
    CheckReport report;
    report.name = "energy_conservation_f";
    report.tolerance = 1e-9;
    report.seed = seed;
    Rng rng(seed);
    const double R2 = ctx.params.R2();
    const int n = ctx.scaled(200);
    std::vector<BallPoint> pts = sample_invariant_plane(static_cast<std::size_t>(n), ctx.params,
                                                        ctx.cutoff.support_lo() + 0.01 * R2,
                                                        ctx.cutoff.support_hi() - 0.01 * R2, rng);
    for (const BallPoint& z : pts) {
        const BallPoint out = flow_F(z, 1.0, ctx.params, ctx.cutoff);
        const double defect = std::abs(perturbation_F(out, ctx.params, ctx.cutoff) -
                                       perturbation_F(z, ctx.params, ctx.cutoff));
        if (defect > report.max_defect) {
            report.max_defect = defect;
            report.worst_point = z;
        }
        ++report.samples;
    }
    report.pass = report.max_defect <= report.tolerance;
    return vacuous(report);
}

CheckReport gcd_period_law_check(const SuiteContext& ctx, const std::vector<FixedPointRecord>& records,
                                 const MapHandle& map) {
    CheckReport report;
    report.name = "gcd_period_law";
    report.tolerance = 10.0 * ctx.params.newton_tol;
    report.samples = records.size();
    for (const FixedPointRecord& rec : records) {
        const BezoutResult bez = gcd_certified(rec.minimal_period, rec.iterate_order);
        const double defect = distance(iterate(map, rec.point, static_cast<int>(bez.g)), rec.point);
        if (defect > report.max_defect) {
            report.max_defect = defect;
            report.worst_point = rec.point;
        }
    }
    if (records.empty()) report.note = "no fixed points enumerated (vacuous)";
    report.pass = report.max_defect <= report.tolerance;
    return report;
}

CheckReport confinement_check(const SuiteContext& ctx, const std::vector<CycleClass>& classes) {
    CheckReport report;
    report.name = "invariant_plane_confinement";
    report.tolerance = 1e-7 * ctx.params.R;
    report.samples = classes.size();
    for (const CycleClass& cls : classes) {
        for (const BallPoint& p : cls.points) {
            for (std::size_t i = 0; i + 1 < p.dim(); ++i) {
                const double defect = std::abs(p.coords[i]);
                if (defect > report.max_defect) {
                    report.max_defect = defect;
                    report.worst_point = p;
                }
            }
        }
    }
    if (classes.empty()) report.note = "no cycle classes found (vacuous)";
    report.pass = report.max_defect <= report.tolerance;
    return report;
}

}  // namespace

std::vector<std::string> suite_check_names() {
    return {"symplectic_flow_h",
            "symplectic_flow_f",
            "symplectic_phi",
            "modulus_preservation_flow_h",
            "flow_f_band_closed_form",
            "flow_f_integrator_consistency",
            "energy_conservation_h",
            "energy_conservation_f",
            "fixed_set_membership",
            "fixed_set_rotation",
            "boundary_rigidity",
            "rotation_step",
            "gcd_period_law",
            "invariant_plane_confinement"};
}

std::vector<CheckReport> run_suite(const Params& params, const SuiteOptions& options) {
    params.validate();
    SuiteContext ctx{params, options, make_rho(params), make_beta(params), make_phi_map(params)};

    auto selected = [&](const std::string& name) {
        if (options.selection.empty()) return true;
        return std::find(options.selection.begin(), options.selection.end(), name) != options.selection.end();
    };

    std::vector<CheckReport> reports;
    const std::uint64_t s = options.seed;

    if (selected("symplectic_flow_h"))
        reports.push_back(symplectic_check(ctx, "symplectic_flow_h", make_flow_h_map(params, 1.0), s + 1));
    if (selected("symplectic_flow_f"))
        reports.push_back(symplectic_check(ctx, "symplectic_flow_f", make_flow_f_map(params, 1.0), s + 2));
    if (selected("symplectic_phi")) reports.push_back(symplectic_check(ctx, "symplectic_phi", ctx.phi, s + 3));
    if (selected("modulus_preservation_flow_h")) reports.push_back(modulus_check(ctx, s + 4));
    if (selected("flow_f_band_closed_form")) reports.push_back(band_closed_form_check(ctx, s + 5));
    if (selected("flow_f_integrator_consistency")) reports.push_back(integrator_consistency_check(ctx, s + 6));
    if (selected("energy_conservation_h")) reports.push_back(energy_h_check(ctx, s + 7));
    if (selected("energy_conservation_f")) reports.push_back(energy_f_check(ctx, s + 8));
    if (selected("fixed_set_membership") || selected("fixed_set_rotation")) {
        FixedSetReport fs = check_fixed_set_unperturbed(params, ctx.profile, options.grid_resolution);
        if (selected("fixed_set_membership")) reports.push_back(fs.membership);
        if (selected("fixed_set_rotation")) reports.push_back(fs.rotation);
    }
    if (selected("boundary_rigidity"))
        reports.push_back(check_boundary_rigidity(params, ctx.profile, ctx.cutoff, ctx.scaled(100), s + 9));
    if (selected("rotation_step"))
        reports.push_back(check_rotation_step(params, ctx.profile, ctx.cutoff, ctx.scaled(1000), s + 10));
    if (selected("gcd_period_law") || selected("invariant_plane_confinement")) {
        const int order = 2 * params.k;
        const std::vector<FixedPointRecord> records =
            enumerate_fixed_points(ctx.phi, order, params, options.grid_resolution);
        if (selected("gcd_period_law")) reports.push_back(gcd_period_law_check(ctx, records, ctx.phi));
        if (selected("invariant_plane_confinement"))
            reports.push_back(confinement_check(ctx, assemble_cycle_classes(ctx.phi, records, order, params)));
    }
    return reports;
}

}  // namespace ballmap
