#include "ballmap/dynamics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>

#include "ballmap/parallel.hpp"

namespace ballmap {

BallPoint iterate(const MapHandle& map, BallPoint z, int n) {
    const double R2 = map.params.R2();
    for (int i = 0; i < n; ++i) {
        z = map.eval(z);
        if (!(z.norm_sq() < R2))
            throw NumericalError("iterate: image left the ball after " + std::to_string(i + 1) +
                                     " of " + std::to_string(n) + " applications of " + map.name,
                                 z);
    }
    return z;
}

double round_sig12(double x) {
    if (x == 0.0 || !std::isfinite(x)) return x == 0.0 ? 0.0 : x;
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.11e", x);
    return std::strtod(buf, nullptr);
}

namespace {

std::vector<double> flatten_rounded(const std::vector<BallPoint>& pts, std::size_t start) {
    std::vector<double> key;
    key.reserve(pts.size() * 2 * (pts.empty() ? 0 : pts[0].dim()));
    const std::size_t k = pts.size();
    for (std::size_t i = 0; i < k; ++i) {
        const BallPoint& p = pts[(start + i) % k];
        for (const Complex& c : p.coords) {
            key.push_back(round_sig12(c.real()));
            key.push_back(round_sig12(c.imag()));
        }
    }
    return key;
}

std::vector<double> point_key(const BallPoint& p) {
    std::vector<double> key;
    key.reserve(2 * p.dim());
    for (const Complex& c : p.coords) {
        key.push_back(round_sig12(c.real()));
        key.push_back(round_sig12(c.imag()));
    }
    return key;
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

}  // namespace

std::vector<BallPoint> canonical_rotation(const std::vector<BallPoint>& pts) {
    if (pts.size() <= 1) return pts;
    std::size_t best = 0;
    std::vector<double> best_key = flatten_rounded(pts, 0);
    for (std::size_t s = 1; s < pts.size(); ++s) {
        std::vector<double> key = flatten_rounded(pts, s);
        if (std::lexicographical_compare(key.begin(), key.end(), best_key.begin(), best_key.end())) {
            best = s;
            best_key = std::move(key);
        }
    }
    std::vector<BallPoint> out;
    out.reserve(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) out.push_back(pts[(best + i) % pts.size()]);
    return out;
}

bool same_class(const CycleClass& a, const CycleClass& b, double tol) {
    if (a.order != b.order || a.points.size() != b.points.size()) return false;
    const std::size_t k = a.points.size();
    for (std::size_t s = 0; s < k; ++s) {
        bool all_close = true;
        for (std::size_t i = 0; i < k && all_close; ++i)
            if (distance(a.points[i], b.points[(s + i) % k]) > tol) all_close = false;
        if (all_close) return true;
    }
    return false;
}

NewtonOutcome newton_fixed_point(const MapHandle& map, int n, const BallPoint& seed, const Params& params) {
    return newton_fixed_point(map, n, seed, params, true);
}

NewtonOutcome newton_fixed_point(const MapHandle& map, int n, const BallPoint& seed, const Params& params,
                                 bool polish) {
    NewtonOutcome out;
    const int dim = 2 * params.N;
    const double fd_step = 1e-6 * params.R;
    // Accepted iterates stay this far inside the ball so the FD stencil
    // never leaves it.
    const double containment_sq = params.R2() * (1.0 - 1e-5);

    auto residual = [&](const BallPoint& z, Eigen::VectorXd& g) -> double {
        const BallPoint fz = iterate(map, z, n);
        g = to_eigen(fz) - to_eigen(z);
        return g.norm();
    };

    BallPoint z = seed;
    Eigen::VectorXd g(dim);
    double res;
    try {
        res = residual(z, g);
    } catch (const NumericalError& e) {
        out.status = NewtonOutcome::Status::evaluation_error;
        out.message = e.what();
        return out;
    }
    out.best_residual = res;
    int no_improve_strikes = 0;
    bool truncated_this_run = false;
    bool degenerate_family = false;  // latest Jacobian had a near-null direction
    bool degeneracy_known = false;
    int polish_rounds = 0;
    int plateau_strikes = 0;
    constexpr int kMaxIterations = 50;
    constexpr int kMaxPolish = 24;
    const double polish_floor = 2e-14 * params.R;

    // Null directions of the latest Jacobian, for the isolation probe.
    std::vector<Eigen::VectorXd> null_dirs;

    auto converged = [&](int it) {
        FixedPointRecord rec;
        rec.point = z;
        rec.iterate_order = n;
        rec.residual = res;
        rec.seed = seed;
        rec.newton_iterations = it;
        rec.minimal_period = minimal_period(map, z, n, params);
        // Isolation probe: step well past the dedup scale along each
        // near-null direction and re-converge from there (without polish,
        // so this does not recurse). A positive-dimensional family
        // (invariant circle) yields a distinct fixed point on both sides;
        // from an isolated root, even a degenerate one, the re-converged
        // point falls back onto the root itself.
        if (polish && !null_dirs.empty()) {
            const double tau = 2e-3 * params.R;
            const Eigen::VectorXd base = to_eigen(z);
            for (const Eigen::VectorXd& v : null_dirs) {
                bool both_sides = true;
                for (int sign : {1, -1}) {
                    const BallPoint trial = from_eigen(base + sign * tau * v);
                    if (!(trial.norm_sq() <= containment_sq)) {
                        both_sides = false;
                        break;
                    }
                    const NewtonOutcome probe = newton_fixed_point(map, n, trial, params, false);
                    if (probe.status != NewtonOutcome::Status::converged ||
                        distance(probe.record->point, z) < 0.5 * tau) {
                        both_sides = false;
                        break;
                    }
                }
                if (both_sides) {
                    rec.non_isolated = true;
                    break;
                }
            }
        }
        out.record = std::move(rec);
        out.status = NewtonOutcome::Status::converged;
        return out;
    };

    for (int it = 0; it < kMaxIterations + kMaxPolish; ++it) {
        out.iterations = it;
        const bool within_tol = res <= params.newton_tol;
        if (within_tol) {
            // Near a degenerate fixed-point family the residual localizes
            // the point poorly along the flat direction (residual grows
            // only quadratically with the valley coordinate), so keep
            // polishing toward the floating-point floor before reporting.
            // Degeneracy is read off the Jacobian, so the first pass falls
            // through to the SVD even when already within tolerance (the
            // isolation probe needs the null directions too).
            if (!polish) return converged(it);
            if (degeneracy_known &&
                (!degenerate_family || res <= polish_floor || polish_rounds >= kMaxPolish))
                return converged(it);
            if (degeneracy_known) ++polish_rounds;
        } else if (it >= kMaxIterations) {
            break;
        }
        const double res_round_start = res;

        Eigen::MatrixXd J(dim, dim);
        try {
            Eigen::VectorXd base = to_eigen(z);
            Eigen::VectorXd gp(dim), gm(dim);
            for (int j = 0; j < dim; ++j) {
                Eigen::VectorXd xp = base, xm = base;
                xp[j] += fd_step;
                xm[j] -= fd_step;
                residual(from_eigen(xp), gp);
                residual(from_eigen(xm), gm);
                J.col(j) = (gp - gm) / (2.0 * fd_step);
            }
        } catch (const NumericalError& e) {
            if (within_tol) return converged(it);
            out.status = NewtonOutcome::Status::evaluation_error;
            out.message = e.what();
            return out;
        }

        Eigen::JacobiSVD<Eigen::MatrixXd> svd(J, Eigen::ComputeFullU | Eigen::ComputeFullV);
        const Eigen::VectorXd& sv = svd.singularValues();
        const double sv_max = sv[0];
        if (sv_max <= 0.0) {
            if (within_tol) return converged(it);
            out.status = NewtonOutcome::Status::singular_jacobian;
            out.message = "zero Jacobian";
            return out;
        }
        degenerate_family = sv[dim - 1] < 1e-3 * sv_max;
        degeneracy_known = true;
        null_dirs.clear();
        for (int d = dim - 1; d >= 0 && sv[d] < 1e-3 * sv_max; --d) null_dirs.push_back(svd.matrixV().col(d));
        if (within_tol && (!degenerate_family || res <= polish_floor)) return converged(it);

        // Singular values below the FD noise floor (eval noise / fd_step,
        // with headroom) belong to genuinely neutral directions such as the
        // unperturbed circle's tangent; inverting them would amplify noise
        // into garbage steps. Everything above the floor is signal, even
        // when it is many orders below sv_max (the degenerate valley
        // through the cycle points).
        constexpr double kSigmaNoiseFloor = 1e-8;
        Eigen::VectorXd step;
        if (sv[dim - 1] > kSigmaNoiseFloor) {
            step = svd.solve(-g);
        } else {
            truncated_this_run = true;
            out.used_least_squares = true;
            Eigen::VectorXd inv_sv(dim);
            for (int i = 0; i < dim; ++i) inv_sv[i] = sv[i] > kSigmaNoiseFloor ? 1.0 / sv[i] : 0.0;
            step = svd.matrixV() * inv_sv.asDiagonal() * (svd.matrixU().transpose() * (-g));
        }

        // Halve until the trial point is inside the ball (spec budget 30),
        // then require residual decrease for a few more halvings.
        double lambda = 1.0;
        Eigen::VectorXd base = to_eigen(z);
        int halvings = 0;
        while (halvings < 30) {
            const BallPoint trial = from_eigen(base + lambda * step);
            if (trial.norm_sq() <= containment_sq) break;
            lambda *= 0.5;
            ++halvings;
        }
        bool accepted = false;
        for (int extra = 0; extra < 8 && halvings < 30; ++extra, ++halvings) {
            const BallPoint trial = from_eigen(base + lambda * step);
            if (trial.norm_sq() <= containment_sq) {
                Eigen::VectorXd g_trial(dim);
                double res_trial;
                try {
                    res_trial = residual(trial, g_trial);
                } catch (const NumericalError& e) {
                    if (within_tol) return converged(it);
                    out.status = NewtonOutcome::Status::evaluation_error;
                    out.message = e.what();
                    return out;
                }
                if (res_trial < res) {
                    z = trial;
                    g = g_trial;
                    res = res_trial;
                    accepted = true;
                    break;
                }
            }
            lambda *= 0.5;
        }

        // Stalled against near-null directions: the residual forms a narrow
        // curved valley through the true fixed point (the iterate's
        // linearization degenerates on the cycle set). Minimize |G| along
        // each near-null direction: a geometric scan picks the scale, then
        // the bracket is refined. During polish the scan starts much finer.
        if ((!accepted || res > 0.7 * res_round_start) && degenerate_family) {
            const double t0 = (within_tol ? 1e-9 : 1e-5) * params.R;
            auto line_minimize = [&](const Eigen::VectorXd& dir) {
                const Eigen::VectorXd base_z = to_eigen(z);
                double best_t = 0.0;
                double best_res = res;
                BallPoint best_z;
                Eigen::VectorXd best_g(dim);
                auto try_t = [&](double t) {
                    const BallPoint trial = from_eigen(base_z + t * dir);
                    if (trial.norm_sq() > containment_sq) return;
                    Eigen::VectorXd g_trial(dim);
                    double res_trial;
                    try {
                        res_trial = residual(trial, g_trial);
                    } catch (const NumericalError&) {
                        return;
                    }
                    if (res_trial < best_res) {
                        best_res = res_trial;
                        best_t = t;
                        best_z = trial;
                        best_g = g_trial;
                    }
                };
                for (int sign : {1, -1})
                    for (int m = 0; m < 18; ++m) try_t(sign * t0 * static_cast<double>(1 << m));
                if (best_t != 0.0) {
                    double dt = 0.5 * std::abs(best_t);
                    for (int r = 0; r < 10; ++r, dt *= 0.5) {
                        try_t(best_t + dt);
                        try_t(best_t - dt);
                    }
                    z = best_z;
                    g = best_g;
                    res = best_res;
                    accepted = true;
                }
            };

            int null_dims = 0;
            while (null_dims < dim && sv[dim - 1 - null_dims] < 1e-3 * sv_max) ++null_dims;
            if (null_dims <= 1) {
                line_minimize(svd.matrixV().col(dim - 1));
            } else {
                // The near-null subspace is (at least) a plane and the
                // individual singular vectors inside it are rotationally
                // arbitrary, while the residual valley is extremely
                // anisotropic: a probe direction degrees away from the
                // valley tangent only sees the wall. Resolve the tangent
                // angle first, then descend along it.
                const Eigen::VectorXd va = svd.matrixV().col(dim - 1);
                const Eigen::VectorXd vb = svd.matrixV().col(dim - 2);
                const Eigen::VectorXd base_z = to_eigen(z);
                auto res_at = [&](double alpha, double t) {
                    const Eigen::VectorXd w = std::cos(alpha) * va + std::sin(alpha) * vb;
                    const BallPoint trial = from_eigen(base_z + t * w);
                    if (trial.norm_sq() > containment_sq) return std::numeric_limits<double>::infinity();
                    Eigen::VectorXd g_trial(dim);
                    try {
                        return residual(trial, g_trial);
                    } catch (const NumericalError&) {
                        return std::numeric_limits<double>::infinity();
                    }
                };
                // The wall height is minimized at the tangent angle even
                // when no probe beats the current residual, so the argmin
                // is taken unconditionally and refined before descending.
                double best_alpha = 0.0, best_t = 4e-6 * params.R;
                double best_val = std::numeric_limits<double>::infinity();
                for (const double t : {4e-6 * params.R, 2e-5 * params.R}) {
                    for (int j = 0; j < 24; ++j) {
                        const double alpha = j * std::numbers::pi / 24.0;
                        for (const double tt : {t, -t}) {
                            const double val = res_at(alpha, tt);
                            if (val < best_val) {
                                best_val = val;
                                best_alpha = alpha;
                                best_t = tt;
                            }
                        }
                    }
                }
                double window = std::numbers::pi / 24.0;
                for (int r = 0; r < 14; ++r, window *= 0.5) {
                    for (const double a : {best_alpha - 0.5 * window, best_alpha + 0.5 * window}) {
                        for (const double tt : {best_t, -best_t}) {
                            const double val = res_at(a, tt);
                            if (val < best_val) {
                                best_val = val;
                                best_alpha = a;
                                best_t = tt;
                            }
                        }
                    }
                }
                line_minimize(std::cos(best_alpha) * va + std::sin(best_alpha) * vb);
            }
        }

        if (within_tol) {
            // Polish plateaued: the valley coordinate no longer improves.
            // Slow rounds are normal in very flat valleys, so only a
            // near-zero improvement counts as a strike.
            plateau_strikes = res > 0.995 * res_round_start ? plateau_strikes + 1 : 0;
            if (plateau_strikes >= 2) return converged(it + 1);
            continue;
        }
        if (res < 0.9 * out.best_residual) {
            out.best_residual = res;
            no_improve_strikes = 0;
        } else {
            ++no_improve_strikes;
        }
        if (!accepted) ++no_improve_strikes;
        if (no_improve_strikes >= 3 && it >= 4) break;
    }

    if (res <= params.newton_tol) return converged(out.iterations + 1);
    out.status = truncated_this_run ? NewtonOutcome::Status::singular_jacobian
                                    : NewtonOutcome::Status::no_convergence;
    char msg[64];
    std::snprintf(msg, sizeof(msg), "no convergence (best residual %.3e)", out.best_residual);
    out.message = msg;
    return out;
}

int minimal_period(const MapHandle& map, const BallPoint& z, int n, const Params& params) {
    BallPoint current = z;
    int best = n;
    for (int d = 1; d < n; ++d) {
        current = map.eval(current);
        if (n % d == 0 && distance(current, z) <= params.dedup_radius) {
            best = d;
            break;
        }
    }
    return best;
}

namespace {

std::vector<BallPoint> build_seeds(const Params& params, int n, int grid_resolution) {
    std::vector<BallPoint> seeds;
    const int dims = 2 * params.N;
    const double R = params.R;
    const double R2 = params.R2();
    const double limit_sq = R2 * 0.98;
    // The perturbation can drift |z_N|^2 by up to 2 eps k per application
    // (capped at the cutoff support edge 8R^2/9), so near-boundary points
    // whose last coordinate sits in the cutoff support can leave the open
    // ball over n applications. Such seeds carry no interior dynamics
    // (the map is a rigid rotation out there); skip them.
    const double drift = 2.0 * params.epsilon * params.k * n;
    auto escape_safe = [&](const BallPoint& z) {
        const double ell = std::norm(z.coords.back());
        if (ell <= R2 / 9.0 || ell >= 8.0 * R2 / 9.0) return true;
        const double head_sq = z.norm_sq() - ell;
        return head_sq + std::min(8.0 * R2 / 9.0, ell + drift) < R2 * (1.0 - 1e-9);
    };

    // Uniform grid over [-R, R]^{2N}, cell centers, filtered to the ball.
    if (grid_resolution >= 2) {
        std::vector<int> idx(static_cast<std::size_t>(dims), 0);
        const double cell = 2.0 * R / grid_resolution;
        while (true) {
            std::vector<double> x(static_cast<std::size_t>(dims));
            for (int d = 0; d < dims; ++d) x[static_cast<std::size_t>(d)] = -R + (idx[static_cast<std::size_t>(d)] + 0.5) * cell;
            BallPoint z = from_reals(x);
            if (z.norm_sq() <= limit_sq && escape_safe(z)) seeds.push_back(std::move(z));
            int d = 0;
            while (d < dims && ++idx[static_cast<std::size_t>(d)] == grid_resolution) {
                idx[static_cast<std::size_t>(d)] = 0;
                ++d;
            }
            if (d == dims) break;
        }
    }

    // Dense rings on the invariant plane at ell in {0.4, 0.5, 0.6} R^2.
    const int ring_count = 64 * params.k;
    for (double frac : {0.4, 0.5, 0.6}) {
        const double r = std::sqrt(frac * params.R2());
        for (int j = 0; j < ring_count; ++j) {
            const double theta = 2.0 * std::numbers::pi * j / ring_count;
            PolarLast p;
            p.head.assign(static_cast<std::size_t>(params.N - 1), Complex{0.0, 0.0});
            p.ell = r * r;
            p.theta = theta;
            seeds.push_back(p.to_point());
        }
    }
    return seeds;
}

bool key_less(const std::vector<double>& a, const std::vector<double>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

namespace {

// Single-linkage clustering within radius (union-find), then one record
// per cluster: smallest residual, ties broken by canonical order. Greedy
// scan-merging is order-dependent when hits straddle the radius; the
// transitive closure is not.
std::vector<FixedPointRecord> dedup_records(std::vector<FixedPointRecord> records, double radius) {
    const std::size_t n = records.size();
    std::vector<std::size_t> parent(n);
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    std::function<std::size_t(std::size_t)> find = [&](std::size_t i) {
        while (parent[i] != i) {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        return i;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (distance(records[i].point, records[j].point) <= radius) {
                const std::size_t a = find(i), b = find(j);
                if (a != b) parent[a] = b;
            }

    std::vector<std::vector<double>> keys(n);
    for (std::size_t i = 0; i < n; ++i) keys[i] = point_key(records[i].point);
    auto better = [&](std::size_t a, std::size_t b) {
        if (records[a].residual != records[b].residual) return records[a].residual < records[b].residual;
        if (keys[a] != keys[b]) return key_less(keys[a], keys[b]);
        return to_reals(records[a].point) < to_reals(records[b].point);
    };
    std::vector<std::size_t> rep(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t root = find(i);
        if (rep[root] == n || better(i, rep[root])) rep[root] = i;
    }

    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < n; ++i)
        if (rep[find(i)] == i) chosen.push_back(i);
    std::sort(chosen.begin(), chosen.end(), [&](std::size_t a, std::size_t b) {
        if (keys[a] != keys[b]) return key_less(keys[a], keys[b]);
        return to_reals(records[a].point) < to_reals(records[b].point);
    });
    std::vector<FixedPointRecord> result;
    result.reserve(chosen.size());
    for (std::size_t i : chosen) result.push_back(std::move(records[i]));
    return result;
}

}  // namespace

std::vector<FixedPointRecord> enumerate_fixed_points(const MapHandle& map, int n, const Params& params,
                                                     int grid_resolution, EnumerationLog* log) {
    if (grid_resolution < 2) throw std::invalid_argument("enumerate_fixed_points: grid_resolution must be >= 2");
    const std::vector<BallPoint> seeds = build_seeds(params, n, grid_resolution);
    std::vector<NewtonOutcome> outcomes(seeds.size());
    parallel_for(seeds.size(), [&](std::size_t i) {
        outcomes[i] = newton_fixed_point(map, n, seeds[i], params, /*polish=*/false);
    });

    if (log) {
        log->seeds_total = seeds.size();
        for (const NewtonOutcome& o : outcomes) {
            switch (o.status) {
                case NewtonOutcome::Status::converged: ++log->converged; break;
                case NewtonOutcome::Status::no_convergence: ++log->no_convergence; break;
                case NewtonOutcome::Status::singular_jacobian: ++log->singular; break;
                case NewtonOutcome::Status::evaluation_error:
                    ++log->eval_errors;
                    if (log->error_messages.size() < 16) log->error_messages.push_back(o.message);
                    break;
            }
        }
    }

    std::vector<FixedPointRecord> converged;
    for (NewtonOutcome& o : outcomes)
        if (o.status == NewtonOutcome::Status::converged) converged.push_back(std::move(*o.record));

    std::vector<FixedPointRecord> result = dedup_records(std::move(converged), params.dedup_radius);

    // Polish one representative per cluster toward the floating-point
    // floor (only degenerate families move; isolated roots return
    // immediately), then re-deduplicate: hits that were smeared along a
    // degenerate valley collapse onto the true fixed point.
    parallel_for(result.size(), [&](std::size_t i) {
        const BallPoint original_seed = result[i].seed;
        NewtonOutcome polished = newton_fixed_point(map, n, result[i].point, params, /*polish=*/true);
        if (polished.status == NewtonOutcome::Status::converged) {
            result[i] = *polished.record;
            result[i].seed = original_seed;
        }
    });
    return dedup_records(std::move(result), params.dedup_radius);
}

std::vector<CycleClass> cycle_space(const MapHandle& map, int k, const Params& params,
                                    int grid_resolution, EnumerationLog* log) {
    if (k < 1) throw std::invalid_argument("cycle_space: k must be >= 1");
    const std::vector<FixedPointRecord> records = enumerate_fixed_points(map, k, params, grid_resolution, log);
    return assemble_cycle_classes(map, records, k, params);
}

std::vector<CycleClass> assemble_cycle_classes(const MapHandle& map,
                                               const std::vector<FixedPointRecord>& records, int k,
                                               const Params& params) {
    std::vector<CycleClass> classes;
    for (const FixedPointRecord& rec : records) {
        if (rec.minimal_period != k) continue;
        std::vector<BallPoint> orbit;
        orbit.reserve(static_cast<std::size_t>(k));
        orbit.push_back(rec.point);
        for (int i = 1; i < k; ++i) orbit.push_back(map.eval(orbit.back()));

        CycleClass cls;
        cls.order = k;
        cls.non_isolated = rec.non_isolated;
        cls.points = canonical_rotation(orbit);
        cls.residuals.resize(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) {
            const BallPoint image = map.eval(cls.points[static_cast<std::size_t>(i)]);
            cls.residuals[static_cast<std::size_t>(i)] =
                distance(image, cls.points[static_cast<std::size_t>((i + 1) % k)]);
        }

        bool duplicate = false;
        for (const CycleClass& existing : classes)
            if (same_class(existing, cls, params.dedup_radius)) {
                duplicate = true;
                break;
            }
        if (!duplicate) classes.push_back(std::move(cls));
    }

    std::sort(classes.begin(), classes.end(), [](const CycleClass& a, const CycleClass& b) {
        return key_less(flatten_rounded(a.points, 0), flatten_rounded(b.points, 0));
    });
    return classes;
}

}  // namespace ballmap
