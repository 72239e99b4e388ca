#pragma once

#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ballmap {

/// All construction constants for one map instance. Single source of truth:
/// every module takes a Params (or objects built from one).
///
/// Constraints enforced by validate():
///   N >= 1, R > 0, k >= 1
///   0 < delta < pi/(2k)
///   0 < epsilon < epsilon_max(R, k)
///   integrator_step, newton_tol, dedup_radius > 0
struct Params {
    int N = 2;                      // complex dimension
    double R = 1.0;                 // ball radius
    int k = 3;                      // cycle order (the map has one 2k-cycle)
    double delta = std::numbers::pi / 60.0;  // outer-band angular rate
    double epsilon = default_epsilon(1.0, 3);
    double integrator_step = 1e-3;
    double newton_tol = 1e-10;
    double dedup_radius = 1e-5;

    double R2() const { return R * R; }
    double theta_rate_cap() const { return std::numbers::pi / (2.0 * k); }

    /// Largest admissible perturbation strength. The second term is the
    /// conservative drift bound: total ell-drift over 2k unit-time steps,
    /// 4*eps*k^2, must stay below the R^2/9 annulus margin.
    static double epsilon_max(double R, int k) {
        const double R2 = R * R;
        const double a = 7.0 * R2 * R2 / (324.0 * k * k);
        const double b = R2 / (36.0 * k * k);
        return a < b ? a : b;
    }
    double epsilon_max() const { return epsilon_max(R, k); }

    static double default_epsilon(double R, int k) { return 0.5 * epsilon_max(R, k); }

    /// Throws std::invalid_argument naming the violated invariant.
    void validate() const;

    static Params defaults() { return Params{}; }
};

inline void Params::validate() const {
    auto fail = [](const std::string& msg) { throw std::invalid_argument("Params: " + msg); };
    if (N < 1) fail("N must be >= 1 (got " + std::to_string(N) + ")");
    if (!(R > 0.0)) fail("R must be > 0 (got " + std::to_string(R) + ")");
    if (k < 1) fail("k must be >= 1 (got " + std::to_string(k) + ")");
    const double cap = theta_rate_cap();
    if (!(delta > 0.0) || !(delta < cap))
        fail("delta must satisfy 0 < delta < pi/(2k) = " + std::to_string(cap) + " (got " +
             std::to_string(delta) + ")");
    const double emax = epsilon_max();
    if (!(epsilon > 0.0) || !(epsilon < emax))
        fail("epsilon must satisfy 0 < epsilon < " + std::to_string(emax) +
             " = min(7R^4/(324k^2), R^2/(36k^2)) (got " + std::to_string(epsilon) + ")");
    if (!(integrator_step > 0.0)) fail("integrator_step must be > 0");
    if (!(newton_tol > 0.0)) fail("newton_tol must be > 0");
    if (!(dedup_radius > 0.0)) fail("dedup_radius must be > 0");
}

}  // namespace ballmap
