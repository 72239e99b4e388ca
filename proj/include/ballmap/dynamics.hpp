#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ballmap/maps.hpp"

namespace ballmap {

/// A converged fixed point of the n-th iterate, with provenance.
struct FixedPointRecord {
    BallPoint point;
    int iterate_order = 0;   // fixed point of map^iterate_order
    double residual = 0.0;   // |map^n(z) - z|
    int minimal_period = 0;  // smallest divisor d of n with map^d(z) ~ z
    BallPoint seed;
    int newton_iterations = 0;
    // The point sits on a positive-dimensional family of fixed points (a
    // probe along the Jacobian's null direction stays at fixed-point
    // residual): e.g. the invariant circle of the unperturbed flow. Such
    // families are sampled, not enumerated.
    bool non_isolated = false;
};

/// An equivalence class [x_1,...,x_k] of a primitive k-cycle under cyclic
/// shift. points holds the canonical rotation: the lexicographically
/// smallest flattened real tuple over all k shifts (coordinates rounded to
/// 12 significant digits for the comparison).
struct CycleClass {
    std::vector<BallPoint> points;
    int order = 0;
    std::vector<double> residuals;  // per-link |map(x_i) - x_{i+1}|
    bool non_isolated = false;      // built from a sampled fixed-point family
};

struct NewtonOutcome {
    enum class Status { converged, no_convergence, singular_jacobian, evaluation_error };
    Status status = Status::no_convergence;
    std::optional<FixedPointRecord> record;  // set iff converged
    int iterations = 0;
    double best_residual = 0.0;
    bool used_least_squares = false;  // rank-deficient Jacobian fallback fired
    std::string message;
};

/// Per-run telemetry for enumeration (optional).
struct EnumerationLog {
    std::size_t seeds_total = 0;
    std::size_t converged = 0;
    std::size_t no_convergence = 0;
    std::size_t singular = 0;
    std::size_t eval_errors = 0;
    std::vector<std::string> error_messages;  // capped
};

/// n-fold composition. Throws NumericalError if an intermediate image
/// leaves the ball (possible for user plug-ins, not for Phi).
BallPoint iterate(const MapHandle& map, BallPoint z, int n);

/// Damped Newton for map^n(z) = z, seeded at `seed`. The Newton system uses
/// the central finite-difference Jacobian of map^n (step 1e-6 * R); steps
/// are halved (up to 30 times) to keep iterates inside the ball and to
/// enforce residual decrease. Rank-deficient Jacobians fall back to a
/// truncated-SVD least-squares step, which handles one-parameter families
/// of fixed points. Near such families the linearization degenerates and
/// the residual tolerance alone localizes the point poorly along the flat
/// directions; converged points are therefore polished toward the
/// floating-point floor before being reported. No convergence within 50
/// iterations is a reported outcome, not an error.
NewtonOutcome newton_fixed_point(const MapHandle& map, int n, const BallPoint& seed, const Params& params);

/// As above with the post-convergence polish phase made optional
/// (enumerate_fixed_points defers polishing to deduplicated cluster
/// representatives).
NewtonOutcome newton_fixed_point(const MapHandle& map, int n, const BallPoint& seed, const Params& params,
                                 bool polish);

/// Smallest divisor d of n with |map^d(z) - z| <= dedup_radius. z must be a
/// fixed point of map^n.
int minimal_period(const MapHandle& map, const BallPoint& z, int n, const Params& params);

/// Seeds a uniform grid over [-R, R]^{2N} intersected with the ball, plus a
/// dense ring of seeds on the invariant plane (head = 0) at
/// ell in {0.4, 0.5, 0.6} R^2; runs newton_fixed_point on every seed
/// (concurrently), deduplicates converged points within dedup_radius and
/// returns them sorted in canonical coordinate order with minimal periods
/// attached. Deterministic for fixed inputs regardless of scheduling.
std::vector<FixedPointRecord> enumerate_fixed_points(const MapHandle& map, int n, const Params& params,
                                                     int grid_resolution, EnumerationLog* log = nullptr);

/// The space of primitive k-cycles: fixed points of map^k with minimal
/// period exactly k, assembled into orbits, canonicalized and deduplicated.
std::vector<CycleClass> cycle_space(const MapHandle& map, int k, const Params& params,
                                    int grid_resolution, EnumerationLog* log = nullptr);

/// Cycle assembly from an existing enumeration (records must come from
/// enumerate_fixed_points(map, k, ...)).
std::vector<CycleClass> assemble_cycle_classes(const MapHandle& map,
                                               const std::vector<FixedPointRecord>& records, int k,
                                               const Params& params);

/// The rotation of pts with the lexicographically smallest flattened real
/// tuple (12-significant-digit rounding stabilizes the comparison against
/// last-bit noise).
std::vector<BallPoint> canonical_rotation(const std::vector<BallPoint>& pts);

/// Round to 12 significant digits (comparison key helper).
double round_sig12(double x);

/// True if the two classes contain the same point set within tol.
bool same_class(const CycleClass& a, const CycleClass& b, double tol);

}  // namespace ballmap
