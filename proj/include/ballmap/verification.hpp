#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ballmap/dynamics.hpp"
#include "ballmap/sampling.hpp"

namespace ballmap {

/// One property check: pass iff max_defect <= tolerance. Reproducible: the
/// RNG seed that generated the samples is recorded.
struct CheckReport {
    std::string name;
    std::size_t samples = 0;
    double max_defect = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    BallPoint worst_point;
    std::uint64_t seed = 0;
    std::string note;
};

/// Max-norm of J^T Omega J - Omega, J the central finite-difference
/// Jacobian of the map at z and Omega the standard symplectic matrix in
/// interleaved coordinates (x1,y1,...,xN,yN). Throws NumericalError if the
/// FD stencil leaves the ball.
double symplectic_defect(const MapHandle& map, const BallPoint& z, double fd_step);

/// Fixed-point structure of the unperturbed time-1 flow at order 2k: every
/// converged fixed point of the 2k-th iterate lies near {0} union the
/// circle {head = 0, ell = R^2/2}, and the flow advances theta on that
/// circle by exactly pi/k.
struct FixedSetReport {
    CheckReport membership;  // distance to {0} u C, tolerance 1e-7
    CheckReport rotation;    // |theta-advance - pi/k| on C, tolerance 1e-12
};
FixedSetReport check_fixed_set_unperturbed(const Params& params, const Profile& profile, int grid_resolution);

/// On admissible outer-band samples Phi must equal the rigid rotation
/// exactly (both sides are closed-form paths). Inadmissible samples are
/// skipped with a note.
CheckReport check_boundary_rigidity(const Params& params, const Profile& profile, const Cutoff& cutoff,
                                    int samples, std::uint64_t seed);

/// theta-advance of one application of Phi on the invariant plane lies in
/// (0, pi/k]; equality only when the post-step ell is R^2/2.
CheckReport check_rotation_step(const Params& params, const Profile& profile, const Cutoff& cutoff,
                                int samples, std::uint64_t seed);

struct SuiteOptions {
    std::vector<std::string> selection;  // empty = all checks
    int samples = 200;                   // for the sampled checks
    int grid_resolution = 8;             // for the enumeration-backed checks
    std::uint64_t seed = 0x5EEDBA11;
};

/// Runs the selected checks in declared order with fixed seeds;
/// deterministic output, failures collected rather than thrown.
std::vector<CheckReport> run_suite(const Params& params, const SuiteOptions& options);

/// Names understood by run_suite's selection.
std::vector<std::string> suite_check_names();

}  // namespace ballmap
