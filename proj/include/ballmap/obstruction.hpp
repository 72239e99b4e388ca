#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ballmap/dynamics.hpp"

namespace ballmap {

/// Signals that a cycle image failed the cycle-class invariants (the
/// numerical preconditions of the involution were not met).
class CycleInvariantViolation : public std::runtime_error {
  public:
    explicit CycleInvariantViolation(const std::string& msg) : std::runtime_error(msg) {}
};

/// gcd with a Bezout certificate: g = n1*a + n2*b, g >= 1 when both inputs
/// are nonzero. Rejects (0, 0).
struct BezoutResult {
    long long g;
    long long n1;
    long long n2;
};
BezoutResult gcd_certified(long long a, long long b);

/// Outcome of the parity obstruction at even order 2k: an odd finite count
/// of 2k-cycles rules out every square root; an even count is inconclusive.
/// The parity argument needs the cycle set to be finite, so only isolated
/// classes are counted; sampled fixed-point families (invariant circles)
/// void the obstruction and force Inconclusive.
struct Certificate {
    enum class Verdict { NoSquareRoot, Inconclusive };
    Verdict verdict = Verdict::Inconclusive;
    int cycle_order = 0;
    std::size_t cycle_count = 0;             // isolated classes only
    std::size_t non_isolated_count = 0;      // sampled family representatives
    bool finite_evidence = true;             // no families found
    std::vector<CycleClass> evidence;
    Params params;
    // Completeness metadata: the verdict is conditional on the enumeration
    // that produced `evidence` (grid density, tolerances).
    int grid_resolution = 0;

    static const char* verdict_name(Verdict v) {
        return v == Verdict::NoSquareRoot ? "NoSquareRoot" : "Inconclusive";
    }
};

/// The involution on 2k-cycles induced by a square root candidate psi of
/// phi: [x_1,...,x_2k] -> [psi(x_1),...,psi(x_2k)], canonicalized. Checks
/// that psi commutes with phi on the cycle's points within tol and that the
/// image satisfies the cycle-class invariants; throws
/// CycleInvariantViolation otherwise.
CycleClass milnor_involution(const MapHandle& psi, const MapHandle& phi, const CycleClass& cycle, double tol);

/// Pairing of a cycle list under the involution. A class within
/// dedup_radius of its own image is a free-action violation (impossible
/// when psi^2 = phi exactly); image classes missing from the list indicate
/// an incomplete enumeration.
struct PairingReport {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  // i < j, involution-matched
    std::vector<std::size_t> self_paired;                    // free-action violations
    std::vector<std::pair<std::size_t, std::string>> violations;
    bool perfectly_paired = false;
};
PairingReport check_free_action(const MapHandle& psi, const MapHandle& phi,
                                const std::vector<CycleClass>& cycles, double tol);

/// verdict = NoSquareRoot iff the isolated-class count is odd and no
/// non-isolated family was sampled. The caller is responsible for `cycles`
/// being the complete enumeration at this order. Order must be even.
Certificate parity_certificate(const std::vector<CycleClass>& cycles, int order, const Params& params,
                               int grid_resolution);

/// Direct candidate check: max |psi(psi(z)) - phi(z)| over the samples
/// against tol, plus the commutation defect max |psi(phi(z)) - phi(psi(z))|.
struct SquareRootReport {
    bool is_square_root = false;
    double max_square_defect = 0.0;
    double max_commutation_defect = 0.0;
    BallPoint worst_point;
    double tol = 0.0;
    std::size_t samples = 0;
};
SquareRootReport check_square_root(const MapHandle& phi, const MapHandle& psi,
                                   const std::vector<BallPoint>& sample_points, double tol);

}  // namespace ballmap
