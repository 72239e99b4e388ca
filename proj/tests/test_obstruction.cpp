#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ballmap/obstruction.hpp"
#include "ballmap/sampling.hpp"
#include "plane_scan_oracle.hpp"

using namespace ballmap;
using ballmap_test::plane;

namespace {

constexpr double kPi = std::numbers::pi;

const Params& defaults() {
    static const Params p = Params::defaults();
    return p;
}

// A 6-cycle of the time-1 flow through the circle point at angle theta0,
// built from the exact rotation.
CycleClass circle_cycle(const MapHandle& flow, double theta0) {
    std::vector<BallPoint> orbit;
    orbit.push_back(plane(defaults(), 0.5, theta0));
    for (int i = 1; i < 6; ++i) orbit.push_back(flow.eval(orbit.back()));
    CycleClass cls;
    cls.order = 6;
    cls.points = canonical_rotation(orbit);
    cls.residuals.assign(6, 0.0);
    return cls;
}

}  // namespace

TEST_CASE("gcd_certified") {
    SUBCASE("examples") {
        const BezoutResult a = gcd_certified(5, 6);
        CHECK(a.g == 1);
        CHECK(a.n1 * 5 + a.n2 * 6 == 1);
        CHECK(gcd_certified(4, 6).g == 2);
        CHECK(gcd_certified(9, 9).g == 9);
        CHECK(gcd_certified(0, 7).g == 7);
        CHECK(gcd_certified(-4, 6).g == 2);
        CHECK_THROWS_AS(gcd_certified(0, 0), std::invalid_argument);
    }
    SUBCASE("Bezout identity and divisibility on random pairs") {
        std::mt19937_64 rng(41);
        std::uniform_int_distribution<long long> dist(-1000, 1000);
        for (int i = 0; i < 300; ++i) {
            const long long a = dist(rng), b = dist(rng);
            if (a == 0 && b == 0) continue;
            const BezoutResult r = gcd_certified(a, b);
            CHECK(r.g >= 1);
            CHECK(r.n1 * a + r.n2 * b == r.g);
            if (a != 0) CHECK(a % r.g == 0);
            if (b != 0) CHECK(b % r.g == 0);
        }
    }
    SUBCASE("odd with even gives an odd gcd strictly below the even input") {
        std::mt19937_64 rng(43);
        std::uniform_int_distribution<long long> dist(1, 500);
        for (int i = 0; i < 200; ++i) {
            const long long a = 2 * dist(rng) - 1;  // odd
            const long long b = 2 * dist(rng);      // even
            const BezoutResult r = gcd_certified(a, b);
            CHECK(r.g % 2 == 1);
            CHECK(r.g >= 1);
            CHECK(r.g < b);
        }
    }
}

TEST_CASE("milnor involution on circle cycles of the unperturbed flow") {
    const Params p = defaults();
    const MapHandle phi = make_flow_h_map(p, 1.0);
    const MapHandle psi = make_flow_h_map(p, 0.5);  // exact square root of phi

    const CycleClass cycle = circle_cycle(phi, 0.1);

    SUBCASE("image is the half-step rotated class") {
        const CycleClass image = milnor_involution(psi, phi, cycle, 1e-10);
        const CycleClass expected = circle_cycle(phi, 0.1 + kPi / 6.0);
        CHECK(same_class(image, expected, 1e-10));
    }
    SUBCASE("applying the involution twice returns the original class") {
        const CycleClass image = milnor_involution(psi, phi, cycle, 1e-10);
        const CycleClass twice = milnor_involution(psi, phi, image, 1e-10);
        CHECK(same_class(twice, cycle, 1e-10));
    }
    SUBCASE("canonical representative independent of the input rotation") {
        CycleClass shifted = cycle;
        std::rotate(shifted.points.begin(), shifted.points.begin() + 2, shifted.points.end());
        shifted.points = canonical_rotation(shifted.points);
        const CycleClass a = milnor_involution(psi, phi, cycle, 1e-10);
        const CycleClass b = milnor_involution(psi, phi, shifted, 1e-10);
        REQUIRE(a.points.size() == b.points.size());
        for (std::size_t i = 0; i < a.points.size(); ++i) CHECK(a.points[i].coords == b.points[i].coords);
    }
    SUBCASE("odd order rejected") {
        CycleClass odd = cycle;
        odd.order = 5;
        odd.points.resize(5);
        CHECK_THROWS_AS(milnor_involution(psi, phi, odd, 1e-10), std::invalid_argument);
    }
    SUBCASE("non-commuting candidate is reported") {
        // A rigid rotation by an unrelated angle does not commute with the
        // full flow on the cycle's circle... it actually does (both are
        // diagonal rotations), so corrupt with the perturbed map instead.
        const MapHandle bad = make_phi_map(p);
        CycleClass off_band = circle_cycle(phi, 0.1);
        // move the cycle into the cutoff support where the two maps differ
        CHECK_THROWS_AS(milnor_involution(bad, phi, off_band, 1e-14), CycleInvariantViolation);
    }
}

TEST_CASE("check_free_action") {
    const Params p = defaults();
    const MapHandle phi = make_flow_h_map(p, 1.0);
    const MapHandle psi = make_flow_h_map(p, 0.5);

    SUBCASE("half-step rotated pair is matched into one orbit") {
        const std::vector<CycleClass> cycles = {circle_cycle(phi, 0.1),
                                                circle_cycle(phi, 0.1 + kPi / 6.0)};
        const PairingReport report = check_free_action(psi, phi, cycles, 1e-10);
        CHECK(report.pairs.size() == 1);
        CHECK(report.self_paired.empty());
        CHECK(report.violations.empty());
        CHECK(report.perfectly_paired);
    }
    SUBCASE("empty list pairs vacuously") {
        const PairingReport report = check_free_action(psi, phi, {}, 1e-10);
        CHECK(report.pairs.empty());
        CHECK(report.self_paired.empty());
        CHECK(report.violations.empty());
        CHECK(report.perfectly_paired);
    }
    SUBCASE("identity as candidate root fixes every class") {
        // identity^2 != phi, and its involution image is the class itself:
        // the free-action checker must flag it
        const MapHandle id = make_identity_map(p);
        const std::vector<CycleClass> cycles = {circle_cycle(phi, 0.3)};
        const PairingReport report = check_free_action(id, phi, cycles, 1e-10);
        CHECK(report.self_paired.size() == 1);
        CHECK_FALSE(report.perfectly_paired);
    }
}

TEST_CASE("parity_certificate") {
    const Params p = defaults();
    const MapHandle phi = make_flow_h_map(p, 1.0);
    const CycleClass one = circle_cycle(phi, 0.0);
    const CycleClass other = circle_cycle(phi, 0.5);

    SUBCASE("odd count refutes square roots") {
        const Certificate cert = parity_certificate({one}, 6, p, 12);
        CHECK(cert.verdict == Certificate::Verdict::NoSquareRoot);
        CHECK(cert.cycle_count == 1);
        CHECK(cert.finite_evidence);
        CHECK(cert.evidence.size() == 1);
    }
    SUBCASE("even count is inconclusive") {
        CHECK(parity_certificate({one, other}, 6, p, 12).verdict == Certificate::Verdict::Inconclusive);
    }
    SUBCASE("zero count is inconclusive") {
        CHECK(parity_certificate({}, 6, p, 12).verdict == Certificate::Verdict::Inconclusive);
    }
    SUBCASE("odd order rejected") {
        CHECK_THROWS_AS(parity_certificate({one}, 5, p, 12), std::invalid_argument);
        CHECK_THROWS_AS(parity_certificate({one}, 0, p, 12), std::invalid_argument);
    }
    SUBCASE("sampled fixed-point families void the obstruction") {
        CycleClass family = other;
        family.non_isolated = true;
        const Certificate cert = parity_certificate({one, family}, 6, p, 12);
        CHECK(cert.cycle_count == 1);
        CHECK(cert.non_isolated_count == 1);
        CHECK_FALSE(cert.finite_evidence);
        CHECK(cert.verdict == Certificate::Verdict::Inconclusive);
    }
}

TEST_CASE("check_square_root") {
    const Params p = defaults();
    Rng rng(47);
    const std::vector<BallPoint> samples = sample_ball(100, p, 0.95, rng);

    SUBCASE("the half-time flow is a square root of the full flow") {
        const SquareRootReport report =
            check_square_root(make_flow_h_map(p, 1.0), make_flow_h_map(p, 0.5), samples, 1e-8);
        CHECK(report.is_square_root);
        CHECK(report.max_square_defect <= 1e-12);
        CHECK(report.max_commutation_defect <= 1e-12);
    }
    SUBCASE("identity is not a square root of the perturbed map") {
        const SquareRootReport report =
            check_square_root(make_phi_map(p), make_identity_map(p), samples, 1e-8);
        CHECK_FALSE(report.is_square_root);
    }
    SUBCASE("the unperturbed half-flow fails on the cutoff support") {
        std::vector<BallPoint> probe = samples;
        probe.push_back(plane(p, 0.5, kPi / 6.0));  // where the perturbation moves ell by 2 eps k
        const SquareRootReport report =
            check_square_root(make_phi_map(p), make_flow_h_map(p, 0.5), probe, 1e-8);
        CHECK_FALSE(report.is_square_root);
        CHECK(report.max_square_defect > 1e-4);
    }
}
