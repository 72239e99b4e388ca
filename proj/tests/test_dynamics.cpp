#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "ballmap/dynamics.hpp"
#include "ballmap/obstruction.hpp"
#include "plane_scan_oracle.hpp"

using namespace ballmap;
using ballmap_test::plane;

namespace {

constexpr double kPi = std::numbers::pi;

// Small grid keeps the unit tests quick; the ring seeds already pin down
// the invariant-plane cycles, the grid guards the rest.
constexpr int kTestGrid = 5;

const Params& defaults() {
    static const Params p = Params::defaults();
    return p;
}

BallPoint exact_cycle_point(int j) { return plane(defaults(), 0.5, j * kPi / 3.0); }

}  // namespace

TEST_CASE("iterate") {
    const Params p = defaults();
    const MapHandle phi = make_phi_map(p);

    CHECK(iterate(phi, BallPoint::zero(2), 6).norm_sq() == 0.0);
    CHECK(distance(iterate(phi, exact_cycle_point(0), 6), exact_cycle_point(0)) < 1e-9);

    const MapHandle id = make_identity_map(p);
    const BallPoint z = plane(p, 0.3, 1.1);
    CHECK(iterate(id, z, 17).coords == z.coords);

    SUBCASE("ball escape is reported for plug-in maps") {
        MapHandle outward{"outward", p, [](const BallPoint& w) {
                              BallPoint out = w;
                              for (auto& c : out.coords) c *= 1.5;
                              return out;
                          }};
        BallPoint big;
        big.coords = {Complex{0.5, 0.0}, Complex{0.5, 0.0}};
        CHECK_THROWS_AS(iterate(outward, big, 3), NumericalError);
    }
}

TEST_CASE("newton_fixed_point") {
    const Params p = defaults();
    const MapHandle phi = make_phi_map(p);

    SUBCASE("exact cycle point converges immediately") {
        const NewtonOutcome o = newton_fixed_point(phi, 6, exact_cycle_point(0), p);
        REQUIRE(o.status == NewtonOutcome::Status::converged);
        CHECK(o.record->residual < 1e-12);
        CHECK(o.record->newton_iterations <= 1);
        CHECK(o.record->minimal_period == 6);
        CHECK_FALSE(o.record->non_isolated);
    }
    SUBCASE("origin converges to itself") {
        const NewtonOutcome o = newton_fixed_point(phi, 6, BallPoint::zero(2), p);
        REQUIRE(o.status == NewtonOutcome::Status::converged);
        CHECK(o.record->point.norm_sq() < 1e-20);
        CHECK(o.record->minimal_period == 1);
    }
    SUBCASE("nearby seed lands on the cycle point, cross-checked by a scan oracle") {
        const NewtonOutcome o = newton_fixed_point(phi, 6, plane(p, 0.49, 0.05), p);
        REQUIRE(o.status == NewtonOutcome::Status::converged);
        CHECK(distance(o.record->point, exact_cycle_point(0)) <= p.dedup_radius);
        // independent check: iterate residual, then derivative-free
        // localization of the same fixed point on the plane
        CHECK(distance(iterate(phi, o.record->point, 6), o.record->point) <= p.newton_tol);
        const std::vector<BallPoint> oracle = ballmap_test::plane_fixed_points_oracle(
            phi, 6, 0.45, 0.55, 9, 48, 1e-8, 1e-4);
        double nearest = 1e300;
        for (const BallPoint& w : oracle) nearest = std::min(nearest, distance(w, o.record->point));
        CHECK(nearest < 1e-5);
    }
}

TEST_CASE("minimal_period") {
    const Params p = defaults();
    const MapHandle phi = make_phi_map(p);
    CHECK(minimal_period(phi, exact_cycle_point(0), 6, p) == 6);
    CHECK(minimal_period(phi, BallPoint::zero(2), 6, p) == 1);
    CHECK(minimal_period(make_identity_map(p), plane(p, 0.2, 0.4), 4, p) == 1);
    // cycle points have period 3 under the squared map
    CHECK(minimal_period(make_phi_squared_map(p), exact_cycle_point(0), 6, p) == 3);
}

TEST_CASE("enumerate_fixed_points") {
    const Params p = defaults();

    SUBCASE("grid_resolution must be at least 2") {
        CHECK_THROWS_AS(enumerate_fixed_points(make_phi_map(p), 6, p, 1), std::invalid_argument);
    }

    SUBCASE("unperturbed flow: origin plus the invariant circle") {
        const MapHandle flow_h = make_flow_h_map(p, 1.0);
        const std::vector<FixedPointRecord> records = enumerate_fixed_points(flow_h, 6, p, kTestGrid);
        REQUIRE(!records.empty());
        bool found_origin = false;
        std::size_t circle_count = 0;
        for (const FixedPointRecord& rec : records) {
            const double to_origin = std::sqrt(rec.point.norm_sq());
            double head_sq = 0.0;
            for (std::size_t i = 0; i + 1 < rec.point.dim(); ++i) head_sq += std::norm(rec.point.coords[i]);
            const double dr = std::abs(rec.point.coords.back()) - p.R / std::numbers::sqrt2;
            const double to_circle = std::sqrt(head_sq + dr * dr);
            CHECK(std::min(to_origin, to_circle) < 1e-7);
            if (to_origin < 1e-7) found_origin = true;
            if (to_circle < 1e-7) {
                ++circle_count;
                CHECK(rec.non_isolated);  // points of a one-parameter family
                CHECK(rec.minimal_period == 6);
            }
        }
        CHECK(found_origin);
        CHECK(circle_count > 10);
    }

    SUBCASE("perturbed map: exactly the origin and the 2k cycle points") {
        const MapHandle phi = make_phi_map(p);
        const std::vector<FixedPointRecord> records = enumerate_fixed_points(phi, 6, p, kTestGrid);
        REQUIRE(records.size() == 7);
        int on_cycle = 0, at_origin = 0;
        for (const FixedPointRecord& rec : records) {
            if (rec.point.norm_sq() < 1e-14) {
                ++at_origin;
                CHECK(rec.minimal_period == 1);
                continue;
            }
            const PolarLast pl = PolarLast::from_point(rec.point);
            CHECK(std::abs(pl.ell - 0.5) < 1e-6);
            const double frac = pl.theta / (kPi / 3.0);
            CHECK(std::abs(frac - std::round(frac)) * (kPi / 3.0) < 1e-6);
            CHECK(rec.minimal_period == 6);
            CHECK_FALSE(rec.non_isolated);
            ++on_cycle;
        }
        CHECK(at_origin == 1);
        CHECK(on_cycle == 6);
    }

    SUBCASE("rigid rotation has only the origin") {
        const std::vector<FixedPointRecord> records =
            enumerate_fixed_points(make_rigid_rotation_map(p), 6, p, 4);
        REQUIRE(records.size() == 1);
        CHECK(records[0].point.norm_sq() < 1e-20);
    }

    SUBCASE("deterministic across thread counts") {
        const MapHandle phi = make_phi_map(p);
        setenv("BALLMAP_THREADS", "1", 1);
        const std::vector<FixedPointRecord> serial = enumerate_fixed_points(phi, 1, p, 4);
        unsetenv("BALLMAP_THREADS");
        const std::vector<FixedPointRecord> parallel = enumerate_fixed_points(phi, 1, p, 4);
        REQUIRE(serial.size() == parallel.size());
        for (std::size_t i = 0; i < serial.size(); ++i) {
            CHECK(serial[i].point.coords == parallel[i].point.coords);
            CHECK(serial[i].residual == parallel[i].residual);
        }
    }
}

TEST_CASE("cycle_space") {
    const Params p = defaults();
    const MapHandle phi = make_phi_map(p);

    SUBCASE("exactly one 2k-cycle class for the perturbed map") {
        EnumerationLog log;
        const std::vector<CycleClass> classes = cycle_space(phi, 6, p, kTestGrid, &log);
        REQUIRE(classes.size() == 1);
        const CycleClass& cls = classes[0];
        CHECK(cls.order == 6);
        CHECK_FALSE(cls.non_isolated);
        CHECK(log.seeds_total > 0);

        // closure within 2 * newton_tol at every point
        for (const BallPoint& x : cls.points)
            CHECK(distance(iterate(phi, x, 6), x) <= 2.0 * p.newton_tol);
        // invariant-plane confinement
        for (const BallPoint& x : cls.points) CHECK(std::abs(x.coords[0]) <= 1e-7);
        // the six angles are j pi/3
        for (const BallPoint& x : cls.points) {
            const PolarLast pl = PolarLast::from_point(x);
            const double frac = pl.theta / (kPi / 3.0);
            CHECK(std::abs(frac - std::round(frac)) * (kPi / 3.0) < 1e-6);
        }

        // The localization annulus A(4/9, 5/9) can be read with its bounds
        // on ell = r^2 (action reading) or on r (radius reading). The
        // artifact adopts the action reading; the cycle sits inside that
        // band and far outside the other one.
        const double kAnnulusActionLo = 4.0 / 9.0 * p.R2();
        const double kAnnulusActionHi = 5.0 / 9.0 * p.R2();
        const double kAnnulusRadiusHi = std::pow(5.0 / 9.0 * p.R2(), 2);  // ell bound under the r reading
        for (const BallPoint& x : cls.points) {
            const double ell = std::norm(x.coords.back());
            CHECK(ell > kAnnulusActionLo);
            CHECK(ell < kAnnulusActionHi);
            CHECK(ell > kAnnulusRadiusHi);  // the r reading would exclude the cycle
        }
    }

    SUBCASE("order 1 gives the origin class") {
        const std::vector<CycleClass> classes = cycle_space(phi, 1, p, 4);
        REQUIRE(classes.size() == 1);
        CHECK(classes[0].points.size() == 1);
        CHECK(classes[0].points[0].norm_sq() < 1e-14);
    }

    SUBCASE("canonicalization is shift-invariant") {
        std::vector<BallPoint> orbit;
        orbit.push_back(exact_cycle_point(0));
        for (int i = 1; i < 6; ++i) orbit.push_back(phi.eval(orbit.back()));
        const std::vector<BallPoint> canon = canonical_rotation(orbit);
        for (std::size_t s = 1; s < orbit.size(); ++s) {
            std::vector<BallPoint> shifted;
            for (std::size_t i = 0; i < orbit.size(); ++i) shifted.push_back(orbit[(s + i) % orbit.size()]);
            const std::vector<BallPoint> canon2 = canonical_rotation(shifted);
            REQUIRE(canon2.size() == canon.size());
            for (std::size_t i = 0; i < canon.size(); ++i) CHECK(canon2[i].coords == canon[i].coords);
        }
    }

    SUBCASE("gcd period law on enumerated fixed points") {
        const std::vector<FixedPointRecord> records = enumerate_fixed_points(phi, 6, p, 4);
        for (const FixedPointRecord& rec : records) {
            const BezoutResult bez = gcd_certified(rec.minimal_period, rec.iterate_order);
            CHECK(distance(iterate(phi, rec.point, static_cast<int>(bez.g)), rec.point) <=
                  10.0 * p.newton_tol);
        }
    }
}

TEST_CASE("round_sig12 comparison key") {
    CHECK(round_sig12(0.0) == 0.0);
    CHECK(round_sig12(1.0) == 1.0);
    CHECK(round_sig12(0.1234567890123456) == round_sig12(0.1234567890123999));
    CHECK(round_sig12(1e-300) != 0.0);
    CHECK(round_sig12(-2.5) == -2.5);
}
