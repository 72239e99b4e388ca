#include "ballmap/obstruction.hpp"

#include <cmath>

namespace ballmap {

BezoutResult gcd_certified(long long a, long long b) {
    if (a == 0 && b == 0) throw std::invalid_argument("gcd_certified: gcd(0, 0) is undefined");
    long long old_r = a, r = b;
    long long old_s = 1, s = 0;
    long long old_t = 0, t = 1;
    while (r != 0) {
        const long long q = old_r / r;
        old_r -= q * r;
        std::swap(old_r, r);
        old_s -= q * s;
        std::swap(old_s, s);
        old_t -= q * t;
        std::swap(old_t, t);
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    return BezoutResult{old_r, old_s, old_t};
}

CycleClass milnor_involution(const MapHandle& psi, const MapHandle& phi, const CycleClass& cycle, double tol) {
    if (cycle.order < 2 || cycle.order % 2 != 0)
        throw std::invalid_argument("milnor_involution: cycle order must be even (got " +
                                    std::to_string(cycle.order) + ")");
    const double dedup = phi.params.dedup_radius;

    std::vector<BallPoint> image;
    image.reserve(cycle.points.size());
    for (std::size_t i = 0; i < cycle.points.size(); ++i) {
        const BallPoint& x = cycle.points[i];
        const double commutation = distance(psi.eval(phi.eval(x)), phi.eval(psi.eval(x)));
        if (commutation > tol)
            throw CycleInvariantViolation("milnor_involution: psi and phi do not commute at point " +
                                          std::to_string(i) + " (defect " + std::to_string(commutation) + ")");
        image.push_back(psi.eval(x));
    }

    // Image invariants: consecutive mapping under phi, and primitivity.
    const std::size_t k = image.size();
    for (std::size_t i = 0; i < k; ++i) {
        const double link = distance(phi.eval(image[i]), image[(i + 1) % k]);
        if (link > tol)
            throw CycleInvariantViolation("milnor_involution: image is not a phi-cycle at link " +
                                          std::to_string(i) + " (defect " + std::to_string(link) + ")");
    }
    for (std::size_t i = 0; i < k; ++i) {
        BallPoint walker = image[i];
        for (std::size_t j = 1; j < k; ++j) {
            walker = phi.eval(walker);
            if (distance(walker, image[i]) <= dedup)
                throw CycleInvariantViolation("milnor_involution: image cycle is not primitive (point " +
                                              std::to_string(i) + " returns after " + std::to_string(j) + ")");
        }
    }

    CycleClass out;
    out.order = cycle.order;
    out.points = canonical_rotation(image);
    out.residuals.resize(k);
    for (std::size_t i = 0; i < k; ++i)
        out.residuals[i] = distance(phi.eval(out.points[i]), out.points[(i + 1) % k]);
    return out;
}

PairingReport check_free_action(const MapHandle& psi, const MapHandle& phi,
                                const std::vector<CycleClass>& cycles, double tol) {
    PairingReport report;
    const double dedup = phi.params.dedup_radius;

    std::vector<int> partner(cycles.size(), -1);
    std::vector<bool> has_image(cycles.size(), false);
    std::vector<CycleClass> images(cycles.size());
    for (std::size_t i = 0; i < cycles.size(); ++i) {
        try {
            images[i] = milnor_involution(psi, phi, cycles[i], tol);
            has_image[i] = true;
        } catch (const std::exception& e) {
            report.violations.emplace_back(i, e.what());
        }
    }

    for (std::size_t i = 0; i < cycles.size(); ++i) {
        if (!has_image[i]) continue;
        if (same_class(images[i], cycles[i], dedup)) {
            report.self_paired.push_back(i);
            continue;
        }
        for (std::size_t j = 0; j < cycles.size(); ++j) {
            if (j == i) continue;
            if (same_class(images[i], cycles[j], dedup)) {
                partner[i] = static_cast<int>(j);
                break;
            }
        }
        if (partner[i] < 0)
            report.violations.emplace_back(i, "involution image not found in the cycle list (enumeration incomplete?)");
    }

    for (std::size_t i = 0; i < cycles.size(); ++i) {
        const int j = partner[i];
        if (j < 0 || static_cast<std::size_t>(j) <= i) continue;
        if (partner[static_cast<std::size_t>(j)] == static_cast<int>(i))
            report.pairs.emplace_back(i, static_cast<std::size_t>(j));
        else
            report.violations.emplace_back(i, "involution pairing is not symmetric with class " + std::to_string(j));
    }

    report.perfectly_paired = report.violations.empty() && report.self_paired.empty() &&
                              report.pairs.size() * 2 == cycles.size();
    return report;
}

Certificate parity_certificate(const std::vector<CycleClass>& cycles, int order, const Params& params,
                               int grid_resolution) {
    if (order < 2 || order % 2 != 0)
        throw std::invalid_argument("parity_certificate: the obstruction applies to even orders only (got " +
                                    std::to_string(order) + ")");
    Certificate cert;
    cert.cycle_order = order;
    for (const CycleClass& cls : cycles) (cls.non_isolated ? cert.non_isolated_count : cert.cycle_count)++;
    cert.finite_evidence = cert.non_isolated_count == 0;
    cert.evidence = cycles;
    cert.params = params;
    cert.grid_resolution = grid_resolution;
    cert.verdict = (cert.finite_evidence && cert.cycle_count % 2 == 1)
                       ? Certificate::Verdict::NoSquareRoot
                       : Certificate::Verdict::Inconclusive;
    return cert;
}

SquareRootReport check_square_root(const MapHandle& phi, const MapHandle& psi,
                                   const std::vector<BallPoint>& sample_points, double tol) {
    SquareRootReport report;
    report.tol = tol;
    report.samples = sample_points.size();
    for (const BallPoint& z : sample_points) {
        const double square_defect = distance(psi.eval(psi.eval(z)), phi.eval(z));
        const double commutation_defect = distance(psi.eval(phi.eval(z)), phi.eval(psi.eval(z)));
        if (square_defect > report.max_square_defect) {
            report.max_square_defect = square_defect;
            report.worst_point = z;
        }
        if (commutation_defect > report.max_commutation_defect)
            report.max_commutation_defect = commutation_defect;
    }
    report.is_square_root = report.max_square_defect <= tol;
    return report;
}

}  // namespace ballmap
