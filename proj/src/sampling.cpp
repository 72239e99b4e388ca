#include "ballmap/sampling.hpp"

#include <cmath>
#include <numbers>

namespace ballmap {

BallPoint sample_ball_point(const Params& params, double radius_fraction, Rng& rng) {
    const double radius = radius_fraction * params.R;
    std::uniform_real_distribution<double> unit(-radius, radius);
    BallPoint z;
    z.coords.resize(static_cast<std::size_t>(params.N));
    while (true) {
        for (auto& c : z.coords) {
            const double x = unit(rng);
            const double y = unit(rng);
            c = Complex{x, y};
        }
        if (z.norm_sq() < radius * radius) return z;
    }
}

std::vector<BallPoint> sample_ball(std::size_t count, const Params& params, double radius_fraction, Rng& rng) {
    std::vector<BallPoint> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(sample_ball_point(params, radius_fraction, rng));
    return out;
}

std::vector<BallPoint> sample_invariant_plane(std::size_t count, const Params& params, double ell_lo,
                                              double ell_hi, Rng& rng) {
    std::uniform_real_distribution<double> ell_dist(ell_lo, ell_hi);
    std::uniform_real_distribution<double> theta_dist(0.0, 2.0 * std::numbers::pi);
    std::vector<BallPoint> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        PolarLast p;
        p.head.assign(static_cast<std::size_t>(params.N - 1), Complex{0.0, 0.0});
        p.ell = ell_dist(rng);
        p.theta = theta_dist(rng);
        out.push_back(p.to_point());
    }
    return out;
}

std::vector<BallPoint> sample_outer_band(std::size_t count, const Params& params, Rng& rng) {
    const double R2 = params.R2();
    const double band = 8.0 * R2 / 9.0;
    std::uniform_real_distribution<double> theta_dist(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<BallPoint> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        PolarLast p;
        p.head.assign(static_cast<std::size_t>(params.N - 1), Complex{0.0, 0.0});
        double head_sq = 0.0;
        if (params.N == 1 || i % 2 == 0) {
            // Family A: the last coordinate itself sits in the outer band.
            p.ell = band + 1e-6 * R2 + unit(rng) * (0.97 * R2 - band - 1e-6 * R2);
            if (params.N > 1) head_sq = unit(rng) * std::min(0.5 * (0.995 * R2 - p.ell), 0.02 * R2);
        } else {
            // Family B: |z_N|^2 below the cutoff support, head carries the
            // action into the outer band.
            p.ell = unit(rng) * (R2 / 9.0 - 1e-6 * R2);
            const double lo = (band + 1e-6 * R2 - p.ell) / 0.9;
            const double hi = 0.998 * R2 - p.ell;
            head_sq = lo + unit(rng) * (hi - lo);
        }
        p.theta = theta_dist(rng);
        if (params.N > 1 && head_sq > 0.0) {
            // Spread head_sq over the head coordinates, random phases.
            const double per = head_sq / (params.N - 1);
            for (auto& c : p.head) {
                const double phase = theta_dist(rng);
                const double r = std::sqrt(per);
                c = Complex{r * std::cos(phase), r * std::sin(phase)};
            }
        }
        out.push_back(p.to_point());
    }
    return out;
}

}  // namespace ballmap
