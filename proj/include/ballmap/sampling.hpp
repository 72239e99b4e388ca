#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ballmap/params.hpp"
#include "ballmap/point.hpp"

namespace ballmap {

using Rng = std::mt19937_64;

/// Uniform point in the ball of radius radius_fraction * R (rejection from
/// the enclosing cube).
BallPoint sample_ball_point(const Params& params, double radius_fraction, Rng& rng);

std::vector<BallPoint> sample_ball(std::size_t count, const Params& params, double radius_fraction, Rng& rng);

/// Points with head = 0 and ell = |z_N|^2 uniform in [ell_lo, ell_hi],
/// theta uniform in [0, 2pi).
std::vector<BallPoint> sample_invariant_plane(std::size_t count, const Params& params, double ell_lo,
                                              double ell_hi, Rng& rng);

/// Points admissible for the boundary-rigidity check: weighted action
/// S >= 8R^2/9 and |z_N|^2 either >= 8R^2/9 or <= R^2/9 (so the cutoff
/// support is avoided). Alternates between the two families.
std::vector<BallPoint> sample_outer_band(std::size_t count, const Params& params, Rng& rng);

}  // namespace ballmap
