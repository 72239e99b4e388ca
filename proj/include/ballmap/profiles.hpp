#pragma once

#include <cmath>

#include "ballmap/params.hpp"

namespace ballmap {

/// C-infinity bump with support (-1,1), normalized so b(0) = 1:
/// b(u) = exp(1 - 1/(1-u^2)).
inline double smooth_bump(double u) {
    const double u2 = u * u;
    if (u2 >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - u2));
}

/// d/du of smooth_bump.
inline double smooth_bump_deriv(double u) {
    const double u2 = u * u;
    if (u2 >= 1.0) return 0.0;
    const double d = 1.0 - u2;
    return smooth_bump(u) * (-2.0 * u / (d * d));
}

/// Radial profile rho: [0, R^2] -> IR, held through its derivative
///   rho'(r) = floor + (peak - floor) * b((r - center)/half_width),
/// which satisfies peak >= rho' > 0 with equality exactly at r = center, and
/// rho' = floor outside the bump support. rho itself is recovered by
/// Gauss-Legendre quadrature (the additive constant is irrelevant to the
/// flow, we fix rho(0) = 0).
class Profile {
  public:
    Profile(double peak, double floor, double center, double half_width)
        : peak_(peak), floor_(floor), center_(center), half_width_(half_width) {}

    double slope(double r) const {
        return floor_ + (peak_ - floor_) * smooth_bump((r - center_) / half_width_);
    }
    double slope_deriv(double r) const {
        return (peak_ - floor_) / half_width_ * smooth_bump_deriv((r - center_) / half_width_);
    }
    double value(double r) const;

    double peak() const { return peak_; }
    double floor() const { return floor_; }
    double center() const { return center_; }
    double half_width() const { return half_width_; }

  private:
    double peak_;
    double floor_;
    double center_;
    double half_width_;
};

/// Smooth cutoff beta: [0, R^2] -> [0,1] with plateaus
///   beta = 0 on [0, R^2/9] and [8R^2/9, R^2],
///   beta = 1 on [R^2/3, 2R^2/3],
/// joined by mollifier transitions s(x) = g(x)/(g(x)+g(1-x)), g(x)=exp(-1/x).
class Cutoff {
  public:
    explicit Cutoff(double R2)
        : lo0_(R2 / 9.0), lo1_(R2 / 3.0), hi0_(2.0 * R2 / 3.0), hi1_(8.0 * R2 / 9.0) {}

    double value(double ell) const;
    double slope(double ell) const;
    /// Joint evaluation; cheaper than two separate calls in the transitions.
    void value_and_slope(double ell, double& beta, double& beta_prime) const;

    /// Support of beta is the open interval (support_lo, support_hi).
    double support_lo() const { return lo0_; }
    double support_hi() const { return hi1_; }
    /// beta == 1 exactly on [flat_lo, flat_hi].
    double flat_lo() const { return lo1_; }
    double flat_hi() const { return hi0_; }

  private:
    double lo0_, lo1_, hi0_, hi1_;
};

/// Builds the radial profile for the given parameters: bump centered at
/// R^2/2 with half-width 7R^2/18 (so the support stays inside
/// [R^2/9, 8R^2/9]), peak pi/(2k), floor delta.
Profile make_rho(const Params& params);

/// Builds the cutoff for the given parameters.
Cutoff make_beta(const Params& params);

}  // namespace ballmap
