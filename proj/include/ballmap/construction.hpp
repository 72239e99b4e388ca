#pragma once

#include <stdexcept>
#include <string>

#include "ballmap/params.hpp"
#include "ballmap/point.hpp"
#include "ballmap/profiles.hpp"

namespace ballmap {

/// Thrown when an integration or search step fails numerically; carries the
/// offending point.
class NumericalError : public std::runtime_error {
  public:
    NumericalError(const std::string& msg, BallPoint where)
        : std::runtime_error(msg), where_(std::move(where)) {}
    const BallPoint& where() const { return where_; }

  private:
    BallPoint where_;
};

/// Coordinate weights: 1 for the last coordinate, 9/10 otherwise. nu is
/// 1-based; throws std::out_of_range outside 1..N.
double zeta(int nu, int N);

/// H(z) = rho(S) with S = sum_nu zeta(nu)|z_nu|^2. S stays in [0, R^2].
double hamiltonian_H(const BallPoint& z, const Params& params, const Profile& profile);

/// F(z) = beta(|z_N|^2) cos(k theta); 0 wherever beta vanishes (so the
/// theta-singularity at z_N = 0 is never consulted).
double perturbation_F(const BallPoint& z, const Params& params, const Cutoff& cutoff);
double perturbation_F(const BallPoint& z, const Params& params, const Cutoff& cutoff, int harmonic);

/// Time-t flow of H, in closed form: coordinate nu is multiplied by
/// exp(2i zeta(nu) rho'(S) t). Preserves every |z_nu| and hence S.
BallPoint flow_H(const BallPoint& z, double t, const Params& params, const Profile& profile);

/// Time-t flow of epsilon*F. Head coordinates pass through unchanged; the
/// last coordinate evolves in (ell = r^2, theta) under
///     d ell  /dt = -2 eps m beta(ell) sin(m theta)
///     d theta/dt = -2 eps   beta'(ell) cos(m theta)
/// with m = params.k (or the explicit harmonic overload). Where beta == 1
/// this reduces to the linear drift ell(t) = ell0 - 2 eps m sin(m theta0) t
/// with theta frozen; where beta == 0 the flow is the identity and no
/// integration is performed. Elsewhere: fixed-step implicit midpoint with
/// step params.integrator_step. Throws NumericalError if the implicit solve
/// stalls or ell leaves [0, R^2].
BallPoint flow_F(const BallPoint& z, double t, const Params& params, const Cutoff& cutoff);
BallPoint flow_F(const BallPoint& z, double t, const Params& params, const Cutoff& cutoff, int harmonic);

/// The composed map Phi = (time-1 flow of H) after (time-1 flow of eps F):
/// the perturbation acts first. Maps the ball into itself.
BallPoint map_Phi(const BallPoint& z, const Params& params, const Profile& profile, const Cutoff& cutoff);

/// Weighted action S = sum zeta(nu) |z_nu|^2.
double weighted_action(const BallPoint& z, int N);

}  // namespace ballmap
