#include "ballmap/construction.hpp"

#include <cmath>
#include <cstdlib>

namespace ballmap {

double zeta(int nu, int N) {
    if (nu < 1 || nu > N) throw std::out_of_range("zeta: index nu = " + std::to_string(nu) + " outside 1.." + std::to_string(N));
    return nu == N ? 1.0 : 0.9;
}

double weighted_action(const BallPoint& z, int N) {
    double s = 0.0;
    for (int nu = 1; nu <= N; ++nu) s += zeta(nu, N) * std::norm(z.coords[static_cast<std::size_t>(nu - 1)]);
    return s;
}

double hamiltonian_H(const BallPoint& z, const Params& params, const Profile& profile) {
    return profile.value(weighted_action(z, params.N));
}

double perturbation_F(const BallPoint& z, const Params& params, const Cutoff& cutoff) {
    return perturbation_F(z, params, cutoff, params.k);
}

double perturbation_F(const BallPoint& z, const Params& params, const Cutoff& cutoff, int harmonic) {
    (void)params;
    const Complex& zn = z.coords.back();
    const double ell = std::norm(zn);
    if (ell <= cutoff.support_lo() || ell >= cutoff.support_hi()) return 0.0;
    const double theta = std::arg(zn);
    return cutoff.value(ell) * std::cos(harmonic * theta);
}

BallPoint flow_H(const BallPoint& z, double t, const Params& params, const Profile& profile) {
    const double rate = profile.slope(weighted_action(z, params.N));
    BallPoint out;
    out.coords.resize(z.coords.size());
    for (int nu = 1; nu <= params.N; ++nu) {
        const double angle = 2.0 * zeta(nu, params.N) * rate * t;
        out.coords[static_cast<std::size_t>(nu - 1)] =
            z.coords[static_cast<std::size_t>(nu - 1)] * Complex{std::cos(angle), std::sin(angle)};
    }
    return out;
}

namespace {

struct ReducedState {
    double ell;
    double theta;
};

// Right-hand side of the reduced system on the last coordinate.
inline ReducedState reduced_rhs(const ReducedState& u, const Cutoff& cutoff, double eps, int m) {
    double beta, beta_prime;
    cutoff.value_and_slope(u.ell, beta, beta_prime);
    const double s = std::sin(m * u.theta);
    const double c = std::cos(m * u.theta);
    return {-2.0 * eps * m * beta * s, -2.0 * eps * beta_prime * c};
}

}  // namespace

BallPoint flow_F(const BallPoint& z, double t, const Params& params, const Cutoff& cutoff) {
    return flow_F(z, t, params, cutoff, params.k);
}

BallPoint flow_F(const BallPoint& z, double t, const Params& params, const Cutoff& cutoff, int harmonic) {
    PolarLast p = PolarLast::from_point(z);
    // Outside the cutoff support both beta and beta' vanish identically, so
    // the vector field is zero and the point never moves.
    if (p.ell <= cutoff.support_lo() || p.ell >= cutoff.support_hi() || t == 0.0) return z;

    const double eps = params.epsilon;
    const int m = harmonic;
    const int n_steps = std::max(1, static_cast<int>(std::ceil(std::abs(t) / params.integrator_step - 1e-12)));
    const double h = t / n_steps;
    const double drift_margin = 2.0 * std::abs(h) * 2.0 * eps * m;

    ReducedState u{p.ell, p.theta};
    for (int step = 0; step < n_steps; ++step) {
        // Fast path: while the step provably stays inside the beta == 1
        // plateau the implicit midpoint equation is solved exactly in one
        // evaluation (theta is frozen there, so the field is constant).
        if (u.ell > cutoff.flat_lo() + drift_margin && u.ell < cutoff.flat_hi() - drift_margin) {
            u.ell += h * (-2.0 * eps * m * std::sin(m * u.theta));
            continue;
        }
        // Implicit midpoint: v = u + (h/2) f(v), u_{next} = 2v - u.
        ReducedState v = u;
        bool converged = false;
        for (int it = 0; it < 30; ++it) {
            const ReducedState f = reduced_rhs(v, cutoff, eps, m);
            const ReducedState next{u.ell + 0.5 * h * f.ell, u.theta + 0.5 * h * f.theta};
            const double d_ell = std::abs(next.ell - v.ell);
            const double d_theta = std::abs(next.theta - v.theta);
            v = next;
            if (d_ell <= 1e-15 * (1.0 + std::abs(v.ell)) && d_theta <= 1e-15 * (1.0 + std::abs(v.theta))) {
                converged = true;
                break;
            }
        }
        if (!converged)
            throw NumericalError("flow_F: implicit midpoint solve did not converge (step " +
                                     std::to_string(step) + " of " + std::to_string(n_steps) + ")",
                                 PolarLast{p.head, std::max(u.ell, 0.0), wrap_angle(u.theta)}.to_point());
        u.ell = 2.0 * v.ell - u.ell;
        u.theta = 2.0 * v.theta - u.theta;
        if (!(u.ell >= 0.0) || !(u.ell <= params.R2()))
            throw NumericalError("flow_F: ell left [0, R^2] during integration",
                                 PolarLast{p.head, std::max(u.ell, 0.0), wrap_angle(u.theta)}.to_point());
    }

    p.ell = u.ell;
    p.theta = wrap_angle(u.theta);
    return p.to_point();
}

BallPoint map_Phi(const BallPoint& z, const Params& params, const Profile& profile, const Cutoff& cutoff) {
    return flow_H(flow_F(z, 1.0, params, cutoff), 1.0, params, profile);
}

}  // namespace ballmap
