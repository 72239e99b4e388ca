#include "ballmap/profiles.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace ballmap {

namespace {

// The bump is flat to all orders at the support edges, which limits
// Gauss-Legendre to root-exponential convergence; 96 nodes reach ~1e-15.
constexpr int kGaussNodes = 96;

struct GaussRule {
    std::array<double, kGaussNodes> nodes;    // on (-1, 1)
    std::array<double, kGaussNodes> weights;
};

// Gauss-Legendre nodes/weights by Newton iteration on P_n (symmetric pairs).
GaussRule build_gauss_rule() {
    GaussRule rule{};
    const int n = kGaussNodes;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.nodes[i] = -x;
        rule.weights[i] = w;
        rule.nodes[n - 1 - i] = x;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

const GaussRule& gauss_rule() {
    static const GaussRule rule = build_gauss_rule();
    return rule;
}

// Integral of smooth_bump over [-1, u], u clamped to [-1, 1].
double bump_integral(double u) {
    if (u <= -1.0) return 0.0;
    if (u > 1.0) u = 1.0;
    const GaussRule& rule = gauss_rule();
    const double mid = 0.5 * (u - 1.0);
    const double half = 0.5 * (u + 1.0);
    double sum = 0.0;
    for (int i = 0; i < kGaussNodes; ++i) sum += rule.weights[i] * smooth_bump(mid + half * rule.nodes[i]);
    return sum * half;
}

// Mollifier transition and its derivative: s(0)=0, s(1)=1, flat to all
// orders at both ends. g(x) = exp(-1/x).
void transition(double x, double& s, double& ds) {
    if (x <= 0.0) {
        s = 0.0;
        ds = 0.0;
        return;
    }
    if (x >= 1.0) {
        s = 1.0;
        ds = 0.0;
        return;
    }
    const double ga = std::exp(-1.0 / x);
    const double gb = std::exp(-1.0 / (1.0 - x));
    const double denom = ga + gb;
    s = ga / denom;
    const double dga = ga / (x * x);
    const double dgb = gb / ((1.0 - x) * (1.0 - x));  // d/dx g(1-x) = -dgb
    ds = (dga * gb + ga * dgb) / (denom * denom);
}

}  // namespace

double Profile::value(double r) const {
    // rho(r) = floor*r + (peak-floor)*w*B((r-center)/w), B(u) = int_{-1}^u b
    return floor_ * r + (peak_ - floor_) * half_width_ * bump_integral((r - center_) / half_width_);
}

double Cutoff::value(double ell) const {
    double beta, unused;
    value_and_slope(ell, beta, unused);
    return beta;
}

double Cutoff::slope(double ell) const {
    double unused, beta_prime;
    value_and_slope(ell, unused, beta_prime);
    return beta_prime;
}

void Cutoff::value_and_slope(double ell, double& beta, double& beta_prime) const {
    if (ell <= lo0_ || ell >= hi1_) {
        beta = 0.0;
        beta_prime = 0.0;
    } else if (ell < lo1_) {
        const double width = lo1_ - lo0_;
        double s, ds;
        transition((ell - lo0_) / width, s, ds);
        beta = s;
        beta_prime = ds / width;
    } else if (ell <= hi0_) {
        beta = 1.0;
        beta_prime = 0.0;
    } else {
        const double width = hi1_ - hi0_;
        double s, ds;
        transition((hi1_ - ell) / width, s, ds);
        beta = s;
        beta_prime = -ds / width;
    }
}

Profile make_rho(const Params& params) {
    params.validate();
    const double R2 = params.R2();
    return Profile(params.theta_rate_cap(), params.delta, 0.5 * R2, 7.0 * R2 / 18.0);
}

Cutoff make_beta(const Params& params) {
    params.validate();
    return Cutoff(params.R2());
}

}  // namespace ballmap
