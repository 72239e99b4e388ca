#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace ballmap {

using Complex = std::complex<double>;

/// A point z = (z_1,...,z_N) of the open ball B^{2N}(R), stored as N complex
/// coordinates. Real-vector views use the interleaved ordering
/// (x1,y1,...,xN,yN).
struct BallPoint {
    std::vector<Complex> coords;

    BallPoint() = default;
    explicit BallPoint(std::vector<Complex> c) : coords(std::move(c)) {}
    static BallPoint zero(std::size_t n) { return BallPoint(std::vector<Complex>(n, Complex{0.0, 0.0})); }

    std::size_t dim() const { return coords.size(); }
    Complex& operator[](std::size_t i) { return coords[i]; }
    const Complex& operator[](std::size_t i) const { return coords[i]; }

    double norm_sq() const {
        double s = 0.0;
        for (const Complex& z : coords) s += std::norm(z);
        return s;
    }
    bool in_ball(double radius) const { return norm_sq() < radius * radius; }
};

inline double distance_sq(const BallPoint& a, const BallPoint& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.coords.size(); ++i) s += std::norm(a.coords[i] - b.coords[i]);
    return s;
}

inline double distance(const BallPoint& a, const BallPoint& b) { return std::sqrt(distance_sq(a, b)); }

inline std::vector<double> to_reals(const BallPoint& z) {
    std::vector<double> v;
    v.reserve(2 * z.dim());
    for (const Complex& c : z.coords) {
        v.push_back(c.real());
        v.push_back(c.imag());
    }
    return v;
}

inline BallPoint from_reals(std::span<const double> v) {
    BallPoint z;
    z.coords.reserve(v.size() / 2);
    for (std::size_t i = 0; i + 1 < v.size(); i += 2) z.coords.emplace_back(v[i], v[i + 1]);
    return z;
}

/// Wrap an angle into [0, 2pi).
inline double wrap_angle(double theta) {
    const double two_pi = 2.0 * std::numbers::pi;
    double t = std::fmod(theta, two_pi);
    if (t < 0.0) t += two_pi;
    // fmod can return exactly two_pi after the correction when theta is a
    // tiny negative number
    if (t >= two_pi) t -= two_pi;
    return t;
}

/// The last coordinate in action-angle form: z_N = r e^{i theta}, ell = r^2.
/// At ell = 0 theta is declared 0.
struct PolarLast {
    std::vector<Complex> head;  // z_1,...,z_{N-1}
    double ell = 0.0;           // |z_N|^2
    double theta = 0.0;         // in [0, 2pi)

    static PolarLast from_point(const BallPoint& z) {
        PolarLast p;
        p.head.assign(z.coords.begin(), z.coords.end() - 1);
        const Complex& zn = z.coords.back();
        p.ell = std::norm(zn);
        p.theta = (p.ell == 0.0) ? 0.0 : wrap_angle(std::arg(zn));
        return p;
    }

    BallPoint to_point() const {
        BallPoint z;
        z.coords = head;
        const double r = std::sqrt(ell);
        z.coords.emplace_back(r * std::cos(theta), r * std::sin(theta));
        return z;
    }
};

}  // namespace ballmap
