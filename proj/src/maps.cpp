#include "ballmap/maps.hpp"

#include <cmath>

namespace ballmap {

MapHandle make_phi_map(const Params& params) {
    params.validate();
    const Profile profile = make_rho(params);
    const Cutoff cutoff = make_beta(params);
    return MapHandle{"phi", params, [params, profile, cutoff](const BallPoint& z) {
                         return map_Phi(z, params, profile, cutoff);
                     }};
}

MapHandle make_phi_squared_map(const Params& params) {
    MapHandle phi = make_phi_map(params);
    return MapHandle{"phi_squared", params,
                     [phi](const BallPoint& z) { return phi.eval(phi.eval(z)); }};
}

MapHandle make_control_phi_map(const Params& params) {
    params.validate();
    const Profile profile = make_rho(params);
    const Cutoff cutoff = make_beta(params);
    const int harmonic = 2 * params.k;
    return MapHandle{"phi_control", params, [params, profile, cutoff, harmonic](const BallPoint& z) {
                         return flow_H(flow_F(z, 1.0, params, cutoff, harmonic), 1.0, params, profile);
                     }};
}

MapHandle make_flow_h_map(const Params& params, double t) {
    params.validate();
    const Profile profile = make_rho(params);
    return MapHandle{"flow_h(t=" + std::to_string(t) + ")", params,
                     [params, profile, t](const BallPoint& z) { return flow_H(z, t, params, profile); }};
}

MapHandle make_flow_f_map(const Params& params, double t) {
    params.validate();
    const Cutoff cutoff = make_beta(params);
    return MapHandle{"flow_f(t=" + std::to_string(t) + ")", params,
                     [params, cutoff, t](const BallPoint& z) { return flow_F(z, t, params, cutoff); }};
}

MapHandle make_identity_map(const Params& params) {
    return MapHandle{"identity", params, [](const BallPoint& z) { return z; }};
}

MapHandle make_rigid_rotation_map(const Params& params) {
    const double head_angle = 1.8 * params.delta;
    const double last_angle = 2.0 * params.delta;
    const int N = params.N;
    return MapHandle{"rigid_rotation", params, [head_angle, last_angle, N](const BallPoint& z) {
                         const Complex head_rot{std::cos(head_angle), std::sin(head_angle)};
                         const Complex last_rot{std::cos(last_angle), std::sin(last_angle)};
                         BallPoint out = z;
                         for (int i = 0; i + 1 < N; ++i) out.coords[static_cast<std::size_t>(i)] *= head_rot;
                         out.coords.back() *= last_rot;
                         return out;
                     }};
}

MapHandle compose(const MapHandle& outer, const MapHandle& inner, const std::string& name) {
    return MapHandle{name, outer.params, [o = outer.eval, i = inner.eval](const BallPoint& z) {
                         return o(i(z));
                     }};
}

}  // namespace ballmap
