#pragma once

#include <functional>
#include <string>

#include "ballmap/construction.hpp"

namespace ballmap {

/// An evaluable smooth self-map of the closed ball, plus metadata. The
/// evaluator must be deterministic and safe for concurrent calls (all
/// factories below capture immutable state by value).
struct MapHandle {
    std::string name;
    Params params;
    std::function<BallPoint(const BallPoint&)> eval;

    BallPoint operator()(const BallPoint& z) const { return eval(z); }
};

/// Phi = flow_H after flow_F (both at time 1).
MapHandle make_phi_map(const Params& params);

/// Exact composition Phi(Phi(.)) — a map with a square root by construction.
MapHandle make_phi_squared_map(const Params& params);

/// Control variant: the perturbation uses cos(2k theta) instead of
/// cos(k theta).
MapHandle make_control_phi_map(const Params& params);

/// Time-t flow of H alone.
MapHandle make_flow_h_map(const Params& params, double t);

/// Time-t flow of eps F alone.
MapHandle make_flow_f_map(const Params& params, double t);

MapHandle make_identity_map(const Params& params);

/// The outer-band rigid rotation (e^{9i delta/5} on the head, e^{2i delta}
/// on the last coordinate), as a globally defined linear map.
MapHandle make_rigid_rotation_map(const Params& params);

/// outer(inner(.)).
MapHandle compose(const MapHandle& outer, const MapHandle& inner, const std::string& name);

}  // namespace ballmap
