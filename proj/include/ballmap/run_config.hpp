#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ballmap/params.hpp"

namespace ballmap {

/// Resolved configuration for one CLI run: Params plus orchestration knobs.
/// Built from an optional config file (flat key = value pairs, one nesting
/// level of [command] sections) merged for a specific command; CLI flags
/// override file values. Unknown keys and sections are rejected.
struct RunConfig {
    Params params;
    int grid = 12;
    std::uint64_t seed = 20260214;
    std::string out_path;
    std::string csv_path;

    // cycles / obstruct
    int order = 0;  // 0 means 2k
    std::string map_name = "phi";  // phi | phi2 | flow_h | control

    // verify
    int samples = 200;
    std::vector<std::string> selection;
    int verify_grid = 6;

    // sweep
    std::vector<int> sweep_k;
    std::vector<double> sweep_delta;
    std::vector<double> sweep_epsilon;
    bool control_perturbation = false;
    bool sweep_zip = false;  // pair the i-th list entries instead of the product
    int sweep_grid = 6;
    int sweep_samples = 1000;  // displacement sample size

    int resolved_order() const { return order > 0 ? order : 2 * params.k; }
};

/// Parses `path` and merges globals plus the [command] section into a
/// RunConfig. Throws std::invalid_argument with a line reference on unknown
/// keys, unknown sections, or malformed values.
RunConfig load_run_config(const std::string& path, const std::string& command);

}  // namespace ballmap
