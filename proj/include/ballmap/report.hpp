#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "ballmap/dynamics.hpp"
#include "ballmap/obstruction.hpp"
#include "ballmap/run_config.hpp"
#include "ballmap/verification.hpp"

namespace ballmap {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "ballmap";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

/// Points serialize as arrays of 2N reals, real/imaginary interleaved.
Json point_to_json(const BallPoint& z);
Json params_to_json(const Params& p);
Json config_to_json(const RunConfig& cfg);
Json record_to_json(const FixedPointRecord& rec);
Json class_to_json(const CycleClass& cls);
Json certificate_to_json(const Certificate& cert);
Json check_to_json(const CheckReport& check);
Json enumeration_log_to_json(const EnumerationLog& log);

/// {schema_version, tool, command, config, results, checks, timing}.
Json make_report(const std::string& command, const RunConfig& cfg);

/// Write-then-rename; "-" (or empty) writes to stdout.
void write_json_atomic(const std::string& path, const Json& j);

/// One point per line, 2N real fields, header "x1,y1,...,xN,yN".
void write_points_csv_atomic(const std::string& path, const std::vector<BallPoint>& pts, int N);

}  // namespace ballmap
