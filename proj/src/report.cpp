#include "ballmap/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace ballmap {

Json point_to_json(const BallPoint& z) {
    Json arr = Json::array();
    for (const Complex& c : z.coords) {
        arr.push_back(c.real());
        arr.push_back(c.imag());
    }
    return arr;
}

Json params_to_json(const Params& p) {
    return Json{{"n", p.N},
                {"radius", p.R},
                {"k", p.k},
                {"delta", p.delta},
                {"epsilon", p.epsilon},
                {"integrator_step", p.integrator_step},
                {"newton_tol", p.newton_tol},
                {"dedup_radius", p.dedup_radius}};
}

Json config_to_json(const RunConfig& cfg) {
    Json j = params_to_json(cfg.params);
    j["grid"] = cfg.grid;
    j["seed"] = cfg.seed;
    j["order"] = cfg.resolved_order();
    j["map"] = cfg.map_name;
    j["samples"] = cfg.samples;
    if (!cfg.selection.empty()) j["selection"] = cfg.selection;
    if (!cfg.sweep_k.empty()) j["sweep_k"] = cfg.sweep_k;
    if (!cfg.sweep_delta.empty()) j["sweep_delta"] = cfg.sweep_delta;
    if (!cfg.sweep_epsilon.empty()) j["sweep_epsilon"] = cfg.sweep_epsilon;
    j["control_perturbation"] = cfg.control_perturbation;
    return j;
}

Json record_to_json(const FixedPointRecord& rec) {
    return Json{{"point", point_to_json(rec.point)},
                {"iterate_order", rec.iterate_order},
                {"residual", rec.residual},
                {"minimal_period", rec.minimal_period},
                {"seed_point", point_to_json(rec.seed)},
                {"newton_iterations", rec.newton_iterations}};
}

Json class_to_json(const CycleClass& cls) {
    Json points = Json::array();
    for (const BallPoint& p : cls.points) points.push_back(point_to_json(p));
    return Json{{"order", cls.order},
                {"non_isolated", cls.non_isolated},
                {"points", points},
                {"residuals", cls.residuals}};
}

Json certificate_to_json(const Certificate& cert) {
    Json evidence = Json::array();
    for (const CycleClass& cls : cert.evidence) evidence.push_back(class_to_json(cls));
    return Json{{"verdict", Certificate::verdict_name(cert.verdict)},
                {"cycle_order", cert.cycle_order},
                {"cycle_count", cert.cycle_count},
                {"non_isolated_count", cert.non_isolated_count},
                {"finite_evidence", cert.finite_evidence},
                {"grid_resolution", cert.grid_resolution},
                {"params", params_to_json(cert.params)},
                {"evidence", evidence}};
}

Json check_to_json(const CheckReport& check) {
    Json j{{"name", check.name},
           {"samples", check.samples},
           {"max_defect", check.max_defect},
           {"tolerance", check.tolerance},
           {"pass", check.pass},
           {"seed", check.seed}};
    if (!check.worst_point.coords.empty()) j["worst_point"] = point_to_json(check.worst_point);
    if (!check.note.empty()) j["note"] = check.note;
    return j;
}

Json enumeration_log_to_json(const EnumerationLog& log) {
    Json j{{"seeds_total", log.seeds_total},
           {"converged", log.converged},
           {"no_convergence", log.no_convergence},
           {"singular_jacobian", log.singular},
           {"evaluation_errors", log.eval_errors}};
    if (!log.error_messages.empty()) j["errors"] = log.error_messages;
    return j;
}

Json make_report(const std::string& command, const RunConfig& cfg) {
    return Json{{"schema_version", kSchemaVersion},
                {"tool", Json{{"name", kToolName}, {"version", kToolVersion}}},
                {"command", command},
                {"config", config_to_json(cfg)},
                {"results", Json::object()},
                {"checks", Json::array()},
                {"timing", Json::object()}};
}

void write_json_atomic(const std::string& path, const Json& j) {
    if (path.empty() || path == "-") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("cannot open '" + tmp + "' for writing");
        out << j.dump(2) << "\n";
    }
    std::filesystem::rename(tmp, path);
}

void write_points_csv_atomic(const std::string& path, const std::vector<BallPoint>& pts, int N) {
    std::string header;
    for (int i = 1; i <= N; ++i) {
        if (i > 1) header += ",";
        header += "x" + std::to_string(i) + ",y" + std::to_string(i);
    }
    std::string body = header + "\n";
    char buf[40];
    for (const BallPoint& p : pts) {
        std::string line;
        for (std::size_t i = 0; i < p.dim(); ++i) {
            std::snprintf(buf, sizeof(buf), "%.17g", p.coords[i].real());
            line += buf;
            line += ",";
            std::snprintf(buf, sizeof(buf), "%.17g", p.coords[i].imag());
            line += buf;
            if (i + 1 < p.dim()) line += ",";
        }
        body += line + "\n";
    }
    if (path.empty() || path == "-") {
        std::cout << body;
        return;
    }
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("cannot open '" + tmp + "' for writing");
        out << body;
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace ballmap
