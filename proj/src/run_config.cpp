#include "ballmap/run_config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace ballmap {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

[[noreturn]] void bail(const std::string& path, int line, const std::string& msg) {
    throw std::invalid_argument("config " + path + ":" + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& path, int line, const std::string& v) {
    std::size_t pos = 0;
    double x;
    try {
        x = std::stod(v, &pos);
    } catch (const std::exception&) {
        bail(path, line, "expected a number, got '" + v + "'");
    }
    if (pos != v.size()) bail(path, line, "trailing characters in number '" + v + "'");
    return x;
}

long long parse_int(const std::string& path, int line, const std::string& v) {
    std::size_t pos = 0;
    long long x;
    try {
        x = std::stoll(v, &pos);
    } catch (const std::exception&) {
        bail(path, line, "expected an integer, got '" + v + "'");
    }
    if (pos != v.size()) bail(path, line, "trailing characters in integer '" + v + "'");
    return x;
}

bool parse_bool(const std::string& path, int line, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    bail(path, line, "expected a boolean, got '" + v + "'");
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

const std::map<std::string, std::vector<std::string>> kSectionKeys = {
    {"construct", {}},
    {"cycles", {"order", "map"}},
    {"obstruct", {"order", "map"}},
    {"verify", {"samples", "selection", "grid"}},
    {"sweep", {"k", "delta", "epsilon", "control", "zip", "grid", "samples"}},
};

}  // namespace

RunConfig load_run_config(const std::string& path, const std::string& command) {
    RunConfig cfg;
    if (path.empty()) return cfg;

    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");

    std::string section;  // empty = globals
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') bail(path, line_no, "malformed section header '" + line + "'");
            section = trim(line.substr(1, line.size() - 2));
            if (kSectionKeys.find(section) == kSectionKeys.end())
                bail(path, line_no, "unknown section [" + section + "]");
            continue;
        }

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) bail(path, line_no, "expected 'key = value', got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) bail(path, line_no, "empty key");
        if (value.empty()) bail(path, line_no, "empty value for key '" + key + "'");

        if (section.empty()) {
            if (key == "n") cfg.params.N = static_cast<int>(parse_int(path, line_no, value));
            else if (key == "radius") cfg.params.R = parse_double(path, line_no, value);
            else if (key == "k") cfg.params.k = static_cast<int>(parse_int(path, line_no, value));
            else if (key == "delta") cfg.params.delta = parse_double(path, line_no, value);
            else if (key == "epsilon") cfg.params.epsilon = parse_double(path, line_no, value);
            else if (key == "integrator_step") cfg.params.integrator_step = parse_double(path, line_no, value);
            else if (key == "newton_tol") cfg.params.newton_tol = parse_double(path, line_no, value);
            else if (key == "dedup_radius") cfg.params.dedup_radius = parse_double(path, line_no, value);
            else if (key == "grid") cfg.grid = static_cast<int>(parse_int(path, line_no, value));
            else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_int(path, line_no, value));
            else if (key == "out") cfg.out_path = value;
            else if (key == "csv") cfg.csv_path = value;
            else bail(path, line_no, "unknown global key '" + key + "'");
            continue;
        }
        const std::vector<std::string>& allowed = kSectionKeys.at(section);
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            bail(path, line_no, "unknown key '" + key + "' in [" + section + "]");
        if (section != command) continue;  // validated, but belongs to another command

        if (section == "cycles" || section == "obstruct") {
            if (key == "order") cfg.order = static_cast<int>(parse_int(path, line_no, value));
            else if (key == "map") cfg.map_name = value;
        } else if (section == "verify") {
            if (key == "samples") cfg.samples = static_cast<int>(parse_int(path, line_no, value));
            else if (key == "selection") cfg.selection = split_list(value);
            else if (key == "grid") cfg.verify_grid = static_cast<int>(parse_int(path, line_no, value));
        } else if (section == "sweep") {
            if (key == "k") {
                cfg.sweep_k.clear();
                for (const std::string& item : split_list(value))
                    cfg.sweep_k.push_back(static_cast<int>(parse_int(path, line_no, item)));
            } else if (key == "delta") {
                cfg.sweep_delta.clear();
                for (const std::string& item : split_list(value))
                    cfg.sweep_delta.push_back(parse_double(path, line_no, item));
            } else if (key == "epsilon") {
                cfg.sweep_epsilon.clear();
                for (const std::string& item : split_list(value))
                    cfg.sweep_epsilon.push_back(parse_double(path, line_no, item));
            } else if (key == "control") {
                cfg.control_perturbation = parse_bool(path, line_no, value);
            } else if (key == "zip") {
                cfg.sweep_zip = parse_bool(path, line_no, value);
            } else if (key == "grid") {
                cfg.sweep_grid = static_cast<int>(parse_int(path, line_no, value));
            } else if (key == "samples") {
                cfg.sweep_samples = static_cast<int>(parse_int(path, line_no, value));
            }
        }
    }
    return cfg;
}

}  // namespace ballmap
