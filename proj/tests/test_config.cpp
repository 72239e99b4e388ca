#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "ballmap/report.hpp"
#include "ballmap/run_config.hpp"

using namespace ballmap;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& body) {
    const std::filesystem::path path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path);
    out << body;
    return path;
}

}  // namespace

TEST_CASE("config file parsing") {
    const auto path = write_temp("ballmap_test_full.conf", R"(
# full configuration
n = 2
radius = 1.0
k = 3
delta = 0.05
epsilon = 0.001
integrator_step = 0.002
newton_tol = 1e-9
dedup_radius = 2e-5
grid = 9
seed = 777
out = report.json

[cycles]
order = 6
map = control

[verify]
samples = 120
selection = boundary_rigidity, rotation_step
grid = 5

[sweep]
k = 2, 3, 4
delta = 0.05, 0.025
control = true
zip = false
)");

    SUBCASE("globals and the requested section are merged") {
        const RunConfig cfg = load_run_config(path.string(), "cycles");
        CHECK(cfg.params.N == 2);
        CHECK(cfg.params.delta == 0.05);
        CHECK(cfg.params.integrator_step == 0.002);
        CHECK(cfg.params.newton_tol == 1e-9);
        CHECK(cfg.grid == 9);
        CHECK(cfg.seed == 777);
        CHECK(cfg.out_path == "report.json");
        CHECK(cfg.order == 6);
        CHECK(cfg.map_name == "control");
        // verify/sweep section values do not leak into a cycles run
        CHECK(cfg.samples == 200);
        CHECK(cfg.sweep_k.empty());
    }
    SUBCASE("other sections are applied for their command") {
        const RunConfig verify_cfg = load_run_config(path.string(), "verify");
        CHECK(verify_cfg.samples == 120);
        CHECK(verify_cfg.verify_grid == 5);
        REQUIRE(verify_cfg.selection.size() == 2);
        CHECK(verify_cfg.selection[0] == "boundary_rigidity");

        const RunConfig sweep_cfg = load_run_config(path.string(), "sweep");
        CHECK(sweep_cfg.sweep_k == std::vector<int>{2, 3, 4});
        CHECK(sweep_cfg.sweep_delta == std::vector<double>{0.05, 0.025});
        CHECK(sweep_cfg.control_perturbation);
        CHECK_FALSE(sweep_cfg.sweep_zip);
    }
    SUBCASE("resolved order defaults to 2k") {
        RunConfig cfg;
        cfg.params.k = 4;
        CHECK(cfg.resolved_order() == 8);
        cfg.order = 6;
        CHECK(cfg.resolved_order() == 6);
    }
    std::filesystem::remove(path);
}

TEST_CASE("config rejects unknown input") {
    SUBCASE("unknown global key") {
        const auto path = write_temp("ballmap_test_badkey.conf", "radius = 1.0\nwibble = 3\n");
        CHECK_THROWS_AS(load_run_config(path.string(), "cycles"), std::invalid_argument);
        std::filesystem::remove(path);
    }
    SUBCASE("unknown section") {
        const auto path = write_temp("ballmap_test_badsec.conf", "[plotting]\ncolor = red\n");
        CHECK_THROWS_AS(load_run_config(path.string(), "cycles"), std::invalid_argument);
        std::filesystem::remove(path);
    }
    SUBCASE("unknown key in a section that belongs to another command") {
        const auto path = write_temp("ballmap_test_badsec2.conf", "[verify]\nbogus = 1\n");
        CHECK_THROWS_AS(load_run_config(path.string(), "cycles"), std::invalid_argument);
        std::filesystem::remove(path);
    }
    SUBCASE("malformed number names the line") {
        const auto path = write_temp("ballmap_test_badnum.conf", "radius = 1.0\ndelta = fast\n");
        try {
            load_run_config(path.string(), "cycles");
            FAIL("expected rejection");
        } catch (const std::invalid_argument& e) {
            CHECK(std::string(e.what()).find(":2") != std::string::npos);
        }
        std::filesystem::remove(path);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(load_run_config("/nonexistent/ballmap.conf", "cycles"), std::invalid_argument);
    }
    SUBCASE("empty path gives defaults") {
        const RunConfig cfg = load_run_config("", "cycles");
        CHECK(cfg.params.N == 2);
        CHECK(cfg.grid == 12);
    }
}

TEST_CASE("report serialization") {
    RunConfig cfg;

    SUBCASE("skeleton carries the schema fields") {
        const Json report = make_report("cycles", cfg);
        CHECK(report["schema_version"] == kSchemaVersion);
        CHECK(report["tool"]["name"] == "ballmap");
        CHECK(report["tool"]["version"] == std::string(kToolVersion));
        CHECK(report["command"] == "cycles");
        CHECK(report.contains("config"));
        CHECK(report.contains("results"));
        CHECK(report.contains("checks"));
        CHECK(report.contains("timing"));
        CHECK(report["config"]["k"] == 3);
    }

    SUBCASE("points are interleaved real arrays") {
        BallPoint z;
        z.coords = {Complex{1.0, 2.0}, Complex{3.0, 4.0}};
        const Json j = point_to_json(z);
        REQUIRE(j.size() == 4);
        CHECK(j[0] == 1.0);
        CHECK(j[1] == 2.0);
        CHECK(j[2] == 3.0);
        CHECK(j[3] == 4.0);
    }

    SUBCASE("atomic JSON write leaves no temp file") {
        const auto path = std::filesystem::temp_directory_path() / "ballmap_test_report.json";
        write_json_atomic(path.string(), make_report("verify", cfg));
        CHECK(std::filesystem::exists(path));
        CHECK_FALSE(std::filesystem::exists(path.string() + ".tmp"));
        std::ifstream in(path);
        Json parsed;
        in >> parsed;
        CHECK(parsed["command"] == "verify");
        std::filesystem::remove(path);
    }

    SUBCASE("CSV header and ordering") {
        BallPoint a;
        a.coords = {Complex{1.0, -2.0}, Complex{0.25, 0.5}};
        const auto path = std::filesystem::temp_directory_path() / "ballmap_test_points.csv";
        write_points_csv_atomic(path.string(), {a}, 2);
        std::ifstream in(path);
        std::string header, row;
        std::getline(in, header);
        std::getline(in, row);
        CHECK(header == "x1,y1,x2,y2");
        CHECK(row == "1,-2,0.25,0.5");
        std::filesystem::remove(path);
    }

    SUBCASE("certificate round trip keys") {
        Certificate cert;
        cert.cycle_order = 6;
        cert.cycle_count = 1;
        cert.verdict = Certificate::Verdict::NoSquareRoot;
        cert.params = cfg.params;
        const Json j = certificate_to_json(cert);
        CHECK(j["verdict"] == "NoSquareRoot");
        CHECK(j["cycle_order"] == 6);
        CHECK(j["cycle_count"] == 1);
        CHECK(j["finite_evidence"] == true);
        CHECK(j.contains("params"));
    }
}
