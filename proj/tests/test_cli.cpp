// End-to-end checks of the ballmap binary: report schemas, exit codes, CSV
// export, and the sweep over k. The binary path arrives via BALLMAP_CLI
// (set by CTest); cheap configurations keep this suite fast.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "ballmap/report.hpp"

namespace {

std::string cli_path() {
    const char* env = std::getenv("BALLMAP_CLI");
    return env ? env : "";
}

struct CliRun {
    int exit_code = -1;
    ballmap::Json report;
    bool report_ok = false;
};

CliRun run(const std::string& args, const std::string& out_name) {
    CliRun result;
    const auto out = std::filesystem::temp_directory_path() / out_name;
    std::filesystem::remove(out);
    const std::string cmd = cli_path() + " " + args + " --out " + out.string() + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    if (status != -1 && WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
    std::ifstream in(out);
    if (in) {
        try {
            in >> result.report;
            result.report_ok = true;
        } catch (...) {
        }
    }
    return result;
}

}  // namespace

TEST_CASE("cli runs require the binary path" * doctest::skip(cli_path().empty())) {
    REQUIRE(!cli_path().empty());

    SUBCASE("construct writes a descriptor with derived constants") {
        const CliRun r = run("construct", "ballmap_cli_construct.json");
        CHECK(r.exit_code == 0);
        REQUIRE(r.report_ok);
        CHECK(r.report["command"] == "construct");
        CHECK(r.report["schema_version"] == ballmap::kSchemaVersion);
        CHECK(r.report["results"]["pi_over_2k"].get<double>() == doctest::Approx(0.5235987755982988));
        CHECK(r.report["results"]["d_points"].size() == 6);
        CHECK(r.report["config"]["epsilon"].get<double>() > 0.0);
    }

    SUBCASE("invalid parameters exit with code 2") {
        CHECK(run("construct --k 0", "ballmap_cli_bad.json").exit_code == 2);
        CHECK(run("cycles --delta 0.9", "ballmap_cli_bad2.json").exit_code == 2);
        CHECK(run("cycles --config /does/not/exist.conf", "ballmap_cli_bad3.json").exit_code == 2);
    }

    SUBCASE("cycles on the unperturbed flow: continuum reported as family samples") {
        const CliRun r = run("cycles --map flow_h --grid 3 --order 6", "ballmap_cli_flowh.json");
        CHECK(r.exit_code == 0);
        REQUIRE(r.report_ok);
        CHECK(r.report["results"]["count"].get<int>() == 0);
        CHECK(r.report["results"]["non_isolated_samples"].size() > 0);
        CHECK(r.report["results"]["enumeration"]["seeds_total"].get<int>() > 0);
    }

    SUBCASE("obstruct on the unperturbed flow is inconclusive, exit 3") {
        const CliRun r = run("obstruct --map flow_h --grid 3 --order 6", "ballmap_cli_flowh_ob.json");
        CHECK(r.exit_code == 3);
        REQUIRE(r.report_ok);
        const ballmap::Json& cert = r.report["results"]["certificate"];
        CHECK(cert["verdict"] == "Inconclusive");
        CHECK(cert["finite_evidence"] == false);
    }

    SUBCASE("sweep over k keeps one cycle per order 2k") {
        // coarse integrator step: the cycle points sit in the exact in-band
        // region, so the counts are step-independent while the run is fast
        const auto conf = std::filesystem::temp_directory_path() / "ballmap_cli_sweep.conf";
        {
            std::ofstream out(conf);
            out << "integrator_step = 0.01\ngrid = 2\n[sweep]\nk = 2, 4\ngrid = 2\nsamples = 50\n";
        }
        const CliRun r = run("sweep --config " + conf.string(), "ballmap_cli_sweep.json");
        CHECK(r.exit_code == 0);
        REQUIRE(r.report_ok);
        const ballmap::Json& tuples = r.report["results"]["tuples"];
        REQUIRE(tuples.size() == 2);
        for (const auto& row : tuples) {
            INFO("k = ", row["k"].get<int>());
            CHECK(row["count"].get<int>() == 1);
            CHECK(row["verdict"] == "NoSquareRoot");
            CHECK(row["order"].get<int>() == 2 * row["k"].get<int>());
        }
        std::filesystem::remove(conf);
    }

    SUBCASE("csv export of cycle points") {
        const auto csv = std::filesystem::temp_directory_path() / "ballmap_cli_points.csv";
        std::filesystem::remove(csv);
        const std::string cmd = cli_path() + " cycles --map flow_h --grid 2 --order 1 --csv " +
                                csv.string() + " --out - >/dev/null 2>&1";
        REQUIRE(std::system(cmd.c_str()) != -1);
        std::ifstream in(csv);
        REQUIRE(in.good());
        std::string header;
        std::getline(in, header);
        CHECK(header == "x1,y1,x2,y2");
        std::filesystem::remove(csv);
    }
}
