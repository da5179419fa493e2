#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#ifndef CLI_BINARY
#error "CLI_BINARY must point at the demon-engine executable"
#endif

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

// Runs the tool with stdout+stderr captured through a temp file; popen would
// lose the exit code portably, system + redirect keeps both.
RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    const std::string capture =
        env_prefix + std::string(CLI_BINARY) + " " + args + " > cli_capture.txt 2>&1";
    const int raw = std::system(capture.c_str());
    RunResult result;
#ifdef _WIN32
    result.exit_code = raw;
#else
    result.exit_code = WEXITSTATUS(raw);
#endif
    std::ifstream in("cli_capture.txt");
    std::ostringstream text;
    text << in.rdbuf();
    result.output = text.str();
    std::remove("cli_capture.txt");
    return result;
}

void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path);
    out << body;
}

const char* minimal_scenario = R"({
    "schema_version": 1,
    "label": "cli-smoke",
    "system": {"temperature": 1.0, "hamiltonian_initial": [[0.0, 0.0], [0.0, 0.0]]},
    "rho_ab": {"named": "bell"},
    "interaction": {"gate": "identity"},
    "basis": {"named": "computational"},
    "feedback": [{"gate": "identity"}, {"gate": "identity"}]
})";

} // namespace

TEST_CASE("list-builtins names the four bundled scenarios") {
    const RunResult r = run_cli("list-builtins");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("szilard") != std::string::npos);
    CHECK(r.output.find("carnot2") != std::string::npos);
    CHECK(r.output.find("eur-bell") != std::string::npos);
    CHECK(r.output.find("do-nothing") != std::string::npos);
}

TEST_CASE("builtin runs exit cleanly in both formats") {
    CHECK(run_cli("builtin szilard").exit_code == 0);
    const RunResult csv = run_cli("builtin szilard --format csv");
    CHECK(csv.exit_code == 0);
    CHECK(csv.output.rfind("label,", 0) == 0);
    const RunResult json = run_cli("builtin eur-bell");
    CHECK(json.exit_code == 0);
    CHECK(json.output.find("\"joint\"") != std::string::npos);
}

TEST_CASE("run consumes a scenario file") {
    write_file("cli_scenario.json", minimal_scenario);
    const RunResult r = run_cli("run cli_scenario.json");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"label\": \"cli-smoke\"") != std::string::npos);
    std::remove("cli_scenario.json");
}

TEST_CASE("reports can be written to a file") {
    const RunResult r = run_cli("builtin do-nothing --out cli_report.json");
    CHECK(r.exit_code == 0);
    std::ifstream in("cli_report.json");
    REQUIRE(in.good());
    std::ostringstream text;
    text << in.rdbuf();
    CHECK(text.str().find("\"do-nothing\"") != std::string::npos);
    std::remove("cli_report.json");
}

TEST_CASE("bad input exits with one, violations would exit with two") {
    CHECK(run_cli("run missing_file.json").exit_code == 1);

    write_file("cli_bad.json", "{\"schema_version\": 1}");
    const RunResult r = run_cli("run cli_bad.json");
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("error") != std::string::npos);
    std::remove("cli_bad.json");

    write_file("cli_garbage.json", "not json at all");
    CHECK(run_cli("run cli_garbage.json").exit_code == 1);
    std::remove("cli_garbage.json");

    CHECK(run_cli("builtin not-a-scenario").exit_code == 1);
}

TEST_CASE("unknown flags are a usage error") {
    CHECK(run_cli("builtin szilard --frmt json").exit_code != 0);
    CHECK(run_cli("sweep --count five").exit_code != 0);
}

TEST_CASE("sweep emits csv with the summary trailer") {
    const RunResult r = run_cli("sweep --count 4 --seed 11");
    CHECK(r.exit_code == 0);
    CHECK(r.output.rfind("index,item_seed,", 0) == 0);
    CHECK(r.output.find("# summary: count=4 seed=11 violation_rows=0") != std::string::npos);

    const RunResult jobs = run_cli("sweep --count 4 --seed 11 --jobs 3");
    CHECK(jobs.output == r.output);
}

TEST_CASE("kernel backend selection does not change the numbers") {
    const RunResult scalar = run_cli("builtin szilard --format csv", "DEMON_ENGINE_SIMD=scalar ");
    const RunResult native = run_cli("builtin szilard --format csv");
    CHECK(scalar.exit_code == 0);
    CHECK(native.exit_code == 0);
    CHECK(scalar.output == native.output);
}
