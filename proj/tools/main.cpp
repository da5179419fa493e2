#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "demon/report.hpp"
#include "demon/scenario.hpp"
#include "demon/sweep.hpp"
#include "demon/uncertainty.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_input_error = 1;
constexpr int exit_violation = 2;

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write to " + out_path);
    out << text;
}

int execute_document(const demon::ScenarioDocument& doc, const std::string& out_path,
                     const std::string& format) {
    std::string text;
    std::vector<std::string> violations;
    if (doc.mode == demon::ScenarioDocument::Mode::two_engine) {
        const demon::TwoEngineReport report = demon::two_engine_bounds(doc.first, *doc.second);
        violations = demon::check_violations(report);
        text = format == "csv" ? demon::report_to_csv(doc.first, *doc.second, report)
                               : demon::report_to_json(doc.first, *doc.second, report).dump(2) + "\n";
    } else {
        const demon::BoundReport report = demon::evaluate_engine(doc.first);
        violations = demon::check_violations(report);
        text = format == "csv" ? demon::report_to_csv(doc.first, report)
                               : demon::report_to_json(doc.first, report).dump(2) + "\n";
    }
    write_output(text, out_path);
    if (!violations.empty()) {
        for (const auto& v : violations) std::cerr << "violation: " << v << "\n";
        return exit_violation;
    }
    return exit_ok;
}

std::array<std::size_t, 4> parse_dims(const std::string& spec) {
    std::array<std::size_t, 4> dims{};
    std::size_t at = 0, field = 0;
    while (field < 4) {
        const std::size_t comma = spec.find(',', at);
        const std::string part =
            comma == std::string::npos ? spec.substr(at) : spec.substr(at, comma - at);
        std::size_t used = 0;
        dims[field] = std::stoul(part, &used);
        if (used != part.size() || dims[field] == 0) {
            throw std::runtime_error("bad --dims entry '" + part + "'");
        }
        ++field;
        if (comma == std::string::npos) break;
        at = comma + 1;
    }
    if (field != 4) throw std::runtime_error("--dims needs four values: s,r,a,b");
    return dims;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Measurement-feedback engine simulator"};
    app.require_subcommand(1);

    std::string run_file, out_path, format = "json";
    CLI::App* run = app.add_subcommand("run", "Evaluate a scenario file");
    run->add_option("file", run_file, "Scenario JSON file")->required();
    run->add_option("--out", out_path, "Write the report here instead of stdout");
    run->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    std::string builtin_name;
    std::uint64_t builtin_seed = 1;
    CLI::App* builtin = app.add_subcommand("builtin", "Evaluate a built-in scenario");
    builtin->add_option("name", builtin_name, "Built-in scenario name")->required();
    builtin->add_option("--seed", builtin_seed, "Seed for randomized built-ins");
    builtin->add_option("--out", out_path, "Write the report here instead of stdout");
    builtin->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    demon::SweepOptions sweep_options;
    std::string dims_spec = "2,2,2,2";
    CLI::App* sweep = app.add_subcommand("sweep", "Randomized self-check, CSV output");
    sweep->add_option("--count", sweep_options.count, "Number of random engine pairs");
    sweep->add_option("--seed", sweep_options.seed, "Master seed");
    sweep->add_option("--dims", dims_spec, "Factor dimensions s,r,a,b");
    sweep->add_option("--jobs", sweep_options.jobs, "Worker threads");
    sweep->add_option("--out", out_path, "Write the CSV here instead of stdout");

    CLI::App* list = app.add_subcommand("list-builtins", "List built-in scenario names");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_input_error;
    }

    try {
        if (list->parsed()) {
            for (const auto& name : demon::builtin_names()) std::cout << name << "\n";
            return exit_ok;
        }
        if (run->parsed()) {
            return execute_document(demon::parse_scenario_file(run_file), out_path, format);
        }
        if (builtin->parsed()) {
            return execute_document(demon::builtin_scenario(builtin_name, builtin_seed), out_path,
                                    format);
        }
        const auto dims = parse_dims(dims_spec);
        sweep_options.dim_s = dims[0];
        sweep_options.dim_r = dims[1];
        sweep_options.dim_a = dims[2];
        sweep_options.dim_b = dims[3];
        const demon::SweepResult result = demon::run_sweep(sweep_options);
        write_output(demon::sweep_to_csv(result), out_path);
        if (result.violation_rows != 0) {
            std::cerr << result.violation_rows << " of " << result.rows.size()
                      << " rows violated a bound\n";
            return exit_violation;
        }
        return exit_ok;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input_error;
    }
}
