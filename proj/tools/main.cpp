#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "faf/app/config.hpp"
#include "faf/app/watering.hpp"
#include "faf/sim/trace.hpp"

namespace {

int fail_validation(const std::string& message) {
    std::cerr << "error: " << message << '\n';
    return 1;
}

int fail_runtime(const std::string& message) {
    std::cerr << "error: " << message << '\n';
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"discrete fuzzy inference core with a fuzzy multi-agent runtime"};
    app.require_subcommand(1);

    std::string config_path;
    std::string scenario_path;
    std::string out_path;
    std::string format = "csv";
    bool parallel = false;
    double temperature = 0.0;
    double humidity = 0.0;

    auto* run_cmd = app.add_subcommand("run", "run a scenario against the agent system");
    run_cmd->add_option("--config", config_path, "system configuration file")->required();
    run_cmd->add_option("--scenario", scenario_path, "scenario file")->required();
    run_cmd->add_option("--out", out_path, "write the trace to this file");
    run_cmd->add_option("--format", format, "trace format")
        ->check(CLI::IsMember({"csv", "jsonl"}));
    run_cmd->add_flag("--parallel", parallel, "step agents on one thread each");

    auto* infer_cmd =
        app.add_subcommand("infer", "direct rule-set inference over crisp inputs");
    infer_cmd->add_option("--config", config_path, "system configuration file")->required();
    infer_cmd->add_option("--temperature", temperature, "crisp temperature")->required();
    infer_cmd->add_option("--humidity", humidity, "crisp humidity")->required();

    auto* validate_cmd = app.add_subcommand("validate", "check a configuration file");
    validate_cmd->add_option("--config", config_path, "system configuration file")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail_validation(e.what());
    }

    faf::app::SystemConfig config;
    try {
        config = faf::app::load_config(config_path);
        faf::app::validate_config(config);
    } catch (const std::exception& e) {
        return fail_validation(e.what());
    }

    if (validate_cmd->parsed()) {
        std::cout << "ok\n";
        return 0;
    }

    if (infer_cmd->parsed()) {
        try {
            const double value = faf::app::infer(
                config, {{"temperature", temperature}, {"humidity", humidity}});
            std::cout << faf::sim::format_double(value) << '\n';
            return 0;
        } catch (const std::exception& e) {
            return fail_runtime(e.what());
        }
    }

    faf::sim::Scenario scenario;
    try {
        scenario = faf::app::load_scenario(scenario_path);
    } catch (const std::exception& e) {
        return fail_validation(e.what());
    }

    try {
        auto runtime = faf::app::build_system(config, parallel);
        const std::string output = faf::app::output_variable(config);
        const auto outcome = faf::app::run_scenario(runtime, scenario, output);
        if (!out_path.empty()) {
            std::ofstream out(out_path);
            if (!out) return fail_runtime("cannot write trace file: " + out_path);
            out << (format == "jsonl" ? faf::sim::export_jsonl(runtime.trace())
                                      : faf::sim::export_csv(runtime.trace()));
        }
        if (outcome.output) {
            std::cout << output << ' ' << faf::sim::format_double(*outcome.output) << '\n';
        } else {
            std::cout << output << " none\n";
        }
        return 0;
    } catch (const std::exception& e) {
        return fail_runtime(e.what());
    }
}
