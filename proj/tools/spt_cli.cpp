// Command-line driver: simulate | verify | compare.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "spt/runner.hpp"

namespace {

void add_path_options(CLI::App* cmd, spt::RunConfig& config, std::string& model,
                      std::vector<double>& vol, std::vector<double>& drift,
                      bool with_input) {
    if (with_input)
        cmd->add_option("--input", config.input, "CSV file (time,s1,.. or time,mu1,..)");
    cmd->add_option("--model", model, "gbm | roughwalk | deterministic")
        ->check(CLI::IsMember({"gbm", "roughwalk", "deterministic"}));
    cmd->add_option("--j", config.path_spec.assets, "number of stocks");
    cmd->add_option("--steps", config.path_spec.steps,
                    "number of steps (power of two; dt = 1/steps)");
    cmd->add_option("--vol", vol, "volatility per stock (comma separated)")
        ->delimiter(',');
    cmd->add_option("--drift", drift, "drift per stock (comma separated)")->delimiter(',');
    cmd->add_option("--seed", config.path_spec.seed, "RNG seed");
    cmd->add_option("--out", config.out_dir, "output directory");
}

void add_generator_options(CLI::App* cmd, spt::RunConfig& config) {
    cmd->add_option("--generator", config.generator, "quadratic | entropy | diversity")
        ->check(CLI::IsMember({"quadratic", "entropy", "diversity"}));
    cmd->add_option("--p", config.p, "diversity parameter, in (0,1)");
}

spt::RunConfig finalize(spt::RunConfig config, const std::string& model,
                        std::vector<double> vol, std::vector<double> drift) {
    if (model == "gbm")
        config.path_spec.model = spt::PathModel::gbm;
    else if (model == "roughwalk")
        config.path_spec.model = spt::PathModel::roughwalk;
    else
        config.path_spec.model = spt::PathModel::deterministic;
    config.path_spec.vol = std::move(vol);
    config.path_spec.drift = std::move(drift);
    config.path_spec.dt = 1.0 / static_cast<double>(config.path_spec.steps);
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pathwise stochastic portfolio theory toolkit"};
    app.require_subcommand(1);

    spt::RunConfig config;
    std::string model = "gbm";
    std::vector<double> vol, drift;

    CLI::App* sim = app.add_subcommand("simulate", "write a synthetic weight path as CSV");
    add_path_options(sim, config, model, vol, drift, /*with_input=*/false);

    CLI::App* verify =
        app.add_subcommand("verify", "check the master equation and corollaries on a path");
    add_path_options(verify, config, model, vol, drift, /*with_input=*/true);
    add_generator_options(verify, config);
    verify->add_option("--depth", config.depth, "partition depth (levels per report)");

    CLI::App* compare =
        app.add_subcommand("compare", "martingale values and bounds at the times tau_A");
    add_path_options(compare, config, model, vol, drift, /*with_input=*/true);
    add_generator_options(compare, config);
    compare->add_option("--a-min", config.a_min, "smallest A");
    compare->add_option("--a-max", config.a_max, "largest A");
    compare->add_option("--a-count", config.a_count, "grid size (log spaced)");
    compare->add_option("--format", config.format, "csv | svg (svg also writes the tables)")
        ->check(CLI::IsMember({"csv", "svg"}));

    CLI11_PARSE(app, argc, argv);

    try {
        const spt::RunConfig run = finalize(config, model, vol, drift);
        if (sim->parsed()) return spt::run_simulate(run, std::cout);
        if (verify->parsed()) return spt::run_verify(run, std::cout);
        return spt::run_compare(run, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
