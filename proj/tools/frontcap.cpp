#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cli/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"frontcap: prediction-correction solver for tumour growth models with degenerate diffusion"};
    app.require_subcommand(1);

    std::string config, out;
    std::vector<std::string> overrides;
    const char* names[][2] = {
        {"run", "run one configuration and write series, snapshots and run.json"},
        {"converge", "refine a Barenblatt run and tabulate convergence orders"},
        {"compare-oracle", "compare fronts and pressure with the free-boundary limit"},
        {"sweep-m", "find the largest stable fixed step for each m"},
    };
    for (auto& [name, help] : names) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--config", config, "experiment config (key = value or JSON)")->required();
        sub->add_option("--out", out, "output directory")->required();
        sub->add_option("--override", overrides, "key=value, applied after the config file");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : frontcap::cli::kUsage;
    }
    const auto* sub = app.get_subcommands().front();
    return frontcap::cli::run_command(sub->get_name(), config, out, overrides, std::cout, std::cerr);
}
