#include <cstdint>
#include <string>

#include <CLI11.hpp>

#include "patchkpp/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"patchkpp - periodic patchy-landscape KPP toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string outdir = "out";
    std::uint64_t seed = 0;
    bool has_seed = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON run configuration")->required();
        sub->add_option("--out", outdir, "output directory (default: out)");
        sub->add_option("--seed", seed, "seed for randomized initial data")
            ->each([&](const std::string&) { has_seed = true; });
    };

    for (const char* name : {"eigen", "speed", "simulate", "steady", "persistence-map",
                             "selftest"})
        add_common(app.add_subcommand(name));

    CLI11_PARSE(app, argc, argv);

    const std::string command = app.get_subcommands().front()->get_name();
    return patchkpp::dispatch(command, config_path, outdir, seed, has_seed);
}
