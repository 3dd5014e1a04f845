#include "commands.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace epsnbhd::cli;

int main(int argc, char** argv)
{
    CLI::App app{"Star-shaped epsilon-neighbourhood curves: sampling, plots and raster verification"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::string out_dir;
    std::size_t top = 0;
    int grid = 0;
    std::uint64_t seed = 0;
    auto* o_config = app.add_option("--config", config_path, "key = value configuration file");
    auto* o_out = app.add_option("--out", out_dir, "output directory");
    auto* o_top = app.add_option("--top", top, "number of wedges to mark or list");
    auto* o_grid = app.add_option("--grid", grid, "raster size for verification");
    auto* o_seed = app.add_option("--seed", seed, "reserved; every command is deterministic");

    auto* curve = app.add_subcommand("curve", "write curve.csv and curve.svg");
    auto* cantor = app.add_subcommand("cantor-curve", "write the Cantor-modified curve and dimension.txt");
    auto* verify = app.add_subcommand("verify", "erode/dilate reconstruction check, writes report.txt");
    auto* singular = app.add_subcommand("singularities", "print the largest singularities");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfigInvalid;
    }

    return run_guarded(
        [&]() -> int {
            RunConfig config = *o_config ? load_config(config_path) : RunConfig{};
            if (*o_out)
                config.output = out_dir;
            if (*o_top)
                config.top = top;
            if (*o_grid)
                config.grid = grid;
            if (*o_seed)
                config.seed = seed;
            config.validate();

            if (curve->parsed())
                return cmd_curve(config, std::cerr);
            if (cantor->parsed())
                return cmd_cantor_curve(config, std::cerr);
            if (verify->parsed())
                return cmd_verify(config, std::cerr);
            if (singular->parsed())
                return cmd_singularities(config, std::cout);
            return kConfigInvalid;
        },
        std::cerr);
}
