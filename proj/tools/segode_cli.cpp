// Command-line front end; all logic lives in segode::cli::run.
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "segode/cli.hpp"

int main(int argc, char** argv) {
    namespace cli = segode::cli;
    cli::RunConfig cfg;
    CLI::App app{"Nonminimal hypersurfaces and their associated singular ODEs"};
    app.require_subcommand(1, 1);
    const std::map<std::string, std::string> about = {
        {"associate", "hypersurface -> associated ODE"},
        {"relations", "check the structural relations of an ODE"},
        {"classify", "Fuchsian / non-Fuchsian verdict"},
        {"reduce", "l-reduction to Briot-Bouquet form"},
        {"solve-formal", "formal power series solution of a reduced ODE"},
        {"monodromy", "numerical monodromy around w = 0"},
        {"growth", "sectorial growth exponents"},
        {"verdict", "classify -> monodromy -> solve-formal/growth -> extension verdict"},
        {"segre-check", "residual of graph samples in the ODE"},
        {"centralizer", "centralizer dimension of a 3x3 monodromy matrix"},
        {"map-linear", "linear-case associated map and collinearity check"},
    };
    for (const auto& name : cli::subcommands()) {
        auto* sub = app.add_subcommand(name, about.count(name) ? about.at(name) : "");
        sub->add_option("--input", cfg.input, "JSON file, '-' for stdin, or inline JSON");
        sub->add_option("--example", cfg.examples, "m-gamma:<g> | mm0:<m> | ex68 (repeat for a sweep)");
        sub->add_option("--order", cfg.order, "series truncation order N")->capture_default_str();
        sub->add_option("--tol-ord", cfg.tol_ord, "ord0 threshold")->capture_default_str();
        sub->add_option("--tol-res", cfg.tol_res, "resonance kernel threshold")->capture_default_str();
        sub->add_option("--loop-radius", cfg.loop_radius, "monodromy loop radius")->capture_default_str();
        sub->add_option("--turns", cfg.turns, "loop turns (negative: clockwise)")->capture_default_str();
        sub->add_option("--format", cfg.format, "json | table")->capture_default_str();
        sub->add_option("--jobs", cfg.jobs, "parallel runs for sweeps")->capture_default_str();
        sub->callback([&cfg, sub] { cfg.subcommand = sub->get_name(); });
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::Error& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : cli::kExitSchema;
    }
    return cli::run(cfg, std::cout, std::cerr);
}
