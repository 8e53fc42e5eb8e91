#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "greedylab/config.hpp"
#include "greedylab/errors.hpp"
#include "greedylab/pipeline.hpp"

namespace gl = greedylab;

namespace {

struct Shared {
    std::string config_path;
    gl::ConfigOverrides overrides;
    gl::CommandOptions options;
};

void add_common(CLI::App* cmd, Shared& s, bool takes_basis) {
    cmd->add_option("--config", s.config_path, "JSON experiment config")->check(CLI::ExistingFile);
    cmd->add_option("--dim", s.overrides.dim, "catalog dimension");
    cmd->add_option("--seed", s.overrides.seed, "catalog seed");
    cmd->add_option("--grid-s", s.overrides.grid_s, "threshold grid ratio s > 1");
    cmd->add_option("--grid-k", s.overrides.grid_k, "number of grid points K");
    cmd->add_option("--out", s.overrides.out, "output directory");
    if (takes_basis) {
        cmd->add_option("basis", s.options.basis_id, "catalog id, e.g. lp:1.0:8 or summing:4");
        cmd->add_option("--basis-file", s.options.basis_file, "custom basis JSON")->check(CLI::ExistingFile);
        cmd->add_flag("--exact", s.options.require_exact, "fail with exit 3 instead of falling back to estimates");
    } else {
        cmd->add_flag("--inject-fault", s.options.inject_fault)->group("");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"greedylab: greedy-algorithm constants for finite-dimensional quasi-Banach bases"};
    app.require_subcommand(1);
    Shared s;
    CLI::App* params = app.add_subcommand("params", "φ(m), μ_m, k_m, SUCC, quasi-greedy, truncation-qg");
    CLI::App* thresholds = app.add_subcommand("thresholds", "λ, θ, φ tables on the grid a_k = s^-k");
    CLI::App* lebesgue = app.add_subcommand("lebesgue", "Lebesgue constants L_m against σ_m");
    CLI::App* verify = app.add_subcommand("verify", "run every check on the whole catalog");
    for (CLI::App* cmd : {params, thresholds, lebesgue}) add_common(cmd, s, true);
    add_common(verify, s, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? gl::kExitOk : gl::kExitUsage;
    }

    gl::RunConfig config;
    try {
        if (!s.config_path.empty()) config = gl::load_config(s.config_path);
        config = gl::apply_overrides(config, s.overrides);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return gl::kExitUsage;
    }

    if (params->parsed()) return gl::cmd_params(config, s.options, std::cout, std::cerr);
    if (thresholds->parsed()) return gl::cmd_thresholds(config, s.options, std::cout, std::cerr);
    if (lebesgue->parsed()) return gl::cmd_lebesgue(config, s.options, std::cout, std::cerr);
    return gl::cmd_verify(config, s.options, std::cout, std::cerr);
}
