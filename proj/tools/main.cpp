#include <CLI11.hpp>

#include "ntband/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"No-transaction-band portfolio simulator"};
    app.require_subcommand(1);

    ntband::CliOptions options;

    auto add_common = [&](CLI::App* cmd, bool needs_run_flags) {
        cmd->add_option("--config", options.config_path, "Run configuration file")
            ->required();
        cmd->add_option("--out", options.out_dir, "Output directory (overrides out_dir)");
        cmd->add_flag("--quiet", options.quiet, "Suppress stdout reporting");
        if (needs_run_flags) {
            cmd->add_option("--seed", options.seed, "Base seed (overrides base_seed)");
            cmd->add_option("--paths", options.paths, "Path count S (overrides paths)");
            cmd->add_option("--threads", options.threads,
                            "Worker threads, 0 = hardware (overrides threads)");
        }
    };

    CLI::App* weights = app.add_subcommand(
        "weights", "Frictionless weights, growth rate and band coefficients");
    add_common(weights, false);

    CLI::App* simulate = app.add_subcommand(
        "simulate", "Monte Carlo ensemble of the configured strategy");
    add_common(simulate, true);

    CLI::App* compare_cmd = app.add_subcommand(
        "compare", "Common-random-numbers difference of two configurations");
    add_common(compare_cmd, true);
    compare_cmd->add_option("--config-b", options.config_b_path, "Second configuration")
        ->required();

    CLI::App* trades = app.add_subcommand(
        "trades", "Trade ledger and portfolio series for one seeded path");
    add_common(trades, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        // CLI11 returns 0 for --help; anything else is a usage error.
        return code == 0 ? 0 : ntband::kExitConfig;
    }

    if (weights->parsed()) return ntband::cmd_weights(options);
    if (simulate->parsed()) return ntband::cmd_simulate(options);
    if (compare_cmd->parsed()) return ntband::cmd_compare(options);
    if (trades->parsed()) return ntband::cmd_trades(options);
    return ntband::kExitConfig;
}
