#include "ntband/cli.hpp"

#include <filesystem>
#include <iostream>

#include "ntband/config.hpp"
#include "ntband/errors.hpp"
#include "ntband/report.hpp"
#include "ntband/rng.hpp"

namespace ntband {

namespace {

namespace fs = std::filesystem;

RunConfig load_with_overrides(const std::string& path, const CliOptions& options) {
    RunConfig cfg = load_config(path);
    if (options.out_dir) cfg.out_dir = *options.out_dir;
    if (options.seed) cfg.base_seed = *options.seed;
    if (options.paths) {
        if (*options.paths < 2) {
            throw ConfigError("--paths must be at least 2 for standard errors");
        }
        cfg.paths = *options.paths;
    }
    if (options.threads) cfg.threads = *options.threads;
    return cfg;
}

fs::path prepare_out_dir(const RunConfig& cfg) {
    fs::path dir(cfg.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw IoError("cannot create output directory '" + dir.string() + "'");
    }
    return dir;
}

template <typename Fn>
int guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const GridMismatch& e) {
        std::cerr << "grid mismatch: " << e.what() << '\n';
        return kExitConfig;
    } catch (const NotPositiveDefinite& e) {
        std::cerr << "market error: " << e.what() << '\n';
        return kExitNotPositiveDefinite;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
}

} // namespace

int cmd_weights(const CliOptions& options) {
    return guarded([&]() {
        const RunConfig cfg = load_with_overrides(options.config_path, options);
        const MarketParams params = cfg.market();
        const LtgmModel model(params);
        const nlohmann::ordered_json table = band_table_json(params, params.k());

        const fs::path dir = prepare_out_dir(cfg);
        write_band_table(params, params.k(), dir / "band_table.json");
        write_manifest(cfg.resolved_json(), "weights", {"band_table.json"},
                       dir / "manifest.json");

        for (const auto& row : table["assets"]) {
            if (row["bracket_negative"].get<bool>()) {
                std::cerr << "warning: asset " << row["asset"]
                          << " has a negative width bracket; the small-cost "
                             "asymptotics may be outside their validity regime\n";
            }
        }

        if (!options.quiet) {
            std::cout << "optimal weights p:";
            for (double w : model.weights()) {
                std::cout << ' ' << format_sig12(w);
            }
            std::cout << "\nbond weight q: " << format_sig12(model.bond_weight())
                      << "\ngrowth rate g: " << format_sig12(model.growth_rate())
                      << "\nband coefficients alpha/(k^(1/3) Pi):";
            for (const auto& row : table["assets"]) {
                std::cout << ' ' << format_sig12(row["alpha_over_k13_pi"].get<double>());
            }
            std::cout << "\nwrote " << (dir / "band_table.json").string() << '\n';
        }
        return kExitOk;
    });
}

int cmd_simulate(const CliOptions& options) {
    return guarded([&]() {
        const RunConfig cfg = load_with_overrides(options.config_path, options);
        const MarketParams params = cfg.market();
        const LtgmModel model(params);
        const RecordingGrid grid = make_recording_grid(params, cfg.recording_points);

        const EnsembleSummary summary =
            run_ensemble(params, cfg.strategy_spec(), model, cfg.base_seed, cfg.paths,
                         grid, cfg.threads);

        const fs::path dir = prepare_out_dir(cfg);
        write_summary_csv(summary, dir / "summary.csv");
        write_manifest(cfg.resolved_json(), "simulate", {"summary.csv"},
                       dir / "manifest.json");

        if (!options.quiet) {
            std::cout << "strategy " << strategy_kind_name(cfg.strategy) << ", S = "
                      << summary.completed << ", T = " << format_sig12(params.horizon())
                      << "\nmean log wealth at T: "
                      << format_sig12(summary.mean_log_wealth.back()) << " +/- "
                      << format_sig12(summary.sem.back()) << " (SEM)\n"
                      << "trades: " << summary.trade_count
                      << ", total cost: " << format_sig12(summary.total_cost) << '\n'
                      << "wrote " << (dir / "summary.csv").string() << '\n';
        }
        if (summary.aborted > 0) {
            std::cerr << "warning: " << summary.aborted
                      << " path(s) went bankrupt and were excluded from the means\n";
            return kExitBankruptPaths;
        }
        return kExitOk;
    });
}

int cmd_compare(const CliOptions& options) {
    return guarded([&]() {
        const RunConfig cfg_a = load_with_overrides(options.config_path, options);
        const RunConfig cfg_b = load_with_overrides(options.config_b_path, options);
        if (cfg_a.base_seed != cfg_b.base_seed) {
            throw ConfigError("compare requires both configs to share base_seed");
        }
        if (cfg_a.paths != cfg_b.paths) {
            throw ConfigError("compare requires both configs to share paths");
        }

        const MarketParams params_a = cfg_a.market();
        const MarketParams params_b = cfg_b.market();
        const RecordingGrid grid_a = make_recording_grid(params_a, cfg_a.recording_points);
        const RecordingGrid grid_b = make_recording_grid(params_b, cfg_b.recording_points);
        if (grid_a.times != grid_b.times) {
            throw GridMismatch("the two configs have different recording grids");
        }

        const LtgmModel model_a(params_a);
        const LtgmModel model_b(params_b);
        const EnsembleSummary a = run_ensemble(params_a, cfg_a.strategy_spec(), model_a,
                                               cfg_a.base_seed, cfg_a.paths, grid_a,
                                               cfg_a.threads);
        const EnsembleSummary b = run_ensemble(params_b, cfg_b.strategy_spec(), model_b,
                                               cfg_b.base_seed, cfg_b.paths, grid_b,
                                               cfg_b.threads);
        const DifferenceSeries diff = compare(a, b);

        const fs::path dir = prepare_out_dir(cfg_a);
        write_difference_csv(diff, dir / "difference.csv");
        nlohmann::ordered_json config_pair;
        config_pair["a"] = cfg_a.resolved_json();
        config_pair["b"] = cfg_b.resolved_json();
        config_pair["paired"] = diff.paired;
        write_manifest(config_pair, "compare", {"difference.csv"}, dir / "manifest.json");

        if (!options.quiet) {
            std::cout << (diff.paired ? "paired" : "unpaired") << " difference at T: "
                      << format_sig12(diff.mean_diff.back()) << " +/- "
                      << format_sig12(diff.sem.back()) << " (SEM), n = " << diff.n << '\n'
                      << "wrote " << (dir / "difference.csv").string() << '\n';
        }
        if (a.aborted + b.aborted > 0) {
            std::cerr << "warning: " << (a.aborted + b.aborted)
                      << " path(s) went bankrupt across the two ensembles\n";
            return kExitBankruptPaths;
        }
        return kExitOk;
    });
}

int cmd_trades(const CliOptions& options) {
    return guarded([&]() {
        const RunConfig cfg = load_with_overrides(options.config_path, options);
        const MarketParams params = cfg.market();
        const LtgmModel model(params);
        const RecordingGrid grid = make_recording_grid(params, cfg.recording_points);

        PathSeries series;
        PathHooks hooks;
        hooks.on_tick = [&](std::int64_t step, const PortfolioState& state) {
            series.times.push_back(static_cast<double>(step) * params.dt());
            series.bond.push_back(state.bond);
            series.holdings.push_back(state.holdings);
            series.wealth.push_back(state.wealth());
        };
        PathOptions path_options;
        path_options.keep_ledger = true;
        path_options.hooks = &hooks;

        // The ledger path is path 0 of the configured ensemble seed.
        const PathResult path = run_path(params, cfg.strategy_spec(), model,
                                         path_seed(cfg.base_seed, 0), grid, path_options);

        const fs::path dir = prepare_out_dir(cfg);
        write_trades_csv(path, dir / "trades.csv");
        write_path_series_csv(series, dir / "path_series.csv");
        write_manifest(cfg.resolved_json(), "trades", {"trades.csv", "path_series.csv"},
                       dir / "manifest.json");

        if (!options.quiet) {
            std::cout << "strategy " << strategy_kind_name(cfg.strategy) << ", path seed "
                      << path_seed(cfg.base_seed, 0) << "\nevents: " << path.ledger.size()
                      << ", traded: " << format_sig12(path.total_traded)
                      << ", cost: " << format_sig12(path.total_cost)
                      << "\nfinal wealth: " << format_sig12(path.final_wealth) << '\n'
                      << "wrote " << (dir / "trades.csv").string() << " and "
                      << (dir / "path_series.csv").string() << '\n';
        }
        if (path.status == PathStatus::Bankrupt) {
            std::cerr << "warning: the path went bankrupt at t = "
                      << format_sig12(path.bankrupt_time) << '\n';
            return kExitBankruptPaths;
        }
        return kExitOk;
    });
}

} // namespace ntband
