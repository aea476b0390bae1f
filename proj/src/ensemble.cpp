#include "ntband/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "ntband/errors.hpp"
#include "ntband/rng.hpp"

namespace ntband {

RecordingGrid make_recording_grid(const MarketParams& params, std::size_t points) {
    const std::int64_t steps = params.n_steps();
    if (points == 0) {
        throw ConfigError("at least one recording point is required");
    }
    if (static_cast<std::int64_t>(points) > steps) {
        throw ConfigError("recording points cannot exceed the number of time steps");
    }
    RecordingGrid grid;
    grid.steps.reserve(points);
    grid.times.reserve(points);
    for (std::size_t j = 1; j <= points; ++j) {
        // round(j * steps / points) in exact integer arithmetic
        const std::int64_t s =
            (2 * static_cast<std::int64_t>(j) * steps + static_cast<std::int64_t>(points)) /
            (2 * static_cast<std::int64_t>(points));
        grid.steps.push_back(s);
        grid.times.push_back(static_cast<double>(s) * params.dt());
    }
    return grid;
}

namespace {

std::vector<double> resolve_target_weights(const MarketParams& params,
                                           const StrategySpec& strategy,
                                           const UtilityModel& utility) {
    if (strategy.weights) {
        if (strategy.weights->size() != params.n_assets()) {
            throw ConfigError("weight override length does not match the market");
        }
        if (strategy.kind == StrategyKind::Banded ||
            strategy.kind == StrategyKind::BandedCustomWidths) {
            throw ConfigError("weight overrides apply only to frictionless, naive "
                              "and buy-and-hold strategies");
        }
        return *strategy.weights;
    }
    return utility.optimal_curve(1.0, 0.0);
}

BandPolicy resolve_policy(const MarketParams& params, const StrategySpec& strategy,
                          std::vector<double> target) {
    switch (strategy.kind) {
        case StrategyKind::Frictionless:
            return frictionless_policy(std::move(target));
        case StrategyKind::NaiveRebalance:
            return naive_rebalance_policy(std::move(target), params.k());
        case StrategyKind::Banded:
            return ltgm_band_policy(params);
        case StrategyKind::BandedCustomWidths:
            if (!strategy.width_coeffs) {
                throw ConfigError("custom-width strategy requires width coefficients");
            }
            return custom_band_policy(params, *strategy.width_coeffs);
        case StrategyKind::BuyAndHold:
            break;
    }
    return {};
}

} // namespace

PathResult run_path(const MarketParams& params, const StrategySpec& strategy,
                    const UtilityModel& utility, std::uint64_t seed,
                    const RecordingGrid& grid, const PathOptions& options) {
    const std::size_t n = params.n_assets();
    const std::int64_t last_step = params.n_steps();
    const bool trades = strategy.kind != StrategyKind::BuyAndHold;

    const std::vector<double> target = resolve_target_weights(params, strategy, utility);
    const BandPolicy policy =
        trades ? resolve_policy(params, strategy, target) : BandPolicy{};

    // Simulations start with total wealth 1 at the target distribution.
    PortfolioState state;
    state.holdings = target;
    double target_sum = 0.0;
    for (double w : target) {
        target_sum += w;
    }
    state.bond = 1.0 - target_sum;

    PathResult result;
    result.log_wealth.reserve(grid.size());

    NormalRng rng(seed);
    std::vector<double> z(n);
    std::vector<double> curve(n);
    std::vector<double> widths(n);
    std::vector<TradeEvent> tick_events;
    PortfolioState pre_trade; // scratch for the trade hook

    const PathHooks* hooks = options.hooks;
    const bool want_trade_hook = hooks && hooks->on_trade;
    std::size_t rec = 0;

    for (std::int64_t m = 0; m <= last_step; ++m) {
        const double t = static_cast<double>(m) * params.dt();
        if (trades && m < last_step) {
            const double pi = state.wealth();
            policy.curve(pi, t, curve);
            policy.widths(pi, t, widths);
            bool outside = false;
            for (std::size_t i = 0; i < n; ++i) {
                const double a = state.holdings[i];
                if (a > curve[i] + widths[i] || a < curve[i] - widths[i]) {
                    outside = true;
                    break;
                }
            }
            if (outside) {
                tick_events.clear();
                if (want_trade_hook) {
                    pre_trade = state;
                }
                try {
                    apply_band_trades(state, curve, widths, policy.k, t, &tick_events,
                                      result.total_traded, result.total_cost);
                } catch (const NonPositiveWealth&) {
                    result.status = PathStatus::Bankrupt;
                    result.bankrupt_time = t;
                    break;
                }
                result.trade_count += tick_events.size();
                if (want_trade_hook && !tick_events.empty()) {
                    TradeContext ctx;
                    ctx.step = m;
                    ctx.t = t;
                    ctx.pre = &pre_trade;
                    ctx.post = &state;
                    ctx.curve = &curve;
                    ctx.widths = &widths;
                    ctx.events = tick_events;
                    hooks->on_trade(ctx);
                }
                if (options.keep_ledger) {
                    result.ledger.insert(result.ledger.end(), tick_events.begin(),
                                         tick_events.end());
                }
            }
        }
        if (hooks && hooks->on_tick) {
            hooks->on_tick(m, state);
        }
        if (rec < grid.size() && grid.steps[rec] == m) {
            result.log_wealth.push_back(std::log(state.wealth()));
            ++rec;
        }
        if (m < last_step) {
            rng.fill(z);
            params.correlation_factor().apply(z, z);
            const double before = state.wealth();
            try {
                euler_step_inplace(state, params, z);
            } catch (const NonPositiveWealth&) {
                result.status = PathStatus::Bankrupt;
                result.bankrupt_time = static_cast<double>(m + 1) * params.dt();
                break;
            }
            result.dynamics_sum += state.wealth() - before;
        }
    }

    result.final_wealth = state.wealth();
    return result;
}

EnsembleSummary run_ensemble(const MarketParams& params, const StrategySpec& strategy,
                             const UtilityModel& utility, std::uint64_t base_seed,
                             std::size_t paths, const RecordingGrid& grid,
                             unsigned workers) {
    if (paths < 2) {
        throw ConfigError("an ensemble needs at least two paths");
    }
    const std::size_t points = grid.size();

    EnsembleSummary summary;
    summary.times = grid.times;
    summary.paths = paths;
    summary.base_seed = base_seed;
    summary.per_path.assign(paths * points, std::numeric_limits<double>::quiet_NaN());
    summary.completed_mask.assign(paths, 0);

    std::vector<double> traded(paths, 0.0);
    std::vector<double> cost(paths, 0.0);
    std::vector<std::size_t> trades(paths, 0);

    unsigned n_workers = workers != 0 ? workers : std::thread::hardware_concurrency();
    n_workers = std::max(1u, std::min<unsigned>(n_workers, static_cast<unsigned>(paths)));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto work = [&]() {
        try {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= paths) {
                    return;
                }
                const PathResult pr = run_path(params, strategy, utility,
                                               path_seed(base_seed, i), grid);
                if (pr.status == PathStatus::Completed) {
                    summary.completed_mask[i] = 1;
                    std::copy(pr.log_wealth.begin(), pr.log_wealth.end(),
                              summary.per_path.begin() + static_cast<std::ptrdiff_t>(i * points));
                }
                traded[i] = pr.total_traded;
                cost[i] = pr.total_cost;
                trades[i] = pr.trade_count;
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) {
                failure = std::current_exception();
            }
        }
    };

    if (n_workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (unsigned w = 0; w < n_workers; ++w) {
            pool.emplace_back(work);
        }
        for (auto& th : pool) {
            th.join();
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    // Index-ordered reduction: identical result for every worker count.
    for (std::size_t i = 0; i < paths; ++i) {
        if (summary.completed_mask[i]) {
            ++summary.completed;
        } else {
            ++summary.aborted;
        }
        summary.total_traded += traded[i];
        summary.total_cost += cost[i];
        summary.trade_count += trades[i];
    }
    if (summary.completed < 2) {
        throw ConfigError("fewer than two paths completed; no standard error is defined");
    }

    summary.mean_log_wealth.assign(points, 0.0);
    summary.sem.assign(points, 0.0);
    for (std::size_t jt = 0; jt < points; ++jt) {
        double mean = 0.0;
        for (std::size_t i = 0; i < paths; ++i) {
            if (summary.completed_mask[i]) {
                mean += summary.per_path[i * points + jt];
            }
        }
        mean /= static_cast<double>(summary.completed);
        double ss = 0.0;
        for (std::size_t i = 0; i < paths; ++i) {
            if (summary.completed_mask[i]) {
                const double d = summary.per_path[i * points + jt] - mean;
                ss += d * d;
            }
        }
        const double var = ss / static_cast<double>(summary.completed - 1);
        summary.mean_log_wealth[jt] = mean;
        summary.sem[jt] = std::sqrt(var / static_cast<double>(summary.completed));
    }
    return summary;
}

DifferenceSeries compare(const EnsembleSummary& a, const EnsembleSummary& b) {
    if (a.times.size() != b.times.size() || !std::equal(a.times.begin(), a.times.end(),
                                                        b.times.begin())) {
        throw GridMismatch("ensemble recording grids differ");
    }
    if (a.paths != b.paths) {
        throw GridMismatch("ensemble path counts differ");
    }
    const std::size_t points = a.times.size();

    DifferenceSeries diff;
    diff.times = a.times;
    diff.mean_diff.assign(points, 0.0);
    diff.sem.assign(points, 0.0);
    diff.paired = (a.base_seed == b.base_seed);

    if (diff.paired) {
        std::vector<std::size_t> both;
        both.reserve(a.paths);
        for (std::size_t i = 0; i < a.paths; ++i) {
            if (a.completed_mask[i] && b.completed_mask[i]) {
                both.push_back(i);
            }
        }
        if (both.size() < 2) {
            throw ConfigError("fewer than two common paths for a paired comparison");
        }
        diff.n = both.size();
        for (std::size_t jt = 0; jt < points; ++jt) {
            double mean = 0.0;
            for (std::size_t i : both) {
                mean += a.per_path[i * points + jt] - b.per_path[i * points + jt];
            }
            mean /= static_cast<double>(both.size());
            double ss = 0.0;
            for (std::size_t i : both) {
                const double d =
                    a.per_path[i * points + jt] - b.per_path[i * points + jt] - mean;
                ss += d * d;
            }
            const double var = ss / static_cast<double>(both.size() - 1);
            diff.mean_diff[jt] = mean;
            diff.sem[jt] = std::sqrt(var / static_cast<double>(both.size()));
        }
    } else {
        diff.n = std::min(a.completed, b.completed);
        for (std::size_t jt = 0; jt < points; ++jt) {
            diff.mean_diff[jt] = a.mean_log_wealth[jt] - b.mean_log_wealth[jt];
            diff.sem[jt] = std::hypot(a.sem[jt], b.sem[jt]);
        }
    }
    return diff;
}

} // namespace ntband
