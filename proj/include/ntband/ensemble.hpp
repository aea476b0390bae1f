#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ntband/market.hpp"
#include "ntband/strategy.hpp"
#include "ntband/utility.hpp"

namespace ntband {

enum class StrategyKind {
    Frictionless,       // rebalance to A* every tick, zero cost
    Banded,             // classify/rebalance inside LTGM bands, cost k
    BandedCustomWidths, // user width coefficients alpha/(k^{1/3} Pi), cost k
    NaiveRebalance,     // rebalance to A* every tick, paying cost k
    BuyAndHold          // never trade
};

struct StrategySpec {
    StrategyKind kind = StrategyKind::Frictionless;
    // Target-weights override (Frictionless / NaiveRebalance / BuyAndHold
    // only). Defaults to the utility model's optimal curve.
    std::optional<std::vector<double>> weights;
    // Required for BandedCustomWidths: alpha_i / (k^{1/3} Pi).
    std::optional<std::vector<double>> width_coeffs;
};

// Recording times decoupled from dt: `points` times j T / points,
// j = 1..points, each mapped to its nearest step index.
struct RecordingGrid {
    std::vector<std::int64_t> steps;
    std::vector<double> times;

    std::size_t size() const { return steps.size(); }
};

RecordingGrid make_recording_grid(const MarketParams& params, std::size_t points);

enum class PathStatus { Completed, Bankrupt };

struct PathResult {
    std::vector<double> log_wealth; // one entry per recording time reached
    std::vector<TradeEvent> ledger; // populated only when requested
    PathStatus status = PathStatus::Completed;
    double bankrupt_time = 0.0;

    double final_wealth = 0.0;
    double dynamics_sum = 0.0; // sum of per-step wealth increments
    double total_traded = 0.0;
    double total_cost = 0.0;
    std::size_t trade_count = 0;
};

// Diagnostics hooks for tests and the trade-ledger report. Hooks never touch
// the random stream, so instrumented and plain runs stay bit-identical.
struct TradeContext {
    std::int64_t step = 0;
    double t = 0.0;
    const PortfolioState* pre = nullptr;
    const PortfolioState* post = nullptr;
    const std::vector<double>* curve = nullptr;  // frozen pre-trade evaluation
    const std::vector<double>* widths = nullptr; // frozen pre-trade evaluation
    std::span<const TradeEvent> events;
};

struct PathHooks {
    // After the tick's trades (post-trade state), for every tick incl. t = T.
    std::function<void(std::int64_t step, const PortfolioState& state)> on_tick;
    // Only on ticks where at least one trade fired.
    std::function<void(const TradeContext&)> on_trade;
};

struct PathOptions {
    bool keep_ledger = false;
    const PathHooks* hooks = nullptr;
};

// Simulates one path: start with wealth 1 spread per the target curve, then
// per tick trade (strategy permitting) and diffuse one Euler step. Records
// log wealth on the grid. Bankruptcy is reported in the result, not thrown.
PathResult run_path(const MarketParams& params, const StrategySpec& strategy,
                    const UtilityModel& utility, std::uint64_t seed,
                    const RecordingGrid& grid, const PathOptions& options = {});

struct EnsembleSummary {
    std::vector<double> times;
    std::vector<double> mean_log_wealth; // over completed paths
    std::vector<double> sem;             // sample stddev / sqrt(completed)
    std::size_t paths = 0;               // requested S
    std::size_t completed = 0;
    std::size_t aborted = 0;
    std::uint64_t base_seed = 0;

    // Per-path samples (row-major paths x times), kept for paired
    // comparisons under common random numbers. Aborted rows hold NaN.
    std::vector<double> per_path;
    std::vector<std::uint8_t> completed_mask;

    double total_traded = 0.0;
    double total_cost = 0.0;
    std::size_t trade_count = 0;

    double sample(std::size_t path, std::size_t time_index) const {
        return per_path[path * times.size() + time_index];
    }
};

// Runs S independent paths (path i seeded from (base_seed, i)) on `workers`
// threads (0 = hardware concurrency). Aggregation is index-ordered, so the
// summary is identical for any worker count.
EnsembleSummary run_ensemble(const MarketParams& params, const StrategySpec& strategy,
                             const UtilityModel& utility, std::uint64_t base_seed,
                             std::size_t paths, const RecordingGrid& grid,
                             unsigned workers = 0);

struct DifferenceSeries {
    std::vector<double> times;
    std::vector<double> mean_diff;
    std::vector<double> sem; // paired SEM under common random numbers
    bool paired = false;
    std::size_t n = 0; // pairs (paired) or completed paths per side (unpaired)
};

// Per-time mean(a) - mean(b). With a shared base seed the comparison is
// paired path by path; otherwise the SEMs combine in quadrature.
DifferenceSeries compare(const EnsembleSummary& a, const EnsembleSummary& b);

} // namespace ntband
