#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ntband/ensemble.hpp"
#include "ntband/market.hpp"

namespace ntband {

// Parsed run configuration. The file format is a sectioned key = value
// grammar documented in the README; unknown sections or keys are rejected.
struct RunConfig {
    // [market]
    double r = 0.0;
    std::vector<double> mu;
    std::vector<double> sigma;
    std::vector<std::vector<double>> rho;
    double k = 0.0;
    double horizon = 0.0;
    double dt = 0.0;

    // [run]
    StrategyKind strategy = StrategyKind::Frictionless;
    std::size_t paths = 4000;
    std::uint64_t base_seed = 20240601;
    std::size_t recording_points = 200;
    std::string out_dir = "out";
    unsigned threads = 0; // 0 = hardware concurrency

    // [weights] / [widths]
    std::optional<std::vector<double>> weights;
    std::optional<std::vector<double>> width_coeffs;

    MarketParams market() const;
    StrategySpec strategy_spec() const;
    nlohmann::ordered_json resolved_json() const;
};

StrategyKind parse_strategy_kind(const std::string& name);
std::string strategy_kind_name(StrategyKind kind);

// Parses and validates a config file. Throws ConfigError on syntax errors,
// unknown keys, or any MarketParams invariant violation; the underlying
// market errors (e.g. NotPositiveDefinite) propagate as themselves.
RunConfig load_config(const std::string& path);
RunConfig parse_config_text(const std::string& text, const std::string& origin);

} // namespace ntband
