#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "ntband/ensemble.hpp"
#include "ntband/market.hpp"

namespace ntband {

inline constexpr const char* kArtifactName = "ntband";
inline constexpr const char* kArtifactVersion = "0.1.0";

// All decimal values in the CSV writers carry 12 significant digits, enough
// to verify the library's 1e-9 invariants from the files alone.
std::string format_sig12(double value);

// Header: t,mean_log_wealth,sem,n_paths
void write_summary_csv(const EnsembleSummary& summary, const std::filesystem::path& dest);

// Header: t,mean_diff,sem,n_paths
void write_difference_csv(const DifferenceSeries& diff, const std::filesystem::path& dest);

// Header: t,asset,side,amount,cost with side in {buy, sell}, assets 1-based.
void write_trades_csv(const PathResult& path, const std::filesystem::path& dest);

// Per-tick portfolio series for a single path. Header:
// t,bond,asset_1,...,asset_n,wealth
struct PathSeries {
    std::vector<double> times;
    std::vector<double> bond;
    std::vector<std::vector<double>> holdings; // one row per tick
    std::vector<double> wealth;
};
void write_path_series_csv(const PathSeries& series, const std::filesystem::path& dest);

// Band table: per asset the LTGM weight, the band coefficient
// alpha/(k^{1/3} Pi), its correlation-ignored counterpart, and (for the
// canonical two-asset parameter set) the originally reported constants.
nlohmann::ordered_json band_table_json(const MarketParams& params, double k);
void write_band_table(const MarketParams& params, double k,
                      const std::filesystem::path& dest);

// Run manifest emitted alongside every data file: resolved configuration,
// artifact version and timestamp. Re-running the same manifest reproduces
// every output byte for byte (timestamp aside).
void write_manifest(const nlohmann::ordered_json& resolved_config,
                    const std::string& command,
                    const std::vector<std::string>& outputs,
                    const std::filesystem::path& dest);

} // namespace ntband
