#include "ntband/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "ntband/errors.hpp"
#include "ntband/strategy.hpp"

namespace ntband {

std::string format_sig12(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

namespace {

std::ofstream open_for_write(const std::filesystem::path& dest) {
    std::ofstream out(dest, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + dest.string() + " for writing");
    }
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& dest) {
    out.flush();
    if (!out) {
        throw IoError("write to " + dest.string() + " failed");
    }
}

bool near(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

// The canonical two-asset parameter set the band table annotates with the
// originally reported width constants (0.167, 0.710 per k^{1/3} Pi).
bool is_reference_market(const MarketParams& p) {
    return p.n_assets() == 2 && near(p.r(), 1.0) && near(p.mu()[0], 1.3) &&
           near(p.mu()[1], 1.5) && near(p.sigma()[0], 1.0) && near(p.sigma()[1], 1.0) &&
           near(p.rho()[0][1], 0.5);
}

std::string timestamp_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace

void write_summary_csv(const EnsembleSummary& summary, const std::filesystem::path& dest) {
    std::ofstream out = open_for_write(dest);
    out << "t,mean_log_wealth,sem,n_paths\n";
    for (std::size_t j = 0; j < summary.times.size(); ++j) {
        out << format_sig12(summary.times[j]) << ',' << format_sig12(summary.mean_log_wealth[j])
            << ',' << format_sig12(summary.sem[j]) << ',' << summary.completed << '\n';
    }
    finish(out, dest);
}

void write_difference_csv(const DifferenceSeries& diff, const std::filesystem::path& dest) {
    std::ofstream out = open_for_write(dest);
    out << "t,mean_diff,sem,n_paths\n";
    for (std::size_t j = 0; j < diff.times.size(); ++j) {
        out << format_sig12(diff.times[j]) << ',' << format_sig12(diff.mean_diff[j]) << ','
            << format_sig12(diff.sem[j]) << ',' << diff.n << '\n';
    }
    finish(out, dest);
}

void write_trades_csv(const PathResult& path, const std::filesystem::path& dest) {
    std::ofstream out = open_for_write(dest);
    out << "t,asset,side,amount,cost\n";
    for (const TradeEvent& ev : path.ledger) {
        out << format_sig12(ev.t) << ',' << (ev.asset + 1) << ','
            << (ev.side == TradeSide::Buy ? "buy" : "sell") << ','
            << format_sig12(ev.amount) << ',' << format_sig12(ev.cost) << '\n';
    }
    finish(out, dest);
}

void write_path_series_csv(const PathSeries& series, const std::filesystem::path& dest) {
    std::ofstream out = open_for_write(dest);
    const std::size_t n = series.holdings.empty() ? 0 : series.holdings.front().size();
    out << "t,bond";
    for (std::size_t i = 1; i <= n; ++i) {
        out << ",asset_" << i;
    }
    out << ",wealth\n";
    for (std::size_t row = 0; row < series.times.size(); ++row) {
        out << format_sig12(series.times[row]) << ',' << format_sig12(series.bond[row]);
        for (double a : series.holdings[row]) {
            out << ',' << format_sig12(a);
        }
        out << ',' << format_sig12(series.wealth[row]) << '\n';
    }
    finish(out, dest);
}

nlohmann::ordered_json band_table_json(const MarketParams& params, double k) {
    const std::size_t n = params.n_assets();
    const std::vector<double> p = optimal_weights(params);
    const std::vector<double> coeffs = band_width_ltgm(params, 1.0, 1.0); // alpha/(k^{1/3} Pi)
    const std::vector<double> brackets = ltgm_band_brackets(params);

    // Correlation-ignored counterpart: the same closed form with a diagonal
    // covariance, p_i = mu_hat_i / sigma_i^2.
    double c_diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        c_diag += params.mu_hat()[i] * params.mu_hat()[i] /
                  (params.sigma()[i] * params.sigma()[i]);
    }

    const bool reference = is_reference_market(params);
    const double reported[2] = {0.167, 0.710};

    nlohmann::ordered_json table;
    table["k"] = k;
    const LtgmModel model(params);
    table["growth_rate"] = model.growth_rate();
    table["bond_weight"] = model.bond_weight();
    table["assets"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < n; ++i) {
        const double s2 = params.sigma()[i] * params.sigma()[i];
        const double p_diag = params.mu_hat()[i] / s2;
        const double bracket_diag = (0.5 * (c_diag + s2) - params.mu_hat()[i]) * p_diag * p_diag;
        nlohmann::ordered_json row;
        row["asset"] = i + 1;
        row["weight"] = p[i];
        row["alpha_over_k13_pi"] = coeffs[i];
        row["alpha_uncorrelated"] = std::cbrt(3.0 / s2 * std::abs(bracket_diag));
        if (reference && i < 2) {
            row["paper_reported"] = reported[i];
        } else {
            row["paper_reported"] = nullptr;
        }
        row["alpha_at_k"] = coeffs[i] * std::cbrt(k);
        row["bracket_negative"] = brackets[i] < 0.0;
        table["assets"].push_back(std::move(row));
    }
    return table;
}

void write_band_table(const MarketParams& params, double k,
                      const std::filesystem::path& dest) {
    std::ofstream out = open_for_write(dest);
    out << band_table_json(params, k).dump(2) << '\n';
    finish(out, dest);
}

void write_manifest(const nlohmann::ordered_json& resolved_config,
                    const std::string& command,
                    const std::vector<std::string>& outputs,
                    const std::filesystem::path& dest) {
    nlohmann::ordered_json manifest;
    manifest["artifact"] = kArtifactName;
    manifest["version"] = kArtifactVersion;
    manifest["command"] = command;
    manifest["timestamp"] = timestamp_utc();
    manifest["config"] = resolved_config;
    manifest["outputs"] = outputs;
    std::ofstream out = open_for_write(dest);
    out << manifest.dump(2) << '\n';
    finish(out, dest);
}

} // namespace ntband
