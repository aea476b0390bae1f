#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "ntband/market.hpp"
#include "ntband/utility.hpp"

namespace ntband {

// ---------------------------------------------------------------------------
// Frictionless optimum and expected payoff
// ---------------------------------------------------------------------------

// p = Omega^{-1} mu_hat, so that A*(Pi) = Pi * p. Solved, never inverted.
std::vector<double> optimal_weights(const MarketParams& params);

// log Pi + (r + mu_hat . Omega^{-1} mu_hat / 2) (T - t)
double ltgm_value(double pi, double t, const MarketParams& params);

// Expected terminal log wealth for a constantly rebalanced weight vector p
// (not necessarily optimal):
//   log pi0 + (r q + mu . p - beta^2 / 2) T,  q = 1 - sum(p),  beta^2 = p' Omega p
double expected_log_payoff(const MarketParams& params, double pi0,
                           const std::vector<double>& weights);

// ---------------------------------------------------------------------------
// No-transaction band widths
// ---------------------------------------------------------------------------

// D_ij = 1/2 (dA*_i/dPi)(dA*_j/dPi) sum_hl Omega_hl A*_h A*_l
//      + 1/2 Omega_ij A*_i A*_j
//      - (dA*_i/dPi) sum_h Omega_ih A*_i A*_h
struct DMatrix {
    std::size_t n = 0;
    std::vector<double> d; // row-major

    double operator()(std::size_t i, std::size_t j) const { return d[i * n + j]; }
};

DMatrix d_matrix(const MarketParams& params, const UtilityModel& utility,
                 double pi, double t);

// Half-width for one asset from the general width expression, in holding
// units: | (3 D_ii / sigma_i^2) (dH0/dPi) / (d2H0/dPi2) |^{1/3} * k^{1/3}.
// The k^{1/3} factor undoes the A = A* + k^{1/3} alpha coordinate change.
double band_width_general(double d_ii, double sigma_i, double dh0_dpi,
                          double d2h0_dpi2, double k);

// LTGM closed form, one width per asset:
//   alpha_i = Pi * { (3k / sigma_i^2) |(mu_hat.p + sigma_i^2)/2 - mu_hat_i| p_i^2 }^{1/3}
// A negative bracket is folded into the absolute value; it also flags that
// the small-cost asymptotics may be outside their validity regime, which the
// caller can query via ltgm_band_brackets.
std::vector<double> band_width_ltgm(const MarketParams& params, double k, double pi);

// The per-asset bracket (mu_hat.p + sigma_i^2)/2 - mu_hat_i, times p_i^2.
std::vector<double> ltgm_band_brackets(const MarketParams& params);

// General route for any utility model: d_matrix composed with
// band_width_general at (pi, t).
std::vector<double> band_widths_from_utility(const MarketParams& params,
                                             const UtilityModel& utility,
                                             double k, double pi, double t);

// ---------------------------------------------------------------------------
// Trade rule
// ---------------------------------------------------------------------------

enum class RegionLabel { Sale, Purchase, NoTransaction };
enum class TradeSide { Buy, Sell };

struct TradeEvent {
    double t = 0.0;
    std::size_t asset = 0; // zero-based; reports print 1-based
    TradeSide side = TradeSide::Buy;
    double amount = 0.0;   // wealth moved, strictly positive
    double cost = 0.0;     // k * amount
};

// A trading band: the target curve A*(Pi, t), per-asset half-widths
// alpha_{i+}(Pi, t), and the cost rate the rebalance pays. The purchase
// boundary sits at A* - alpha and the sale boundary at A* + alpha.
struct BandPolicy {
    std::size_t n = 0;
    double k = 0.0;
    std::function<void(double pi, double t, std::span<double> out)> curve;
    std::function<void(double pi, double t, std::span<double> out)> widths;
};

// Policy factories. Weights/coefficients are captured by value.
BandPolicy frictionless_policy(std::vector<double> weights);
BandPolicy naive_rebalance_policy(std::vector<double> weights, double k);
BandPolicy ltgm_band_policy(const MarketParams& params);
// Custom width coefficients are alpha_i / (k^{1/3} Pi) around the optimal curve.
BandPolicy custom_band_policy(const MarketParams& params, std::vector<double> coeffs);
// General-utility bands via d_matrix + band_width_general, evaluated per tick.
BandPolicy utility_band_policy(const MarketParams& params, const UtilityModel& utility);

// A policy evaluated once at a fixed pre-trade (Pi, t).
struct BandEval {
    std::vector<double> curve;
    std::vector<double> widths;
};

BandEval evaluate_policy(const BandPolicy& policy, double pi, double t);

// Per-asset region at the pre-trade state. The band is closed: equality with
// either boundary is NoTransaction; trades fire only on strict exit.
std::vector<RegionLabel> classify(const PortfolioState& state, const BandEval& eval);
std::vector<RegionLabel> classify(const PortfolioState& state, const BandPolicy& policy,
                                  double t);

struct RebalanceResult {
    PortfolioState state;
    std::vector<TradeEvent> events;
};

// Moves every violating asset back to its nearest boundary, paying k per
// unit traded: a sale of h credits the bond (1-k) h, a purchase of h debits
// it (1+k) h. The curve and widths stay frozen at the pre-trade wealth for
// the whole rebalance. Throws NonPositiveWealth if the post-trade wealth
// is <= 0.
RebalanceResult rebalance(const PortfolioState& state, const BandEval& eval,
                          double k, double t);
RebalanceResult rebalance(const PortfolioState& state, const BandPolicy& policy,
                          double t);

// In-place core used by both rebalance() and the simulation loop. Appends
// events when a ledger is supplied; accumulates traded amount and cost.
void apply_band_trades(PortfolioState& state, std::span<const double> curve,
                       std::span<const double> widths, double k, double t,
                       std::vector<TradeEvent>* ledger, double& traded,
                       double& cost);

} // namespace ntband
