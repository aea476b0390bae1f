#include "ntband/strategy.hpp"

#include <cmath>

#include "ntband/errors.hpp"

namespace ntband {

std::vector<double> optimal_weights(const MarketParams& params) {
    return solve_spd(params.covariance(), params.mu_hat());
}

double ltgm_value(double pi, double t, const MarketParams& params) {
    return LtgmModel(params).value(pi, t);
}

double expected_log_payoff(const MarketParams& params, double pi0,
                           const std::vector<double>& weights) {
    if (!(pi0 > 0.0)) {
        throw DomainError("initial wealth must be positive");
    }
    const std::size_t n = params.n_assets();
    if (weights.size() != n) {
        throw DimensionMismatch("weight vector length does not match the market");
    }
    double q = 1.0;
    double drift = 0.0;
    double beta2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        q -= weights[i];
        drift += params.mu()[i] * weights[i];
        for (std::size_t j = 0; j < n; ++j) {
            beta2 += weights[i] * weights[j] * params.sigma()[i] * params.sigma()[j] *
                     params.rho()[i][j];
        }
    }
    const double growth = params.r() * q + drift - 0.5 * beta2;
    return std::log(pi0) + growth * params.horizon();
}

DMatrix d_matrix(const MarketParams& params, const UtilityModel& utility,
                 double pi, double t) {
    const std::size_t n = params.n_assets();
    const CovarianceMatrix& omega = params.covariance();
    const std::vector<double> a = utility.optimal_curve(pi, t);
    const std::vector<double> s = utility.curve_slope(pi, t);
    if (a.size() != n || s.size() != n) {
        throw DimensionMismatch("utility curve dimension does not match the market");
    }

    double quad = 0.0; // sum_hl Omega_hl A*_h A*_l
    std::vector<double> omega_a(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            omega_a[i] += omega(i, j) * a[j];
        }
        quad += a[i] * omega_a[i];
    }

    DMatrix d;
    d.n = n;
    d.d.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            d.d[i * n + j] = 0.5 * s[i] * s[j] * quad + 0.5 * omega(i, j) * a[i] * a[j] -
                             s[i] * a[i] * omega_a[i];
        }
    }
    return d;
}

double band_width_general(double d_ii, double sigma_i, double dh0_dpi,
                          double d2h0_dpi2, double k) {
    if (!(sigma_i > 0.0)) {
        throw DomainError("band width requires a positive volatility");
    }
    if (!(k >= 0.0)) {
        throw DomainError("cost rate must be nonnegative");
    }
    if (d2h0_dpi2 == 0.0) {
        throw SingularCurvature("value function has no curvature at this wealth");
    }
    const double core = 3.0 * d_ii / (sigma_i * sigma_i) * dh0_dpi / d2h0_dpi2;
    return std::cbrt(std::abs(core)) * std::cbrt(k);
}

std::vector<double> ltgm_band_brackets(const MarketParams& params) {
    const std::vector<double> p = optimal_weights(params);
    const std::size_t n = params.n_assets();
    double c = 0.0; // mu_hat . Omega^{-1} mu_hat
    for (std::size_t i = 0; i < n; ++i) {
        c += params.mu_hat()[i] * p[i];
    }
    std::vector<double> brackets(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double s2 = params.sigma()[i] * params.sigma()[i];
        brackets[i] = (0.5 * (c + s2) - params.mu_hat()[i]) * p[i] * p[i];
    }
    return brackets;
}

std::vector<double> band_width_ltgm(const MarketParams& params, double k, double pi) {
    if (!(pi > 0.0)) {
        throw DomainError("wealth must be positive");
    }
    const std::vector<double> brackets = ltgm_band_brackets(params);
    std::vector<double> widths(brackets.size());
    for (std::size_t i = 0; i < brackets.size(); ++i) {
        const double s2 = params.sigma()[i] * params.sigma()[i];
        widths[i] = pi * std::cbrt(3.0 * k / s2 * std::abs(brackets[i]));
    }
    return widths;
}

std::vector<double> band_widths_from_utility(const MarketParams& params,
                                             const UtilityModel& utility,
                                             double k, double pi, double t) {
    const DMatrix d = d_matrix(params, utility, pi, t);
    const double dh0 = utility.value_dpi(pi, t);
    const double d2h0 = utility.value_d2pi(pi, t);
    std::vector<double> widths(d.n);
    for (std::size_t i = 0; i < d.n; ++i) {
        widths[i] = band_width_general(d(i, i), params.sigma()[i], dh0, d2h0, k);
    }
    return widths;
}

// ---------------------------------------------------------------------------
// Policies
// ---------------------------------------------------------------------------

namespace {

void fill_scaled(std::span<const double> coeffs, double factor, std::span<double> out) {
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        out[i] = factor * coeffs[i];
    }
}

} // namespace

BandPolicy frictionless_policy(std::vector<double> weights) {
    BandPolicy policy;
    policy.n = weights.size();
    policy.k = 0.0;
    policy.curve = [w = std::move(weights)](double pi, double, std::span<double> out) {
        fill_scaled(w, pi, out);
    };
    policy.widths = [](double, double, std::span<double> out) {
        std::fill(out.begin(), out.end(), 0.0);
    };
    return policy;
}

BandPolicy naive_rebalance_policy(std::vector<double> weights, double k) {
    BandPolicy policy = frictionless_policy(std::move(weights));
    policy.k = k;
    return policy;
}

BandPolicy ltgm_band_policy(const MarketParams& params) {
    BandPolicy policy;
    policy.n = params.n_assets();
    policy.k = params.k();
    policy.curve = [w = optimal_weights(params)](double pi, double, std::span<double> out) {
        fill_scaled(w, pi, out);
    };
    // Eq-exact per-wealth widths: alpha_i(Pi) = Pi * band_width_ltgm(..., 1).
    policy.widths = [c = band_width_ltgm(params, params.k(), 1.0)](
                        double pi, double, std::span<double> out) {
        fill_scaled(c, pi, out);
    };
    return policy;
}

BandPolicy custom_band_policy(const MarketParams& params, std::vector<double> coeffs) {
    if (coeffs.size() != params.n_assets()) {
        throw DimensionMismatch("width coefficient count does not match the market");
    }
    for (double c : coeffs) {
        if (!(c >= 0.0)) {
            throw DomainError("width coefficients must be nonnegative");
        }
    }
    BandPolicy policy;
    policy.n = params.n_assets();
    policy.k = params.k();
    policy.curve = [w = optimal_weights(params)](double pi, double, std::span<double> out) {
        fill_scaled(w, pi, out);
    };
    const double k13 = std::cbrt(params.k());
    std::vector<double> per_wealth(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        per_wealth[i] = coeffs[i] * k13;
    }
    policy.widths = [c = std::move(per_wealth)](double pi, double, std::span<double> out) {
        fill_scaled(c, pi, out);
    };
    return policy;
}

BandPolicy utility_band_policy(const MarketParams& params, const UtilityModel& utility) {
    BandPolicy policy;
    policy.n = params.n_assets();
    policy.k = params.k();
    policy.curve = [&utility](double pi, double t, std::span<double> out) {
        const std::vector<double> a = utility.optimal_curve(pi, t);
        std::copy(a.begin(), a.end(), out.begin());
    };
    policy.widths = [&params, &utility, k = params.k()](double pi, double t,
                                                        std::span<double> out) {
        const std::vector<double> w = band_widths_from_utility(params, utility, k, pi, t);
        std::copy(w.begin(), w.end(), out.begin());
    };
    return policy;
}

// ---------------------------------------------------------------------------
// Classification and rebalancing
// ---------------------------------------------------------------------------

BandEval evaluate_policy(const BandPolicy& policy, double pi, double t) {
    BandEval eval;
    eval.curve.resize(policy.n);
    eval.widths.resize(policy.n);
    policy.curve(pi, t, eval.curve);
    policy.widths(pi, t, eval.widths);
    return eval;
}

std::vector<RegionLabel> classify(const PortfolioState& state, const BandEval& eval) {
    const std::size_t n = eval.curve.size();
    if (state.holdings.size() != n) {
        throw DimensionMismatch("state dimension does not match the policy");
    }
    std::vector<RegionLabel> labels(n, RegionLabel::NoTransaction);
    for (std::size_t i = 0; i < n; ++i) {
        const double hi = eval.curve[i] + eval.widths[i];
        const double lo = eval.curve[i] - eval.widths[i];
        if (state.holdings[i] > hi) {
            labels[i] = RegionLabel::Sale;
        } else if (state.holdings[i] < lo) {
            labels[i] = RegionLabel::Purchase;
        }
    }
    return labels;
}

std::vector<RegionLabel> classify(const PortfolioState& state, const BandPolicy& policy,
                                  double t) {
    return classify(state, evaluate_policy(policy, state.wealth(), t));
}

void apply_band_trades(PortfolioState& state, std::span<const double> curve,
                       std::span<const double> widths, double k, double t,
                       std::vector<TradeEvent>* ledger, double& traded,
                       double& cost) {
    const std::size_t n = state.holdings.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double hi = curve[i] + widths[i];
        const double lo = curve[i] - widths[i];
        const double a = state.holdings[i];
        if (a > hi) {
            const double amount = a - hi;
            state.holdings[i] = hi;
            state.bond += (1.0 - k) * amount;
            traded += amount;
            cost += k * amount;
            if (ledger) {
                ledger->push_back({t, i, TradeSide::Sell, amount, k * amount});
            }
        } else if (a < lo) {
            const double amount = lo - a;
            state.holdings[i] = lo;
            state.bond -= (1.0 + k) * amount;
            traded += amount;
            cost += k * amount;
            if (ledger) {
                ledger->push_back({t, i, TradeSide::Buy, amount, k * amount});
            }
        }
    }
    if (!(state.wealth() > 0.0)) {
        throw NonPositiveWealth("wealth became nonpositive during a rebalance");
    }
}

RebalanceResult rebalance(const PortfolioState& state, const BandEval& eval,
                          double k, double t) {
    RebalanceResult result;
    result.state = state;
    double traded = 0.0;
    double cost = 0.0;
    apply_band_trades(result.state, eval.curve, eval.widths, k, t, &result.events,
                      traded, cost);
    return result;
}

RebalanceResult rebalance(const PortfolioState& state, const BandPolicy& policy,
                          double t) {
    return rebalance(state, evaluate_policy(policy, state.wealth(), t), policy.k, t);
}

} // namespace ntband
