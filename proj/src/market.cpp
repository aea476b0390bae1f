#include "ntband/market.hpp"

#include <cmath>

#include "ntband/errors.hpp"

namespace ntband {

MarketParams::MarketParams(double r,
                           std::vector<double> mu,
                           std::vector<double> sigma,
                           std::vector<std::vector<double>> rho,
                           double k,
                           double horizon,
                           double dt)
    : r_(r),
      mu_(std::move(mu)),
      sigma_(std::move(sigma)),
      rho_(std::move(rho)),
      k_(k),
      horizon_(horizon),
      dt_(dt) {
    const std::size_t n = mu_.size();
    if (n == 0) {
        throw DimensionMismatch("at least one asset is required");
    }
    if (sigma_.size() != n || rho_.size() != n) {
        throw DimensionMismatch("mu, sigma and rho dimensions disagree");
    }
    validate_correlation(rho_);
    for (double s : sigma_) {
        if (!(s >= 0.0)) {
            throw DomainError("volatilities must be nonnegative");
        }
    }
    if (!(k_ >= 0.0 && k_ < 1.0)) {
        throw DomainError("transaction cost rate must satisfy 0 <= k < 1");
    }
    if (!(dt_ > 0.0) || !(horizon_ > 0.0) || horizon_ / dt_ < 1.0) {
        throw DomainError("require dt > 0, T > 0 and T/dt >= 1");
    }
    n_steps_ = std::llround(horizon_ / dt_);
    if (std::abs(static_cast<double>(n_steps_) * dt_ - horizon_) > 1e-9 * horizon_) {
        throw DomainError("horizon T must be an integer multiple of dt");
    }
    sqrt_dt_ = std::sqrt(dt_);

    mu_hat_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        mu_hat_[i] = mu_[i] - r_;
    }

    // Unit-sigma covariance = rho; its factor correlates the normal draws.
    std::vector<double> ones(n, 1.0);
    corr_factor_ = cholesky(build_covariance(ones, rho_));

    bool all_positive = true;
    for (double s : sigma_) {
        if (s == 0.0) all_positive = false;
    }
    if (all_positive) {
        covariance_ = build_covariance(sigma_, rho_);
    }
}

const CovarianceMatrix& MarketParams::covariance() const {
    if (!covariance_) {
        throw DomainError("covariance requires strictly positive volatilities");
    }
    return *covariance_;
}

void euler_step_inplace(PortfolioState& state,
                        const MarketParams& params,
                        std::span<const double> z) {
    const std::size_t n = params.n_assets();
    if (z.size() != n || state.holdings.size() != n) {
        throw DimensionMismatch("state/draw dimensions do not match the market");
    }
    if (state.step >= params.n_steps()) {
        throw DomainError("euler_step would advance past the horizon");
    }
    const double dt = params.dt();
    const double sdt = params.sqrt_dt();

    state.bond = state.bond + params.r() * state.bond * dt;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = state.holdings[i];
        state.holdings[i] = a + params.mu()[i] * a * dt + params.sigma()[i] * a * sdt * z[i];
    }
    state.step += 1;
    if (!(state.wealth() > 0.0)) {
        throw NonPositiveWealth("wealth became nonpositive during an euler step");
    }
}

PortfolioState euler_step(const PortfolioState& state,
                          const MarketParams& params,
                          std::span<const double> z) {
    PortfolioState next = state;
    euler_step_inplace(next, params, z);
    return next;
}

double pure_bond_growth(double pi0, const MarketParams& params, double t) {
    if (t < 0.0) {
        throw DomainError("time must be nonnegative");
    }
    return pi0 * std::exp(params.r() * t);
}

} // namespace ntband
