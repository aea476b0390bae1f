#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "ntband/linalg.hpp"

namespace ntband {

// Market constants plus the quantities derived from them once at
// construction. Immutable afterwards and safe to share across workers.
class MarketParams {
public:
    MarketParams(double r,
                 std::vector<double> mu,
                 std::vector<double> sigma,
                 std::vector<std::vector<double>> rho,
                 double k,
                 double horizon,
                 double dt);

    std::size_t n_assets() const { return mu_.size(); }
    double r() const { return r_; }
    const std::vector<double>& mu() const { return mu_; }
    const std::vector<double>& sigma() const { return sigma_; }
    const std::vector<std::vector<double>>& rho() const { return rho_; }
    double k() const { return k_; }
    double horizon() const { return horizon_; }
    double dt() const { return dt_; }
    double sqrt_dt() const { return sqrt_dt_; }
    std::int64_t n_steps() const { return n_steps_; }

    const std::vector<double>& mu_hat() const { return mu_hat_; }

    // Covariance Omega_ij = sigma_i sigma_j rho_ij. Requires all sigma_i > 0
    // (zero-volatility parameter sets may simulate but have no covariance).
    const CovarianceMatrix& covariance() const;

    // Cholesky factor of rho itself, used to correlate unit-normal draws.
    const CholeskyFactor& correlation_factor() const { return corr_factor_; }

private:
    double r_;
    std::vector<double> mu_;
    std::vector<double> sigma_;
    std::vector<std::vector<double>> rho_;
    double k_;
    double horizon_;
    double dt_;
    double sqrt_dt_;
    std::int64_t n_steps_;
    std::vector<double> mu_hat_;
    CholeskyFactor corr_factor_;
    std::optional<CovarianceMatrix> covariance_; // absent when some sigma == 0
};

// Bond value, per-asset risky values, and an integer step clock. Wealth is
// always recomputed, never stored.
struct PortfolioState {
    std::int64_t step = 0;
    double bond = 0.0;
    std::vector<double> holdings;

    double wealth() const {
        return std::accumulate(holdings.begin(), holdings.end(), bond);
    }
    double time(double dt) const { return static_cast<double>(step) * dt; }
};

// One explicit Euler update:
//   B   <- B + r B dt
//   A_i <- A_i + mu_i A_i dt + sigma_i A_i sqrt(dt) z_i
// z must hold correlated standard normals. Throws NonPositiveWealth if the
// updated wealth is <= 0 and DomainError past the horizon.
PortfolioState euler_step(const PortfolioState& state,
                          const MarketParams& params,
                          std::span<const double> z);

// Same map, applied in place (the simulation hot path).
void euler_step_inplace(PortfolioState& state,
                        const MarketParams& params,
                        std::span<const double> z);

// pi0 * exp(r t): the exact all-bond growth, used as a test oracle.
double pure_bond_growth(double pi0, const MarketParams& params, double t);

} // namespace ntband
