#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "ntband/market.hpp"

namespace ntband::testing {

// The canonical two-asset market: r = 1, mu = (1.3, 1.5), sigma = (1, 1),
// rho_12 = 0.5, k = 0.005. Desk-scale horizon/step unless overridden.
inline MarketParams reference_market(double T = 1.0, double dt = 1e-3, double k = 0.005) {
    return MarketParams(1.0, {1.3, 1.5}, {1.0, 1.0}, {{1.0, 0.5}, {0.5, 1.0}}, k, T, dt);
}

inline MarketParams uncorrelated_market(double T = 1.0, double dt = 1e-3, double k = 0.005) {
    return MarketParams(1.0, {1.3, 1.5}, {1.0, 1.0}, {{1.0, 0.0}, {0.0, 1.0}}, k, T, dt);
}

// Random valid correlation matrix: Gram matrix of random rows plus a ridge,
// normalized to unit diagonal. Positive definite by construction.
inline std::vector<std::vector<double>> random_correlation(std::mt19937_64& rng,
                                                           std::size_t n) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<std::vector<double>> g(n, std::vector<double>(n));
    for (auto& row : g) {
        for (double& v : row) {
            v = normal(rng);
        }
    }
    std::vector<std::vector<double>> c(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t m = 0; m < n; ++m) {
                c[i][j] += g[i][m] * g[j][m];
            }
            if (i == j) {
                c[i][j] += 0.5 * static_cast<double>(n);
            }
        }
    }
    std::vector<std::vector<double>> rho(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            rho[i][j] = c[i][j] / std::sqrt(c[i][i] * c[j][j]);
        }
        rho[i][i] = 1.0;
    }
    // Symmetrize exactly against rounding in the normalization.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            rho[j][i] = rho[i][j];
        }
    }
    return rho;
}

inline double rel_err(double got, double want) {
    const double scale = std::max(std::abs(want), 1e-300);
    return std::abs(got - want) / scale;
}

} // namespace ntband::testing
