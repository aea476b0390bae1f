#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ntband {

// Dense symmetric matrices for the asset covariance Omega_ij = sigma_i
// sigma_j rho_ij. Asset counts are small (a handful, not hundreds), so
// everything here is the plain O(n^3) algorithm on row-major storage.

class CovarianceMatrix {
public:
    CovarianceMatrix(std::size_t n, std::vector<double> data);

    std::size_t size() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
    const std::vector<double>& data() const { return data_; }

private:
    std::size_t n_ = 0;
    std::vector<double> data_; // row-major, exactly symmetric
};

class CholeskyFactor {
public:
    CholeskyFactor() = default;
    CholeskyFactor(std::size_t n, std::vector<double> lower);

    std::size_t size() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return lower_[i * n_ + j]; }
    const std::vector<double>& data() const { return lower_; }

    // y = L z, written into out. out may alias z only if out.data() == z.data().
    void apply(std::span<const double> z, std::span<double> out) const;

private:
    std::size_t n_ = 0;
    std::vector<double> lower_; // row-major lower triangle, zeros above
};

// Omega_ij = sigma_i sigma_j rho_ij. Throws DimensionMismatch if lengths
// disagree, InvalidCorrelation if rho is not symmetric with unit diagonal
// and entries in [-1, 1], DomainError if any sigma_i <= 0.
CovarianceMatrix build_covariance(const std::vector<double>& sigma,
                                  const std::vector<std::vector<double>>& rho);

// Lower-triangular L with L L^T = omega. Pivots are required to exceed
// 1e-14 * max(diag); semidefinite input is rejected, not regularized.
CholeskyFactor cholesky(const CovarianceMatrix& omega);

// Solves omega x = b by factorize-and-substitute; no inverse is ever formed.
std::vector<double> solve_spd(const CovarianceMatrix& omega, const std::vector<double>& b);

// Returns L z for iid standard normal z: componentwise standard normal with
// the correlation structure L L^T encodes.
std::vector<double> correlated_normals(const CholeskyFactor& l, const std::vector<double>& z_iid);

// Validates a correlation matrix: square, symmetric, unit diagonal,
// entries in [-1, 1]. Throws InvalidCorrelation otherwise.
void validate_correlation(const std::vector<std::vector<double>>& rho);

} // namespace ntband
