#include "ntband/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "ntband/errors.hpp"

namespace ntband {

CovarianceMatrix::CovarianceMatrix(std::size_t n, std::vector<double> data)
    : n_(n), data_(std::move(data)) {
    if (n_ == 0 || data_.size() != n_ * n_) {
        throw DimensionMismatch("covariance matrix storage does not match dimension");
    }
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = i + 1; j < n_; ++j) {
            if (data_[i * n_ + j] != data_[j * n_ + i]) {
                throw DomainError("covariance matrix must be exactly symmetric");
            }
        }
    }
}

CholeskyFactor::CholeskyFactor(std::size_t n, std::vector<double> lower)
    : n_(n), lower_(std::move(lower)) {
    if (n_ == 0 || lower_.size() != n_ * n_) {
        throw DimensionMismatch("cholesky factor storage does not match dimension");
    }
}

void CholeskyFactor::apply(std::span<const double> z, std::span<double> out) const {
    if (z.size() != n_ || out.size() != n_) {
        throw DimensionMismatch("normal draw length does not match factor dimension");
    }
    // Row-wise from the bottom so in-place application is safe.
    for (std::size_t i = n_; i-- > 0;) {
        double acc = 0.0;
        for (std::size_t j = 0; j <= i; ++j) {
            acc += lower_[i * n_ + j] * z[j];
        }
        out[i] = acc;
    }
}

void validate_correlation(const std::vector<std::vector<double>>& rho) {
    const std::size_t n = rho.size();
    if (n == 0) {
        throw InvalidCorrelation("correlation matrix is empty");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (rho[i].size() != n) {
            throw InvalidCorrelation("correlation matrix is not square");
        }
        if (rho[i][i] != 1.0) {
            throw InvalidCorrelation("correlation matrix diagonal must be 1");
        }
        for (std::size_t j = 0; j < n; ++j) {
            const double v = rho[i][j];
            if (!(v >= -1.0 && v <= 1.0)) {
                throw InvalidCorrelation("correlation entries must lie in [-1, 1]");
            }
            if (rho[i][j] != rho[j][i]) {
                throw InvalidCorrelation("correlation matrix must be symmetric");
            }
        }
    }
}

CovarianceMatrix build_covariance(const std::vector<double>& sigma,
                                  const std::vector<std::vector<double>>& rho) {
    const std::size_t n = sigma.size();
    if (n == 0 || rho.size() != n) {
        throw DimensionMismatch("sigma and rho dimensions disagree");
    }
    validate_correlation(rho);
    for (double s : sigma) {
        if (!(s > 0.0)) {
            throw DomainError("volatilities must be positive");
        }
    }
    std::vector<double> omega(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            omega[i * n + j] = sigma[i] * sigma[j] * rho[i][j];
        }
    }
    return CovarianceMatrix(n, std::move(omega));
}

CholeskyFactor cholesky(const CovarianceMatrix& omega) {
    const std::size_t n = omega.size();
    double max_diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        max_diag = std::max(max_diag, std::abs(omega(i, i)));
    }
    const double pivot_tol = 1e-14 * max_diag;

    std::vector<double> l(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double acc = omega(i, j);
            for (std::size_t m = 0; m < j; ++m) {
                acc -= l[i * n + m] * l[j * n + m];
            }
            if (i == j) {
                if (!(acc > pivot_tol)) {
                    throw NotPositiveDefinite("covariance matrix is not positive definite");
                }
                l[i * n + i] = std::sqrt(acc);
            } else {
                l[i * n + j] = acc / l[j * n + j];
            }
        }
    }
    return CholeskyFactor(n, std::move(l));
}

namespace {

std::vector<double> solve_with_factor(const CholeskyFactor& l, const std::vector<double>& b) {
    const std::size_t n = l.size();
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) { // L y = b
        double acc = b[i];
        for (std::size_t j = 0; j < i; ++j) {
            acc -= l(i, j) * y[j];
        }
        y[i] = acc / l(i, i);
    }
    for (std::size_t i = n; i-- > 0;) { // L^T x = y
        double acc = y[i];
        for (std::size_t j = i + 1; j < n; ++j) {
            acc -= l(j, i) * y[j];
        }
        y[i] = acc / l(i, i);
    }
    return y;
}

} // namespace

std::vector<double> solve_spd(const CovarianceMatrix& omega, const std::vector<double>& b) {
    if (b.size() != omega.size()) {
        throw DimensionMismatch("right-hand side length does not match matrix dimension");
    }
    return solve_with_factor(cholesky(omega), b);
}

std::vector<double> correlated_normals(const CholeskyFactor& l, const std::vector<double>& z_iid) {
    std::vector<double> out(l.size());
    l.apply(z_iid, out);
    return out;
}

} // namespace ntband
