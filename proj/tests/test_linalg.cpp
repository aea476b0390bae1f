#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ntband/errors.hpp"
#include "ntband/linalg.hpp"
#include "ntband/rng.hpp"
#include "test_support.hpp"

using namespace ntband;
using ntband::testing::random_correlation;

TEST_CASE("build_covariance forms sigma_i sigma_j rho_ij") {
    const CovarianceMatrix omega =
        build_covariance({1.0, 1.0}, {{1.0, 0.5}, {0.5, 1.0}});
    CHECK(omega(0, 0) == 1.0);
    CHECK(omega(0, 1) == 0.5);
    CHECK(omega(1, 0) == 0.5);
    CHECK(omega(1, 1) == 1.0);

    const CovarianceMatrix diag = build_covariance({2.0, 3.0}, {{1.0, 0.0}, {0.0, 1.0}});
    CHECK(diag(0, 0) == 4.0);
    CHECK(diag(1, 1) == 9.0);
    CHECK(diag(0, 1) == 0.0);

    const CovarianceMatrix single = build_covariance({1.0}, {{1.0}});
    CHECK(single(0, 0) == 1.0);
}

TEST_CASE("build_covariance rejects bad input") {
    CHECK_THROWS_AS(build_covariance({1.0, 1.0}, {{1.0}}), DimensionMismatch);
    CHECK_THROWS_AS(build_covariance({1.0, 1.0}, {{1.0, 0.5}, {0.4, 1.0}}),
                    InvalidCorrelation);
    CHECK_THROWS_AS(build_covariance({1.0, 1.0}, {{1.0, 1.5}, {1.5, 1.0}}),
                    InvalidCorrelation);
    CHECK_THROWS_AS(build_covariance({1.0, 1.0}, {{0.9, 0.5}, {0.5, 1.0}}),
                    InvalidCorrelation);
    CHECK_THROWS_AS(build_covariance({1.0, -1.0}, {{1.0, 0.0}, {0.0, 1.0}}), DomainError);
}

TEST_CASE("cholesky factors the two-asset covariance") {
    const CovarianceMatrix omega =
        build_covariance({1.0, 1.0}, {{1.0, 0.5}, {0.5, 1.0}});
    const CholeskyFactor l = cholesky(omega);
    CHECK(l(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(l(1, 0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(l(1, 1) == doctest::Approx(0.8660254037844386).epsilon(1e-15));
    CHECK(l(0, 1) == 0.0);

    const CholeskyFactor d = cholesky(build_covariance({2.0, 3.0}, {{1.0, 0.0}, {0.0, 1.0}}));
    CHECK(d(0, 0) == 2.0);
    CHECK(d(1, 1) == 3.0);
}

TEST_CASE("cholesky rejects singular correlation") {
    CHECK_THROWS_AS(cholesky(CovarianceMatrix(2, {1.0, 1.0, 1.0, 1.0})),
                    NotPositiveDefinite);
}

TEST_CASE("reconstruction holds for random accepted matrices up to n = 8") {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> vol(0.5, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + rng() % 8;
        std::vector<double> sigma(n);
        for (double& s : sigma) {
            s = vol(rng);
        }
        const CovarianceMatrix omega = build_covariance(sigma, random_correlation(rng, n));
        const CholeskyFactor l = cholesky(omega);

        double max_entry = 0.0;
        double max_err = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(l(i, i) > 0.0);
            for (std::size_t j = 0; j < n; ++j) {
                double acc = 0.0;
                for (std::size_t m = 0; m < n; ++m) {
                    acc += l(i, m) * l(j, m);
                }
                max_err = std::max(max_err, std::abs(acc - omega(i, j)));
                max_entry = std::max(max_entry, std::abs(omega(i, j)));
            }
        }
        CHECK(max_err <= 1e-12 * max_entry);
    }
}

TEST_CASE("solve_spd matches the closed-form two-asset solution") {
    const CovarianceMatrix omega =
        build_covariance({1.0, 1.0}, {{1.0, 0.5}, {0.5, 1.0}});
    const std::vector<double> x = solve_spd(omega, {0.3, 0.5});
    CHECK(x[0] == doctest::Approx(1.0 / 15.0).epsilon(1e-14));
    CHECK(x[1] == doctest::Approx(7.0 / 15.0).epsilon(1e-14));

    const CovarianceMatrix eye = build_covariance({1.0, 1.0}, {{1.0, 0.0}, {0.0, 1.0}});
    const std::vector<double> same = solve_spd(eye, {0.7, -0.2});
    CHECK(same[0] == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(same[1] == doctest::Approx(-0.2).epsilon(1e-15));

    const CovarianceMatrix diag = build_covariance({2.0, 3.0}, {{1.0, 0.0}, {0.0, 1.0}});
    const std::vector<double> unit = solve_spd(diag, {4.0, 9.0});
    CHECK(unit[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(unit[1] == doctest::Approx(1.0).epsilon(1e-15));

    CHECK_THROWS_AS(solve_spd(omega, {1.0}), DimensionMismatch);
}

TEST_CASE("solve residual stays below 1e-12 for random systems") {
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> vol(0.5, 2.0);
    std::uniform_real_distribution<double> entry(-1.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + rng() % 8;
        std::vector<double> sigma(n);
        for (double& s : sigma) {
            s = vol(rng);
        }
        const CovarianceMatrix omega = build_covariance(sigma, random_correlation(rng, n));
        std::vector<double> b(n);
        for (double& v : b) {
            v = entry(rng);
        }
        const std::vector<double> x = solve_spd(omega, b);

        double b_norm = 0.0;
        double res = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                acc += omega(i, j) * x[j];
            }
            res = std::max(res, std::abs(acc - b[i]));
            b_norm = std::max(b_norm, std::abs(b[i]));
        }
        CHECK(res <= 1e-12 * b_norm);
    }
}

TEST_CASE("correlated_normals applies the factor") {
    const CholeskyFactor eye(2, {1.0, 0.0, 0.0, 1.0});
    const std::vector<double> same = correlated_normals(eye, {0.3, -1.2});
    CHECK(same[0] == 0.3);
    CHECK(same[1] == -1.2);

    const CholeskyFactor l(2, {1.0, 0.0, 0.5, 0.8660254037844386});
    const std::vector<double> z = correlated_normals(l, {1.0, 0.0});
    CHECK(z[0] == 1.0);
    CHECK(z[1] == 0.5);

    CHECK_THROWS_AS(correlated_normals(l, {1.0}), DimensionMismatch);
}

TEST_CASE("sample correlation of 1e6 draws matches rho_12 = 0.5 within 0.005") {
    const CovarianceMatrix rho = build_covariance({1.0, 1.0}, {{1.0, 0.5}, {0.5, 1.0}});
    const CholeskyFactor l = cholesky(rho);
    NormalRng rng(424242);

    const std::size_t draws = 1'000'000;
    double s1 = 0.0, s2 = 0.0, s11 = 0.0, s22 = 0.0, s12 = 0.0;
    std::vector<double> z(2);
    for (std::size_t i = 0; i < draws; ++i) {
        rng.fill(z);
        l.apply(z, z);
        s1 += z[0];
        s2 += z[1];
        s11 += z[0] * z[0];
        s22 += z[1] * z[1];
        s12 += z[0] * z[1];
    }
    const double inv = 1.0 / static_cast<double>(draws);
    const double m1 = s1 * inv;
    const double m2 = s2 * inv;
    const double v1 = s11 * inv - m1 * m1;
    const double v2 = s22 * inv - m2 * m2;
    const double cov = s12 * inv - m1 * m2;
    const double corr = cov / std::sqrt(v1 * v2);
    CHECK(std::abs(corr - 0.5) <= 0.005);
    CHECK(std::abs(v1 - 1.0) <= 0.01);
    CHECK(std::abs(v2 - 1.0) <= 0.01);
}

TEST_CASE("sample correlations match a random 3x3 rho within 0.02") {
    std::mt19937_64 seed_rng(99);
    const auto rho = random_correlation(seed_rng, 3);
    const CholeskyFactor l = cholesky(build_covariance({1.0, 1.0, 1.0}, rho));
    NormalRng rng(31337);

    const std::size_t draws = 200'000;
    std::vector<double> z(3);
    std::vector<double> sum(3, 0.0);
    std::vector<double> sq(3, 0.0);
    double cross01 = 0.0, cross02 = 0.0, cross12 = 0.0;
    for (std::size_t i = 0; i < draws; ++i) {
        rng.fill(z);
        l.apply(z, z);
        for (int a = 0; a < 3; ++a) {
            sum[a] += z[a];
            sq[a] += z[a] * z[a];
        }
        cross01 += z[0] * z[1];
        cross02 += z[0] * z[2];
        cross12 += z[1] * z[2];
    }
    const double inv = 1.0 / static_cast<double>(draws);
    auto corr = [&](double cross, int a, int b) {
        const double ma = sum[a] * inv;
        const double mb = sum[b] * inv;
        const double va = sq[a] * inv - ma * ma;
        const double vb = sq[b] * inv - mb * mb;
        return (cross * inv - ma * mb) / std::sqrt(va * vb);
    };
    CHECK(std::abs(corr(cross01, 0, 1) - rho[0][1]) <= 0.02);
    CHECK(std::abs(corr(cross02, 0, 2) - rho[0][2]) <= 0.02);
    CHECK(std::abs(corr(cross12, 1, 2) - rho[1][2]) <= 0.02);
}
