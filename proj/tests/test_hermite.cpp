#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "longmem/hermite.hpp"
#include "longmem/rng.hpp"

using namespace longmem;

TEST_CASE("expansion coefficients match hand-computed Gaussian moments") {
    SECTION("square: x^2 = H_2 + 1") {
        const auto e = hermite_expand(TransformSpec::square(), 6);
        REQUIRE(e.coefficients[0] == Catch::Approx(1.0).margin(1e-12));
        REQUIRE(e.coefficients[1] == Catch::Approx(0.0).margin(1e-12));
        REQUIRE(e.coefficients[2] == Catch::Approx(1.0).margin(1e-12));
        REQUIRE(e.coefficients[3] == Catch::Approx(0.0).margin(1e-12));
    }
    SECTION("cube: x^3 = H_3 + 3 H_1") {
        const auto e = hermite_expand(TransformSpec::cube(), 6);
        REQUIRE(e.coefficients[1] == Catch::Approx(3.0).margin(1e-12));
        REQUIRE(e.coefficients[3] == Catch::Approx(1.0).margin(1e-12));
    }
    SECTION("absolute value: c_2 = sqrt(2/pi)/2") {
        const auto e = hermite_expand(TransformSpec::absolute(), 6);
        const double c0 = std::sqrt(2.0 / std::numbers::pi);
        REQUIRE(e.coefficients[0] == Catch::Approx(c0).margin(1e-9));
        REQUIRE(e.coefficients[1] == Catch::Approx(0.0).margin(1e-9));
        REQUIRE(e.coefficients[2] == Catch::Approx(c0 / 2.0).margin(1e-9));
    }
    SECTION("indicator 1{Z <= t}: c_1 = -pdf(t)") {
        for (double t : {0.0, 0.7, -1.2}) {
            const auto e = hermite_expand(TransformSpec::indicator_below(t), 6);
            REQUIRE(e.coefficients[0] == Catch::Approx(quad::normal_cdf(t)).margin(1e-9));
            REQUIRE(e.coefficients[1] == Catch::Approx(-quad::normal_pdf(t)).margin(1e-9));
        }
    }
}

TEST_CASE("orthogonality of the hermite basis under expansion") {
    // expanding H_p recovers delta coefficients, p <= 8, quadrature order 64
    // (p = 0 is the constant transform, rejected as degenerate elsewhere)
    for (int p = 1; p <= 8; ++p) {
        const auto e = hermite_expand(TransformSpec::hermite_basis(p), 8, 64);
        for (int q = 0; q <= 8; ++q) {
            const double want = p == q ? 1.0 : 0.0;
            REQUIRE(e.coefficients[q] == Catch::Approx(want).margin(1e-8));
        }
    }
}

TEST_CASE("parseval identity holds for polynomial transforms") {
    const auto g = TransformSpec::polynomial({0.5, -1.0, 2.0, 0.25});
    const auto e = hermite_expand(g, 8, 64);
    double sum = 0.0;
    for (int m = 0; m <= e.truncation_order; ++m)
        sum += factorial(m) * e.coefficients[m] * e.coefficients[m];
    const double e_g2 = e.l2_norm_sq + e.coefficients[0] * e.coefficients[0];
    REQUIRE(sum == Catch::Approx(e_g2).margin(1e-8 * std::max(1.0, e_g2)));
    REQUIRE(e.residual_fraction == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("rank table") {
    REQUIRE(hermite_rank(TransformSpec::identity()).rank == 1);
    REQUIRE(hermite_rank(TransformSpec::cube()).rank == 1);
    REQUIRE(hermite_rank(TransformSpec::square()).rank == 2);
    REQUIRE(hermite_rank(TransformSpec::absolute()).rank == 2);
    REQUIRE(hermite_rank(TransformSpec::indicator_below(0.0)).rank == 1);
    for (int m = 1; m <= 6; ++m)
        REQUIRE(hermite_rank(TransformSpec::hermite_basis(m)).rank == m);
    // centered square via polynomial: x^2 - 1
    REQUIRE(hermite_rank(TransformSpec::polynomial({-1.0, 0.0, 1.0})).rank == 2);
}

TEST_CASE("any shift of a nonconstant even transform collapses the rank to 1") {
    for (double z : {0.05, 0.1, -0.2, 0.5}) {
        REQUIRE(shifted_rank(TransformSpec::square(), z).rank == 1);
        REQUIRE(shifted_rank(TransformSpec::absolute(), z).rank == 1);
        REQUIRE(shifted_rank(TransformSpec::hermite_basis(2), z).rank == 1);
        REQUIRE(shifted_rank(TransformSpec::hermite_basis(4), z).rank == 1);
    }
    // analytic check: E[H_2(Z + z) Z] = 2z, so c_1 = 2z
    const auto e = hermite_expand(TransformSpec::shifted(TransformSpec::hermite_basis(2), 0.1), 6);
    REQUIRE(e.coefficients[1] == Catch::Approx(0.2).margin(1e-10));
}

TEST_CASE("degenerate transform is rejected") {
    REQUIRE_THROWS_AS(hermite_expand(TransformSpec::polynomial({5.0}), 6),
                      degenerate_transform_error);
    REQUIRE_THROWS_AS(hermite_expand(TransformSpec::hermite_basis(0), 6),
                      degenerate_transform_error);
}

TEST_CASE("power rank agrees with the hermite rank on a Gaussian sample") {
    Rng rng(5);
    std::vector<double> sample(20000);
    for (auto& v : sample) v = rng.gaussian();
    REQUIRE(power_rank(TransformSpec::identity(), sample).rank == 1);
    REQUIRE(power_rank(TransformSpec::square(), sample).rank == 2);
    REQUIRE(power_rank(TransformSpec::cube(), sample).rank == 1);
    REQUIRE(power_rank(TransformSpec::hermite_basis(3), sample).rank == 3);
    const auto rep = power_rank(TransformSpec::square(), sample);
    REQUIRE(rep.method == RankReport::Method::monte_carlo_power);
    REQUIRE(rep.found);
}

TEST_CASE("generalized rank detects lagged and instantaneous dependence") {
    Rng rng(9);
    const std::size_t T = 60000;
    std::vector<double> y(T + 2);
    for (auto& v : y) v = rng.gaussian();
    SECTION("instantaneous square has rank 2") {
        std::vector<double> x(T);
        for (std::size_t n = 0; n < T; ++n) x[n] = y[n] * y[n];
        REQUIRE(generalized_rank(x, std::vector<double>(y.begin(), y.begin() + T)).rank == 2);
    }
    SECTION("pure time shift has rank 1 at a nonzero lag") {
        std::vector<double> x(T);
        for (std::size_t n = 0; n < T; ++n) x[n] = y[n + 2];
        const auto rep = generalized_rank(x, std::vector<double>(y.begin(), y.begin() + T));
        REQUIRE(rep.rank == 1);
        REQUIRE(rep.method == RankReport::Method::cross_moment_generalized);
    }
}

TEST_CASE("memory index of a transformed series") {
    REQUIRE(hurst_of_transform(0.9, 1) == Catch::Approx(0.9));
    REQUIRE(hurst_of_transform(0.9, 2) == Catch::Approx(0.8));
    REQUIRE(hurst_of_transform(0.7, 2) == Catch::Approx(0.5));  // floor at 1/2
    REQUIRE(hurst_of_transform(0.6, 3) == Catch::Approx(0.5));
    REQUIRE_THROWS_AS(hurst_of_transform(0.4, 1), std::domain_error);
    REQUIRE_THROWS_AS(hurst_of_transform(1.0, 1), std::domain_error);
}

TEST_CASE("cross-covariance expansion matches closed forms") {
    const auto id = hermite_expand(TransformSpec::identity(), 8);
    const auto sq = hermite_expand(TransformSpec::square(), 8);
    // Cov(X, Y) = rho; Cov(X^2, Y^2) = 2 rho^2 for unit bivariate Gaussians
    REQUIRE(cross_covariance_expansion(id, id, 0.3, 8) == Catch::Approx(0.3).margin(1e-10));
    REQUIRE(cross_covariance_expansion(sq, sq, 0.3, 8) == Catch::Approx(0.18).margin(1e-10));
    REQUIRE(cross_moment_expansion(sq, sq, 0.3, 8) == Catch::Approx(1.18).margin(1e-10));
}
