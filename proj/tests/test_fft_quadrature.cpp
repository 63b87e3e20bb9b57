#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "longmem/fft.hpp"
#include "longmem/quadrature.hpp"
#include "longmem/rng.hpp"

using namespace longmem;

namespace {

// O(n^2) reference DFT
std::vector<fft::cdouble> naive_dft(const std::vector<fft::cdouble>& x, bool inverse) {
    const std::size_t n = x.size();
    std::vector<fft::cdouble> out(n);
    const double sign = inverse ? 1.0 : -1.0;
    for (std::size_t k = 0; k < n; ++k) {
        fft::cdouble s = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            s += x[j] * std::polar(1.0, sign * 2.0 * std::numbers::pi *
                                            static_cast<double>(k * j) / static_cast<double>(n));
        out[k] = inverse ? s / static_cast<double>(n) : s;
    }
    return out;
}

}  // namespace

TEST_CASE("fft matches the O(n^2) reference on power-of-two and odd sizes") {
    Rng rng(11);
    for (std::size_t n : {2u, 8u, 16u, 7u, 12u, 31u, 100u}) {
        std::vector<fft::cdouble> x(n);
        for (auto& v : x) v = {rng.gaussian(), rng.gaussian()};
        const auto got = fft::transform(x);
        const auto want = naive_dft(x, false);
        for (std::size_t k = 0; k < n; ++k)
            REQUIRE(std::abs(got[k] - want[k]) < 1e-9 * (1.0 + std::abs(want[k])));
    }
}

TEST_CASE("fft inverse round-trips") {
    Rng rng(12);
    for (std::size_t n : {16u, 31u, 257u}) {
        std::vector<fft::cdouble> x(n);
        for (auto& v : x) v = {rng.gaussian(), rng.gaussian()};
        const auto back = fft::transform(fft::transform(x), true);
        for (std::size_t k = 0; k < n; ++k) REQUIRE(std::abs(back[k] - x[k]) < 1e-9);
    }
}

TEST_CASE("fft convolution matches direct sum") {
    const std::vector<double> a = {1.0, 2.0, -1.0, 0.5};
    const std::vector<double> b = {0.25, -3.0, 2.0};
    const auto c = fft::convolve(a, b);
    REQUIRE(c.size() == a.size() + b.size() - 1);
    for (std::size_t k = 0; k < c.size(); ++k) {
        double want = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (k >= i && k - i < b.size()) want += a[i] * b[k - i];
        REQUIRE(c[k] == Catch::Approx(want).margin(1e-10));
    }
}

TEST_CASE("gauss-hermite rule integrates Gaussian moments exactly") {
    const auto rule = quad::gauss_hermite_prob(12);
    // E Z^k for k = 0, 2, 4, 6: 1, 1, 3, 15; odd moments vanish
    const double want[] = {1.0, 0.0, 1.0, 0.0, 3.0, 0.0, 15.0};
    for (int k = 0; k <= 6; ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            s += rule.weights[i] * std::pow(rule.nodes[i], k);
        REQUIRE(s == Catch::Approx(want[k]).margin(1e-12));
    }
}

TEST_CASE("gauss-legendre integrates polynomials exactly and weights sum to 2") {
    const auto rule = quad::gauss_legendre(8);
    double wsum = 0.0, x7 = 0.0, x6 = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        wsum += rule.weights[i];
        x7 += rule.weights[i] * std::pow(rule.nodes[i], 7);
        x6 += rule.weights[i] * std::pow(rule.nodes[i], 6);
    }
    REQUIRE(wsum == Catch::Approx(2.0).margin(1e-13));
    REQUIRE(x7 == Catch::Approx(0.0).margin(1e-13));
    REQUIRE(x6 == Catch::Approx(2.0 / 7.0).margin(1e-13));
}

TEST_CASE("piecewise Gaussian expectation handles kinks") {
    // E |Z| = sqrt(2/pi)
    const double e_abs = quad::gaussian_expectation_piecewise(
        [](double x) { return std::abs(x); }, {0.0});
    REQUIRE(e_abs == Catch::Approx(std::sqrt(2.0 / std::numbers::pi)).margin(1e-10));
    // P(Z <= 0.7) via an indicator with a breakpoint
    const double p = quad::gaussian_expectation_piecewise(
        [](double x) { return x <= 0.7 ? 1.0 : 0.0; }, {0.7});
    REQUIRE(p == Catch::Approx(quad::normal_cdf(0.7)).margin(1e-9));
}

TEST_CASE("rng streams are deterministic and seed-separated") {
    Rng a(42), b(42), c(43);
    bool all_equal = true, any_diff = false;
    for (int i = 0; i < 100; ++i) {
        const double x = a.gaussian(), y = b.gaussian(), z = c.gaussian();
        all_equal = all_equal && (x == y);
        any_diff = any_diff || (x != z);
    }
    REQUIRE(all_equal);
    REQUIRE(any_diff);
    REQUIRE(derive_seed(1, 0) != derive_seed(1, 1));
    REQUIRE(derive_seed(1, 0) != derive_seed(2, 0));
}

TEST_CASE("gaussian draws have the right first moments") {
    Rng rng(7);
    std::vector<double> x(200000);
    for (auto& v : x) v = rng.gaussian();
    double m = 0.0, s2 = 0.0;
    for (double v : x) m += v;
    m /= static_cast<double>(x.size());
    for (double v : x) s2 += (v - m) * (v - m);
    s2 /= static_cast<double>(x.size());
    REQUIRE(std::abs(m) < 0.01);
    REQUIRE(s2 == Catch::Approx(1.0).margin(0.02));
}
