#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "longmem/process.hpp"
#include "longmem/stats.hpp"

using namespace longmem;

TEST_CASE("fgn autocovariance closed form") {
    REQUIRE(fgn_autocovariance(0.75, 0) == Catch::Approx(1.0));
    REQUIRE(fgn_autocovariance(0.75, 1) == Catch::Approx(std::sqrt(2.0) - 1.0).margin(1e-14));
    for (int n = 1; n <= 10; ++n)
        REQUIRE(fgn_autocovariance(0.5, n) == Catch::Approx(0.0).margin(1e-14));
    REQUIRE(fgn_autocovariance(0.9, 5) == fgn_autocovariance(0.9, -5));
    // slow hyperbolic decay: gamma(n) ~ H(2H-1) n^{2H-2}
    const double H = 0.9;
    const double ratio = fgn_autocovariance(H, 1000) /
                         (H * (2.0 * H - 1.0) * std::pow(1000.0, 2.0 * H - 2.0));
    REQUIRE(ratio == Catch::Approx(1.0).margin(1e-3));
}

TEST_CASE("fgn simulation is deterministic in the seed") {
    const TimeSeries a = simulate_fgn({0.8, 1024, 1.0}, 7);
    const TimeSeries b = simulate_fgn({0.8, 1024, 1.0}, 7);
    const TimeSeries c = simulate_fgn({0.8, 1024, 1.0}, 8);
    REQUIRE(a.values == b.values);
    REQUIRE(a.values != c.values);
    REQUIRE(a.meta.at("H") == "0.8");
}

TEST_CASE("fgn marginal and lag-1 covariance match theory") {
    const double H = 0.8;
    const std::size_t N = 512, reps = 400;
    double v = 0.0, c1 = 0.0;
    for (std::size_t r = 0; r < reps; ++r) {
        const TimeSeries x = simulate_fgn({H, N, 1.0}, derive_seed(100, r));
        double m = stats::mean(x.values);
        double vv = 0.0, cc = 0.0;
        for (double u : x.values) vv += (u - m) * (u - m);
        for (std::size_t n = 0; n + 1 < N; ++n)
            cc += (x.values[n] - m) * (x.values[n + 1] - m);
        v += vv / static_cast<double>(N);
        c1 += cc / static_cast<double>(N);
    }
    v /= static_cast<double>(reps);
    c1 /= static_cast<double>(reps);
    // centering at the sample mean biases both statistics down by about
    // Var(sample mean) = N^{2H-2}
    const double bias = std::pow(static_cast<double>(N), 2.0 * H - 2.0);
    REQUIRE(v == Catch::Approx(1.0 - bias).margin(0.03));
    REQUIRE(c1 == Catch::Approx(fgn_autocovariance(H, 1) - bias).margin(0.03));
}

TEST_CASE("durbin-levinson and circulant synthesis agree in law") {
    // compare empirical lag-0/1 covariance of tiny paths from both samplers
    std::vector<double> acov(8);
    for (int n = 0; n < 8; ++n) acov[n] = fgn_autocovariance(0.7, n);
    const std::size_t reps = 4000;
    double v_dl = 0.0, v_ci = 0.0;
    for (std::size_t r = 0; r < reps; ++r) {
        Rng rng(derive_seed(55, r));
        const auto dl = detail::durbin_levinson_gaussian(acov, 8, rng);
        const auto ci = circulant_gaussian(acov, 8, derive_seed(56, r));
        for (double u : dl) v_dl += u * u;
        for (double u : ci) v_ci += u * u;
    }
    v_dl /= static_cast<double>(8 * reps);
    v_ci /= static_cast<double>(8 * reps);
    REQUIRE(v_dl == Catch::Approx(1.0).margin(0.05));
    REQUIRE(v_ci == Catch::Approx(1.0).margin(0.05));
}

TEST_CASE("farima autocovariance recurrence and endpoints") {
    const auto zero = farima_autocovariance(0.0, 5);
    REQUIRE(zero[0] == Catch::Approx(1.0));
    for (int k = 1; k <= 5; ++k) REQUIRE(zero[k] == Catch::Approx(0.0).margin(1e-14));
    const double d = 0.3;
    const auto g = farima_autocovariance(d, 10);
    const double want0 = std::tgamma(1.0 - 2.0 * d) / std::pow(std::tgamma(1.0 - d), 2);
    REQUIRE(g[0] == Catch::Approx(want0).margin(1e-12));
    REQUIRE(g[1] / g[0] == Catch::Approx(d / (1.0 - d)).margin(1e-12));
    // hyperbolic tail with exponent 2d - 1
    const double r = g[10] / g[9];
    REQUIRE(r == Catch::Approx(std::pow(10.0 / 9.0, 2.0 * d - 1.0)).margin(1e-2));
}

TEST_CASE("linear process is normalized to unit variance") {
    const TimeSeries x = simulate_linear({0.8, Innovation::gaussian, 6, 10000}, 4096, 3);
    REQUIRE(stats::variance(x.values) == Catch::Approx(1.0).margin(0.25));
    const TimeSeries y = simulate_linear({0.8, Innovation::centered_exponential, 6, 10000}, 512, 3);
    REQUIRE(y.size() == 512);
    const TimeSeries t = simulate_linear({0.7, Innovation::student_t, 6, 10000}, 512, 3);
    REQUIRE(t.size() == 512);
}

TEST_CASE("ar(1) path has the right autocorrelation and variance") {
    WeakDepSpec spec;
    spec.kind = WeakDepSpec::Kind::ar1;
    spec.phi = 0.5;
    const TimeSeries x = simulate_weak(spec, 200000, 21);
    REQUIRE(stats::variance(x.values) == Catch::Approx(1.0 / 0.75).margin(0.03));
    REQUIRE(stats::autocorrelation(x.values, 1) == Catch::Approx(0.5).margin(0.01));
    REQUIRE(stats::autocorrelation(x.values, 2) == Catch::Approx(0.25).margin(0.01));
}

TEST_CASE("physical dependence decays geometrically for ar(1)") {
    WeakDepSpec spec;
    spec.kind = WeakDepSpec::Kind::ar1;
    spec.phi = 0.5;
    const double d0 = estimate_physical_dependence(spec, 0, 2000, 31);
    const double d1 = estimate_physical_dependence(spec, 1, 2000, 31);
    const double d3 = estimate_physical_dependence(spec, 3, 2000, 31);
    REQUIRE(d0 == Catch::Approx(std::sqrt(2.0)).margin(0.1));
    REQUIRE(d1 / d0 == Catch::Approx(0.5).margin(0.02));
    REQUIRE(d3 / d0 == Catch::Approx(0.125).margin(0.02));
    WeakDepSpec iid;
    iid.kind = WeakDepSpec::Kind::iid;
    REQUIRE(estimate_physical_dependence(iid, 3, 2000, 31) == 0.0);
    WeakDepSpec shift;
    shift.kind = WeakDepSpec::Kind::bernoulli_shift;
    const double s1 = estimate_physical_dependence(shift, 1, 2000, 31);
    const double s4 = estimate_physical_dependence(shift, 4, 2000, 31);
    REQUIRE(s4 < s1);  // contraction of the shift map
}

TEST_CASE("transform application is pointwise or windowed") {
    TimeSeries x;
    x.values = {1.0, -2.0, 3.0};
    const TimeSeries sq = apply_transform(x, TransformSpec::square());
    REQUIRE(sq.values == std::vector<double>{1.0, 4.0, 9.0});
    REQUIRE(sq.meta.at("transform") == "square");
    const TimeSeries diff = apply_transform(x, TransformSpec::lagged_linear({1.0, -1.0}));
    REQUIRE(diff.values == std::vector<double>{-3.0, 5.0});  // x(n) - x(n-1)
    REQUIRE_THROWS_AS(apply_transform(sq, TransformSpec::lagged_linear({1, 0, 0, 0})),
                      std::invalid_argument);
}

TEST_CASE("scaled partial sums use centered prefix sums") {
    TimeSeries x;
    x.values = {1.0, 2.0, 3.0, 4.0};
    const auto s = partial_sum_scaled(x, 1.0, {0.0, 0.5, 1.0});
    REQUIRE(s[0] == Catch::Approx(0.0));
    REQUIRE(s[1] == Catch::Approx(-0.5));  // ((1 - 2.5) + (2 - 2.5)) / 4
    REQUIRE(s[2] == Catch::Approx(0.0).margin(1e-15));
    REQUIRE_THROWS_AS(partial_sum_scaled(x, 0.0, {0.5}), std::invalid_argument);
    REQUIRE_THROWS_AS(partial_sum_scaled(x, 1.0, {1.5}), std::invalid_argument);
}
