// Periodogram and Hurst estimators: aggregated variance, local
// periodogram regression (GPH), local Whittle, and the parametric Whittle
// estimator for FARIMA(0,d,0), together with the quadratic-coefficient
// machinery (a_theta, its gradient, rho_1).

#ifndef LONGMEM_SPECTRAL_HPP
#define LONGMEM_SPECTRAL_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "longmem/fft.hpp"
#include "longmem/hermite.hpp"
#include "longmem/quadrature.hpp"
#include "longmem/stats.hpp"
#include "longmem/timeseries.hpp"

namespace longmem {

inline constexpr double kPi = 3.14159265358979323846;

struct Periodogram {
    std::vector<double> frequencies;  // lambda_j = 2 pi j / N, j = 1..[(N-1)/2]
    std::vector<double> ordinates;    // |sum x(n) e^{-i n lambda}|^2 / (2 pi N)
};

inline Periodogram periodogram(const TimeSeries& x) {
    if (x.size() < 8) throw std::invalid_argument("periodogram: need N >= 8");
    const std::size_t N = x.size();
    double m = 0.0;
    for (double v : x.values) m += v;
    m /= static_cast<double>(N);
    std::vector<double> centered(N);
    for (std::size_t i = 0; i < N; ++i) centered[i] = x.values[i] - m;
    const auto spec = fft::transform_real(centered, false);
    Periodogram p;
    const std::size_t half = (N - 1) / 2;
    p.frequencies.reserve(half);
    p.ordinates.reserve(half);
    for (std::size_t j = 1; j <= half; ++j) {
        p.frequencies.push_back(2.0 * kPi * static_cast<double>(j) / static_cast<double>(N));
        p.ordinates.push_back(std::norm(spec[j]) / (2.0 * kPi * static_cast<double>(N)));
    }
    return p;
}

enum class EstimatorMethod { aggvar, gph, local_whittle, whittle_farima };

inline const char* method_name(EstimatorMethod m) {
    switch (m) {
        case EstimatorMethod::aggvar: return "aggvar";
        case EstimatorMethod::gph: return "gph";
        case EstimatorMethod::local_whittle: return "lw";
        case EstimatorMethod::whittle_farima: return "whittle";
    }
    return "?";
}

struct EstimatorResult {
    double H_hat = 0.0;
    double d_hat = 0.0;  // always H_hat - 1/2
    EstimatorMethod method = EstimatorMethod::local_whittle;
    std::size_t bandwidth = 0;  // frequency cutoff, or block count for aggvar
    double std_error = std::numeric_limits<double>::quiet_NaN();
    double sigma2_hat = std::numeric_limits<double>::quiet_NaN();  // whittle only
    bool boundary_warning = false;
    std::vector<std::pair<double, double>> diagnostics;  // regression points
};

inline std::size_t gph_default_bandwidth(std::size_t N) {
    return static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(N))));
}

inline std::size_t local_whittle_default_bandwidth(std::size_t N) {
    return static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(N), 2.0 / 3.0) + 1e-9));
}

// 15 logarithmically spaced block sizes from 10 to N/4.
inline std::vector<std::size_t> aggvar_default_blocks(std::size_t N) {
    std::vector<std::size_t> blocks;
    const double lo = std::log(10.0), hi = std::log(static_cast<double>(N) / 4.0);
    for (int i = 0; i < 15; ++i) {
        const double v = std::exp(lo + (hi - lo) * i / 14.0);
        const std::size_t b = static_cast<std::size_t>(std::llround(v));
        if (blocks.empty() || b > blocks.back()) blocks.push_back(b);
    }
    return blocks;
}

inline EstimatorResult estimate_aggvar(const TimeSeries& x, std::vector<std::size_t> blocks = {}) {
    const std::size_t N = x.size();
    if (N < 300) throw std::invalid_argument("estimate_aggvar: need N >= 300");
    if (blocks.empty()) blocks = aggvar_default_blocks(N);
    if (blocks.size() < 3) throw std::invalid_argument("estimate_aggvar: need >= 3 block sizes");
    for (std::size_t i = 0; i + 1 < blocks.size(); ++i)
        if (blocks[i] >= blocks[i + 1])
            throw std::invalid_argument("estimate_aggvar: blocks must be strictly increasing");
    if (blocks.back() > N / 4) throw std::invalid_argument("estimate_aggvar: max block > N/4");

    EstimatorResult r;
    r.method = EstimatorMethod::aggvar;
    r.bandwidth = blocks.size();
    std::vector<double> lx, ly, ms, nbs;
    for (std::size_t m : blocks) {
        const std::size_t nb = N / m;
        if (nb < 2) continue;
        std::vector<double> means(nb);
        for (std::size_t b = 0; b < nb; ++b) {
            double s = 0.0;
            for (std::size_t i = 0; i < m; ++i) s += x.values[b * m + i];
            means[b] = s / static_cast<double>(m);
        }
        const double v = stats::variance(means);
        if (v <= 0.0) continue;
        lx.push_back(std::log(static_cast<double>(m)));
        ly.push_back(std::log(v));
        ms.push_back(static_cast<double>(m));
        nbs.push_back(static_cast<double>(nb));
        r.diagnostics.emplace_back(lx.back(), ly.back());
    }
    if (lx.size() < 3) throw std::invalid_argument("estimate_aggvar: too few usable block sizes");
    // The raw log-log slope is badly biased for large blocks: the block
    // means are themselves long-memory correlated, so their sample variance
    // understates the truth. Under self-similar scaling the expectation is
    //   E V_m = sigma^2 (nb/(nb-1)) (m^{2H-2} - (nb m)^{2H-2}),
    // so fit that shape in the linear domain, where the expectation is
    // exact, weighting each block size by nb^2 (the large-m points carry
    // few, strongly dependent blocks and mostly noise).
    auto sse = [&](double H) {
        const double a = 2.0 * H - 2.0;
        double num = 0.0, den = 0.0;
        std::vector<double> model(ms.size()), w(ms.size());
        for (std::size_t i = 0; i < ms.size(); ++i) {
            model[i] = nbs[i] / (nbs[i] - 1.0) *
                       (std::pow(ms[i], a) - std::pow(nbs[i] * ms[i], a));
            if (model[i] <= 0.0) return 1e100;
            w[i] = nbs[i] * nbs[i];
            num += w[i] * std::exp(ly[i]) / model[i];
            den += w[i];
        }
        const double scale = num / den;
        double s = 0.0;
        for (std::size_t i = 0; i < ms.size(); ++i) {
            const double e = std::exp(ly[i]) / model[i] - scale;
            s += w[i] * e * e;
        }
        return s;
    };
    r.H_hat = stats::golden_section_minimize(sse, 0.01, 0.999, 1e-6);
    r.d_hat = r.H_hat - 0.5;
    r.boundary_warning = r.H_hat < 0.015 || r.H_hat > 0.994;
    const auto fit = stats::ols(lx, ly);  // slope scatter, for the error bar only
    r.std_error = fit.slope_se / 2.0;
    return r;
}

inline EstimatorResult estimate_gph(const TimeSeries& x, std::size_t m = 0) {
    const std::size_t N = x.size();
    if (m == 0) m = gph_default_bandwidth(N);
    const Periodogram p = periodogram(x);
    if (m < 8 || m > p.ordinates.size())
        throw std::invalid_argument("estimate_gph: bandwidth out of range");
    std::vector<double> lx, ly;
    EstimatorResult r;
    r.method = EstimatorMethod::gph;
    r.bandwidth = m;
    for (std::size_t j = 0; j < m; ++j) {
        if (p.ordinates[j] <= 0.0) continue;  // drop zero ordinates
        const double s = 2.0 * std::sin(p.frequencies[j] / 2.0);
        lx.push_back(-std::log(s * s));
        ly.push_back(std::log(p.ordinates[j]));
        r.diagnostics.emplace_back(lx.back(), ly.back());
    }
    if (lx.size() < 8) throw std::invalid_argument("estimate_gph: fewer than 8 usable frequencies");
    const auto fit = stats::ols(lx, ly);
    r.d_hat = fit.slope;
    r.H_hat = r.d_hat + 0.5;
    double sxx = 0.0;
    const double xbar = stats::mean(lx);
    for (double v : lx) sxx += (v - xbar) * (v - xbar);
    r.std_error = std::sqrt(kPi * kPi / 6.0 / sxx);  // asymptotic log-periodogram variance
    return r;
}

inline EstimatorResult estimate_local_whittle(const TimeSeries& x, std::size_t m = 0) {
    const std::size_t N = x.size();
    if (m == 0) m = local_whittle_default_bandwidth(N);
    const Periodogram p = periodogram(x);
    if (m < 8 || m > p.ordinates.size())
        throw std::invalid_argument("estimate_local_whittle: bandwidth out of range");
    double mean_log_lambda = 0.0;
    bool any_positive = false;
    for (std::size_t j = 0; j < m; ++j) {
        mean_log_lambda += std::log(p.frequencies[j]);
        if (p.ordinates[j] > 0.0) any_positive = true;
    }
    mean_log_lambda /= static_cast<double>(m);
    if (!any_positive)
        throw numeric_error("estimate_local_whittle: degenerate input (all ordinates zero)");

    auto objective = [&](double d) {
        double s = 0.0;
        for (std::size_t j = 0; j < m; ++j)
            s += std::pow(p.frequencies[j], 2.0 * d) * p.ordinates[j];
        return std::log(s / static_cast<double>(m)) - 2.0 * d * mean_log_lambda;
    };
    const double d = stats::golden_section_minimize(objective, -0.49, 0.99, 1e-6);
    EstimatorResult r;
    r.method = EstimatorMethod::local_whittle;
    r.bandwidth = m;
    r.d_hat = d;
    r.H_hat = d + 0.5;
    r.boundary_warning = d < -0.488 || d > 0.988;
    r.std_error = 0.5 / std::sqrt(static_cast<double>(m));
    return r;
}

// FARIMA(0,d,0) normalized spectral shape g_d(lambda) = (2 sin(lambda/2))^{-2d},
// satisfying the scale-identifiability normalization int log g = 0.
inline double farima_g(double d, double lambda) {
    return std::pow(2.0 * std::sin(std::abs(lambda) / 2.0), -2.0 * d);
}

inline double integral_log_g(double d, int quad_points = 256) {
    // int_{-pi}^{pi} log g = -4d int_0^pi log(2 sin(l/2)) dl. The log l
    // singularity at zero is split off and integrated analytically:
    // int_0^pi log l dl = pi (log pi - 1); the remainder is smooth.
    const quad::Rule gl = quad::gauss_legendre(quad_points);
    double smooth = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        const double lam = 0.5 * kPi * (gl.nodes[i] + 1.0);  // (0, pi)
        smooth += 0.5 * kPi * gl.weights[i] * std::log(2.0 * std::sin(lam / 2.0) / lam);
    }
    return -4.0 * d * (kPi * (std::log(kPi) - 1.0) + smooth);
}

// Scalar curvature w_d = int g_d d^2/dd^2 [g_d^{-1}] = int (2 log 2 sin(l/2))^2 dl.
inline double whittle_curvature(int quad_points = 32) {
    // geometrically graded panels toward 0 absorb the log^2 singularity
    const quad::Rule gl = quad::gauss_legendre(quad_points);
    double s = 0.0;
    double hi = kPi;
    for (int k = 0; k < 60; ++k) {
        const double lo = hi / 2.0;
        const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            const double lam = c + h * gl.nodes[i];
            const double l2s = 2.0 * std::log(2.0 * std::sin(lam / 2.0));
            s += h * gl.weights[i] * l2s * l2s;
        }
        hi = lo;
    }
    return 2.0 * s;  // symmetric in lambda
}

inline EstimatorResult whittle_farima(const TimeSeries& x) {
    const std::size_t N = x.size();
    if (N < 512) throw std::invalid_argument("whittle_farima: need N >= 512");
    const Periodogram p = periodogram(x);
    auto objective = [&](double d) {
        double s = 0.0;
        for (std::size_t j = 0; j < p.ordinates.size(); ++j)
            s += p.ordinates[j] / farima_g(d, p.frequencies[j]);
        return 2.0 * s / static_cast<double>(N);  // both spectral halves
    };
    const double d = stats::golden_section_minimize(objective, -0.49, 0.49, 1e-6);
    EstimatorResult r;
    r.method = EstimatorMethod::whittle_farima;
    r.bandwidth = p.ordinates.size();
    r.d_hat = d;
    r.H_hat = d + 0.5;
    r.sigma2_hat = 2.0 * kPi * objective(d);
    r.boundary_warning = d < -0.488 || d > 0.488;
    r.std_error = 2.0 * std::sqrt(kPi / (static_cast<double>(N) * whittle_curvature()));
    return r;
}

// Fourier coefficients a_d(n) = int e^{i n lambda} g_d(lambda)^{-1} d lambda
// for n = 0..max_lag, by FFT of the sampled inverse spectral shape.
inline std::vector<double> whittle_a_coeffs(double d, std::size_t max_lag,
                                            std::size_t grid = 1u << 17) {
    std::vector<double> f(grid, 0.0);
    for (std::size_t j = 1; j < grid; ++j) {
        const double lam = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(grid);
        f[j] = 1.0 / farima_g(d, lam > kPi ? 2.0 * kPi - lam : lam);
    }
    const auto spec = fft::transform_real(f, false);
    std::vector<double> a(max_lag + 1);
    for (std::size_t n = 0; n <= max_lag; ++n)
        a[n] = 2.0 * kPi * spec[n].real() / static_cast<double>(grid);
    return a;
}

// d/dd a_d(n): Fourier coefficients of 2 log(2 sin(lambda/2)) g_d^{-1}.
inline std::vector<double> whittle_grad_a_coeffs(double d, std::size_t max_lag,
                                                 std::size_t grid = 1u << 17) {
    std::vector<double> f(grid, 0.0);
    for (std::size_t j = 1; j < grid; ++j) {
        double lam = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(grid);
        if (lam > kPi) lam = 2.0 * kPi - lam;
        f[j] = 2.0 * std::log(2.0 * std::sin(lam / 2.0)) / farima_g(d, lam);
    }
    const auto spec = fft::transform_real(f, false);
    std::vector<double> a(max_lag + 1);
    for (std::size_t n = 0; n <= max_lag; ++n)
        a[n] = 2.0 * kPi * spec[n].real() / static_cast<double>(grid);
    return a;
}

// rho_1 = 2 sum_n E[G'(Y(n)) G(Y(0))] grad_a(n), the lag-n expectation
// evaluated through the bivariate Hermite expansion at correlation rho(n).
// Sequences run over lags -L..L (index i corresponds to lag i - L); the
// m = 0 mean product is included.
inline double compute_rho1(const HermiteExpansion& g, const HermiteExpansion& g_prime,
                           const std::vector<double>& rho, const std::vector<double>& grad_a) {
    if (rho.size() != grad_a.size() || rho.empty() || rho.size() % 2 == 0)
        throw std::invalid_argument("compute_rho1: need equal odd-length lag sequences");
    const int M = std::min(g.truncation_order, g_prime.truncation_order);
    double s = 0.0;
    for (std::size_t i = 0; i < rho.size(); ++i)
        s += cross_moment_expansion(g_prime, g, rho[i], M) * grad_a[i];
    return 2.0 * s;
}

inline EstimatorResult estimate_hurst(const TimeSeries& x, EstimatorMethod method,
                                      std::size_t bandwidth = 0) {
    switch (method) {
        case EstimatorMethod::aggvar: return estimate_aggvar(x);
        case EstimatorMethod::gph: return estimate_gph(x, bandwidth);
        case EstimatorMethod::local_whittle: return estimate_local_whittle(x, bandwidth);
        case EstimatorMethod::whittle_farima: return whittle_farima(x);
    }
    throw std::logic_error("unreachable");
}

}  // namespace longmem

#endif
