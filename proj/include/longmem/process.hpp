// Process generators: fractional Gaussian noise by circulant embedding,
// FARIMA(0,d,0), long-memory linear processes, short-memory contrast
// models, subordinated (transformed) series, and the coupled physical
// dependence measure.

#ifndef LONGMEM_PROCESS_HPP
#define LONGMEM_PROCESS_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "longmem/fft.hpp"
#include "longmem/rng.hpp"
#include "longmem/timeseries.hpp"
#include "longmem/transform.hpp"

namespace longmem {

// Exact fGn autocovariance at unit variance:
// gamma(n) = (|n+1|^{2H} - 2|n|^{2H} + |n-1|^{2H}) / 2.
inline double fgn_autocovariance(double H, std::int64_t n) {
    if (H <= 0.0 || H >= 1.0)
        throw std::domain_error("fgn_autocovariance: H must lie in (0, 1)");
    const double a = std::abs(static_cast<double>(n));
    return 0.5 * (std::pow(a + 1.0, 2.0 * H) - 2.0 * std::pow(a, 2.0 * H) +
                  std::pow(std::abs(a - 1.0), 2.0 * H));
}

struct FgnSpec {
    double H;
    std::size_t N;
    double sigma = 1.0;
};

namespace detail {

// Durbin-Levinson sequential simulation, O(N^2). Fallback path only.
inline std::vector<double> durbin_levinson_gaussian(const std::vector<double>& acov,
                                                    std::size_t N, Rng& rng) {
    std::vector<double> x(N), phi(N, 0.0), phi_new(N, 0.0);
    double v = acov[0];
    x[0] = std::sqrt(v) * rng.gaussian();
    for (std::size_t t = 1; t < N; ++t) {
        double num = acov[t];
        for (std::size_t j = 1; j < t; ++j) num -= phi[j - 1] * acov[t - j];
        const double kappa = num / v;
        for (std::size_t j = 1; j < t; ++j)
            phi_new[j - 1] = phi[j - 1] - kappa * phi[t - 1 - j];
        phi_new[t - 1] = kappa;
        for (std::size_t j = 0; j < t; ++j) phi[j] = phi_new[j];
        v *= (1.0 - kappa * kappa);
        if (v <= 0.0) throw numeric_error("durbin_levinson: covariance not positive definite");
        double m = 0.0;
        for (std::size_t j = 1; j <= t; ++j) m += phi[j - 1] * x[t - j];
        x[t] = m + std::sqrt(v) * rng.gaussian();
    }
    return x;
}

}  // namespace detail

// Exact-in-law stationary Gaussian path with the given autocovariance
// sequence acov[0..N-1], via circulant embedding on a circle of size
// 2(N-1). Falls back to Durbin-Levinson for N <= 4096 if an embedding
// eigenvalue is materially negative.
inline std::vector<double> circulant_gaussian(const std::vector<double>& acov, std::size_t N,
                                              std::uint64_t seed) {
    if (N < 1 || acov.size() < N)
        throw std::invalid_argument("circulant_gaussian: need acov out to lag N-1");
    Rng rng(seed);
    if (N == 1) return {std::sqrt(acov[0]) * rng.gaussian()};
    if (N == 2) return detail::durbin_levinson_gaussian(acov, N, rng);

    const std::size_t M = 2 * (N - 1);
    std::vector<double> c(M);
    for (std::size_t k = 0; k < N; ++k) c[k] = acov[k];
    for (std::size_t k = N; k < M; ++k) c[k] = acov[M - k];
    auto spec = fft::transform_real(c, false);
    std::vector<double> lambda(M);
    double lmax = 0.0, lmin = 0.0;
    for (std::size_t k = 0; k < M; ++k) {
        lambda[k] = spec[k].real();
        lmax = std::max(lmax, lambda[k]);
        lmin = std::min(lmin, lambda[k]);
    }
    if (lmin < -1e-9 * lmax) {
        if (N <= 4096) return detail::durbin_levinson_gaussian(acov, N, rng);
        throw numeric_error("circulant_gaussian: embedding failed (negative eigenvalue)");
    }
    for (double& l : lambda) l = std::max(l, 0.0);

    std::vector<fft::cdouble> v(M);
    v[0] = std::sqrt(lambda[0]) * rng.gaussian();
    v[M / 2] = std::sqrt(lambda[M / 2]) * rng.gaussian();
    for (std::size_t k = 1; k < M / 2; ++k) {
        const double a = rng.gaussian();
        const double b = rng.gaussian();
        const double s = std::sqrt(lambda[k] / 2.0);
        v[k] = fft::cdouble(s * a, s * b);
        v[M - k] = std::conj(v[k]);
    }
    auto path = fft::transform(std::move(v), false);
    std::vector<double> x(N);
    const double norm = 1.0 / std::sqrt(static_cast<double>(M));
    for (std::size_t t = 0; t < N; ++t) x[t] = path[t].real() * norm;
    return x;
}

inline TimeSeries simulate_fgn(const FgnSpec& spec, std::uint64_t seed) {
    if (spec.N < 1) throw std::invalid_argument("simulate_fgn: N must be >= 1");
    if (spec.sigma <= 0.0) throw std::invalid_argument("simulate_fgn: sigma must be positive");
    std::vector<double> acov(spec.N);
    for (std::size_t k = 0; k < spec.N; ++k)
        acov[k] = spec.sigma * spec.sigma * fgn_autocovariance(spec.H, static_cast<std::int64_t>(k));
    TimeSeries ts;
    ts.values = circulant_gaussian(acov, spec.N, seed);
    std::ostringstream h;
    h.precision(12);
    h << spec.H;
    ts.meta["generator"] = "fgn";
    ts.meta["H"] = h.str();
    ts.meta["seed"] = std::to_string(seed);
    return ts;
}

// FARIMA(0,d,0) autocovariance at unit innovation variance:
// gamma(0) = Gamma(1-2d) / Gamma(1-d)^2, gamma(k+1) = gamma(k)(k+d)/(k+1-d).
inline std::vector<double> farima_autocovariance(double d, std::size_t n_max) {
    if (d <= -0.5 || d >= 0.5)
        throw std::domain_error("farima_autocovariance: d must lie in (-1/2, 1/2)");
    std::vector<double> g(n_max + 1);
    g[0] = std::exp(std::lgamma(1.0 - 2.0 * d) - 2.0 * std::lgamma(1.0 - d));
    for (std::size_t k = 0; k < n_max; ++k)
        g[k + 1] = g[k] * (static_cast<double>(k) + d) / (static_cast<double>(k) + 1.0 - d);
    return g;
}

inline TimeSeries simulate_farima(double d, std::size_t N, std::uint64_t seed) {
    if (N < 1) throw std::invalid_argument("simulate_farima: N must be >= 1");
    TimeSeries ts;
    ts.values = circulant_gaussian(farima_autocovariance(d, N), N, seed);
    std::ostringstream h;
    h.precision(12);
    h << d;
    ts.meta["generator"] = "farima";
    ts.meta["d"] = h.str();
    ts.meta["seed"] = std::to_string(seed);
    return ts;
}

enum class Innovation { gaussian, centered_exponential, student_t };

inline double draw_innovation(Rng& rng, Innovation kind, int df = 6) {
    switch (kind) {
        case Innovation::gaussian: return rng.gaussian();
        case Innovation::centered_exponential: return rng.centered_exponential();
        case Innovation::student_t: return rng.student_t_unit(df);
    }
    throw std::logic_error("unreachable");
}

struct LinearSpec {
    double H;
    Innovation innovation = Innovation::gaussian;
    int df = 6;                  // student-t only
    std::size_t L = 10000;       // coefficient truncation
};

// Y(n) = sum_{j=0}^{L} a_j eps_{n-j} with a_j = (j+1)^{H-3/2}, rescaled to
// unit marginal variance.
inline TimeSeries simulate_linear(const LinearSpec& spec, std::size_t N, std::uint64_t seed) {
    if (spec.H <= 0.5 || spec.H >= 1.0)
        throw std::domain_error("simulate_linear: H must lie in (1/2, 1)");
    if (spec.L < 100) throw std::invalid_argument("simulate_linear: truncation must be >= 100");
    if (N < 2) throw std::invalid_argument("simulate_linear: N must be >= 2");
    std::vector<double> a(spec.L + 1);
    double ss = 0.0;
    for (std::size_t j = 0; j <= spec.L; ++j) {
        a[j] = std::pow(static_cast<double>(j + 1), spec.H - 1.5);
        ss += a[j] * a[j];
    }
    const double norm = 1.0 / std::sqrt(ss);
    for (double& v : a) v *= norm;

    Rng rng(seed);
    std::vector<double> eps(N + spec.L);
    for (double& e : eps) e = draw_innovation(rng, spec.innovation, spec.df);
    const std::vector<double> conv = fft::convolve(a, eps);
    TimeSeries ts;
    ts.values.assign(conv.begin() + static_cast<std::ptrdiff_t>(spec.L),
                     conv.begin() + static_cast<std::ptrdiff_t>(spec.L + N));
    ts.meta["generator"] = "linear";
    ts.meta["seed"] = std::to_string(seed);
    return ts;
}

struct WeakDepSpec {
    enum class Kind { iid, ar1, bernoulli_shift };
    Kind kind = Kind::iid;
    double phi = 0.5;            // ar1 only
    Innovation innovation = Innovation::gaussian;
    int df = 6;
};

constexpr std::size_t kWeakBurnIn = 1000;

inline TimeSeries simulate_weak(const WeakDepSpec& spec, std::size_t N, std::uint64_t seed) {
    if (N < 1) throw std::invalid_argument("simulate_weak: N must be >= 1");
    if (spec.kind == WeakDepSpec::Kind::ar1 && std::abs(spec.phi) >= 1.0)
        throw std::domain_error("simulate_weak: |phi| must be < 1");
    Rng rng(seed);
    TimeSeries ts;
    ts.values.resize(N);
    switch (spec.kind) {
        case WeakDepSpec::Kind::iid:
            for (double& v : ts.values) v = draw_innovation(rng, spec.innovation, spec.df);
            ts.meta["generator"] = "iid";
            break;
        case WeakDepSpec::Kind::ar1: {
            double y = 0.0;
            for (std::size_t t = 0; t < kWeakBurnIn; ++t)
                y = spec.phi * y + draw_innovation(rng, spec.innovation, spec.df);
            for (std::size_t t = 0; t < N; ++t) {
                y = spec.phi * y + draw_innovation(rng, spec.innovation, spec.df);
                ts.values[t] = y;
            }
            ts.meta["generator"] = "ar1";
            break;
        }
        case WeakDepSpec::Kind::bernoulli_shift: {
            // contraction map Y(n) = tanh(0.5 Y(n-1) + eps_n)
            double y = 0.0;
            for (std::size_t t = 0; t < kWeakBurnIn; ++t)
                y = std::tanh(0.5 * y + draw_innovation(rng, spec.innovation, spec.df));
            for (std::size_t t = 0; t < N; ++t) {
                y = std::tanh(0.5 * y + draw_innovation(rng, spec.innovation, spec.df));
                ts.values[t] = y;
            }
            ts.meta["generator"] = "bernoulli-shift";
            break;
        }
    }
    ts.meta["seed"] = std::to_string(seed);
    return ts;
}

// Monte Carlo physical dependence measure delta_2(n): RMS distance at time n
// between two paths sharing all innovations except a redrawn eps_0.
inline double estimate_physical_dependence(const WeakDepSpec& spec, std::size_t n,
                                           std::size_t reps, std::uint64_t seed) {
    if (reps < 1000)
        throw std::invalid_argument("estimate_physical_dependence: need >= 1000 replicates");
    if (spec.kind == WeakDepSpec::Kind::iid) return n >= 1 ? 0.0 : std::sqrt(2.0);
    double ss = 0.0;
    for (std::size_t r = 0; r < reps; ++r) {
        Rng rng(derive_seed(seed, r));
        double y = 0.0;
        auto step = [&](double state, double eps) {
            return spec.kind == WeakDepSpec::Kind::ar1 ? spec.phi * state + eps
                                                       : std::tanh(0.5 * state + eps);
        };
        for (std::size_t t = 0; t < kWeakBurnIn; ++t)
            y = step(y, draw_innovation(rng, spec.innovation, spec.df));
        const double eps0 = draw_innovation(rng, spec.innovation, spec.df);
        const double eps0_star = draw_innovation(rng, spec.innovation, spec.df);
        double ya = step(y, eps0);
        double yb = step(y, eps0_star);
        for (std::size_t t = 1; t <= n; ++t) {
            const double e = draw_innovation(rng, spec.innovation, spec.df);
            ya = step(ya, e);
            yb = step(yb, e);
        }
        ss += (ya - yb) * (ya - yb);
    }
    return std::sqrt(ss / static_cast<double>(reps));
}

// Pointwise (or sliding-window) application of a transform. Lagged
// transforms shorten the series by their lag span.
inline TimeSeries apply_transform(const TimeSeries& x, const TransformSpec& g) {
    const std::size_t l = g.lag_count();
    if (x.size() <= l)
        throw std::invalid_argument("apply_transform: window longer than series");
    TimeSeries out;
    out.meta = x.meta;
    out.meta["transform"] = g.str();
    if (l == 0) {
        out.values.reserve(x.size());
        for (double v : x.values) out.values.push_back(g(v));
        return out;
    }
    out.values.reserve(x.size() - l);
    std::vector<double> window(l + 1);
    for (std::size_t n = l; n < x.size(); ++n) {
        for (std::size_t j = 0; j <= l; ++j) window[j] = x.values[n - j];
        out.values.push_back(g.eval_window(window.data(), window.size()));
    }
    return out;
}

// N^{-exponent} * sum_{n <= [N t]} (x(n) - xbar) at each grid point t.
inline std::vector<double> partial_sum_scaled(const TimeSeries& x, double exponent,
                                              const std::vector<double>& grid) {
    if (grid.empty()) throw std::invalid_argument("partial_sum_scaled: empty grid");
    if (exponent <= 0.0 || exponent >= 1.5)
        throw std::invalid_argument("partial_sum_scaled: exponent must lie in (0, 1.5)");
    const double N = static_cast<double>(x.size());
    double xbar = 0.0;
    for (double v : x.values) xbar += v;
    xbar /= N;
    std::vector<double> prefix(x.size() + 1, 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) prefix[i + 1] = prefix[i] + (x.values[i] - xbar);
    const double scale = std::pow(N, -exponent);
    std::vector<double> out;
    out.reserve(grid.size());
    for (double t : grid) {
        if (t < 0.0 || t > 1.0)
            throw std::invalid_argument("partial_sum_scaled: grid points must lie in [0, 1]");
        const std::size_t m = static_cast<std::size_t>(N * t);
        out.push_back(scale * prefix[std::min(m, x.size())]);
    }
    return out;
}

}  // namespace longmem

#endif
