// Small numerical statistics helpers shared across the library.

#ifndef LONGMEM_STATS_HPP
#define LONGMEM_STATS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace longmem::stats {

inline double mean(const std::vector<double>& x) {
    if (x.empty()) throw std::invalid_argument("mean: empty input");
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

inline double variance(const std::vector<double>& x) {
    const double m = mean(x);
    double s = 0.0;
    for (double v : x) s += (v - m) * (v - m);
    return s / static_cast<double>(x.size());
}

inline double sd(const std::vector<double>& x) { return std::sqrt(variance(x)); }

inline double skewness(const std::vector<double>& x) {
    const double m = mean(x);
    double s2 = 0.0, s3 = 0.0;
    for (double v : x) {
        const double d = v - m;
        s2 += d * d;
        s3 += d * d * d;
    }
    const double n = static_cast<double>(x.size());
    const double sigma = std::sqrt(s2 / n);
    return (s3 / n) / (sigma * sigma * sigma);
}

inline double excess_kurtosis(const std::vector<double>& x) {
    const double m = mean(x);
    double s2 = 0.0, s4 = 0.0;
    for (double v : x) {
        const double d = v - m;
        s2 += d * d;
        s4 += d * d * d * d;
    }
    const double n = static_cast<double>(x.size());
    const double v2 = s2 / n;
    return (s4 / n) / (v2 * v2) - 3.0;
}

inline double quantile(std::vector<double> x, double q) {
    if (x.empty()) throw std::invalid_argument("quantile: empty input");
    std::sort(x.begin(), x.end());
    const double pos = q * (static_cast<double>(x.size()) - 1.0);
    const std::size_t lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= x.size()) return x.back();
    const double frac = pos - static_cast<double>(lo);
    return x[lo] * (1.0 - frac) + x[lo + 1] * frac;
}

inline double median(const std::vector<double>& x) { return quantile(x, 0.5); }

struct FiveNumber {
    double min, q1, median, q3, max;
};

inline FiveNumber five_number(const std::vector<double>& x) {
    FiveNumber f;
    f.min = *std::min_element(x.begin(), x.end());
    f.max = *std::max_element(x.begin(), x.end());
    f.q1 = quantile(x, 0.25);
    f.median = quantile(x, 0.5);
    f.q3 = quantile(x, 0.75);
    return f;
}

struct OlsFit {
    double slope;
    double intercept;
    double slope_se;       // from residual variance
    double residual_var;
};

inline OlsFit ols(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("ols: need two equal-length inputs of size >= 2");
    const double xbar = mean(x), ybar = mean(y);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - xbar) * (x[i] - xbar);
        sxy += (x[i] - xbar) * (y[i] - ybar);
    }
    if (sxx == 0.0) throw std::invalid_argument("ols: degenerate regressor");
    OlsFit f;
    f.slope = sxy / sxx;
    f.intercept = ybar - f.slope * xbar;
    double rss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - f.intercept - f.slope * x[i];
        rss += r * r;
    }
    const std::size_t dof = x.size() > 2 ? x.size() - 2 : 1;
    f.residual_var = rss / static_cast<double>(dof);
    f.slope_se = std::sqrt(f.residual_var / sxx);
    return f;
}

// Biased (1/N) sample autocovariance at a nonnegative lag.
inline double autocovariance(const std::vector<double>& x, std::size_t lag) {
    if (lag >= x.size()) throw std::invalid_argument("autocovariance: lag out of range");
    const double m = mean(x);
    double s = 0.0;
    for (std::size_t i = 0; i + lag < x.size(); ++i)
        s += (x[i] - m) * (x[i + lag] - m);
    return s / static_cast<double>(x.size());
}

inline double autocorrelation(const std::vector<double>& x, std::size_t lag) {
    const double g0 = autocovariance(x, 0);
    if (g0 == 0.0) throw std::invalid_argument("autocorrelation: zero variance");
    return autocovariance(x, lag) / g0;
}

// Kolmogorov-Smirnov distance between a sample and a given CDF.
inline double ks_statistic(std::vector<double> x, const std::function<double(double)>& cdf) {
    if (x.empty()) throw std::invalid_argument("ks_statistic: empty sample");
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double F = cdf(x[i]);
        d = std::max(d, std::abs(F - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - F));
    }
    return d;
}

// Two-sample KS distance.
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j]) ++i; else ++j;
        const double fa = static_cast<double>(i) / a.size();
        const double fb = static_cast<double>(j) / b.size();
        d = std::max(d, std::abs(fa - fb));
    }
    return d;
}

// Bartlett-window long-run variance estimate.
inline double long_run_variance(const std::vector<double>& x, std::size_t bandwidth) {
    double s = autocovariance(x, 0);
    for (std::size_t k = 1; k <= bandwidth && k < x.size(); ++k) {
        const double w = 1.0 - static_cast<double>(k) / static_cast<double>(bandwidth + 1);
        s += 2.0 * w * autocovariance(x, k);
    }
    return s;
}

struct Histogram {
    std::vector<double> bin_left, bin_right;
    std::vector<std::size_t> counts;
};

// Equal bins on [lo, hi]; values at hi fall in the last bin.
inline Histogram histogram(const std::vector<double>& x, double lo, double hi, std::size_t bins) {
    Histogram h;
    h.counts.assign(bins, 0);
    for (std::size_t b = 0; b < bins; ++b) {
        h.bin_left.push_back(lo + (hi - lo) * static_cast<double>(b) / bins);
        h.bin_right.push_back(lo + (hi - lo) * static_cast<double>(b + 1) / bins);
    }
    for (double v : x) {
        if (v < lo || v > hi) continue;
        std::size_t b = static_cast<std::size_t>((v - lo) / (hi - lo) * bins);
        if (b >= bins) b = bins - 1;
        ++h.counts[b];
    }
    return h;
}

// Derivative-free 1-D minimization by golden-section search.
inline double golden_section_minimize(const std::function<double(double)>& f,
                                      double a, double b, double tol = 1e-6) {
    const double invphi = 0.6180339887498949;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace longmem::stats

#endif
