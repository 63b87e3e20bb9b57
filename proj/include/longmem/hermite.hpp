// Hermite expansions against the standard Gaussian and the rank notions
// built on them: Hermite rank, its behavior under shifts, the power rank
// for non-Gaussian marginals, and the generalized (cross-moment) rank for
// lagged transformations.

#ifndef LONGMEM_HERMITE_HPP
#define LONGMEM_HERMITE_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "longmem/quadrature.hpp"
#include "longmem/stats.hpp"
#include "longmem/transform.hpp"

namespace longmem {

class degenerate_transform_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class integrability_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct HermiteExpansion {
    std::vector<double> coefficients;  // c_0 .. c_M
    int truncation_order = 0;
    double l2_norm_sq = 0.0;           // sum_{m>=1} m! c_m^2 = Var G(Z) up to truncation
    double residual_fraction = 0.0;    // tail mass beyond M, relative to Var G(Z)

    double mean() const { return coefficients.empty() ? 0.0 : coefficients[0]; }
};

inline double factorial(int m) {
    double f = 1.0;
    for (int j = 2; j <= m; ++j) f *= j;
    return f;
}

namespace detail {

// Raw moments E[G(Z) H_m(Z)] for m = 0..M, plus E[G(Z)^2].
struct GaussianMoments {
    std::vector<double> gh;  // E[G H_m]
    double g2 = 0.0;
};

inline GaussianMoments gaussian_moments(const TransformSpec& g, int M, int quad_order) {
    GaussianMoments mom;
    mom.gh.assign(M + 1, 0.0);
    std::vector<double> nodes, weights;
    if (g.smooth()) {
        const quad::Rule rule = quad::gauss_hermite_prob(quad_order);
        nodes = rule.nodes;
        weights = rule.weights;
    } else {
        // split the integration domain at jump/kink points
        const quad::Rule gl = quad::gauss_legendre(40);
        std::vector<double> edges;
        const double lo = -12.0, hi = 12.0;
        for (double e = lo; e < hi + 0.5; e += 1.0) edges.push_back(e);
        for (double b : g.breakpoints())
            if (b > lo && b < hi) edges.push_back(b);
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end(),
                                [](double a, double b) { return std::abs(a - b) < 1e-14; }),
                    edges.end());
        for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
            const double c = 0.5 * (edges[p] + edges[p + 1]);
            const double h = 0.5 * (edges[p + 1] - edges[p]);
            for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
                const double x = c + h * gl.nodes[i];
                nodes.push_back(x);
                weights.push_back(h * gl.weights[i] * quad::normal_pdf(x));
            }
        }
    }
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double x = nodes[i];
        const double gv = g(x);
        const double w = weights[i];
        mom.g2 += w * gv * gv;
        double hm1 = 0.0, h = 1.0;  // H_{m-1}, H_m starting at m = 0
        for (int m = 0; m <= M; ++m) {
            mom.gh[m] += w * gv * h;
            const double next = x * h - static_cast<double>(m) * hm1;
            hm1 = h;
            h = next;
        }
    }
    for (double v : mom.gh)
        if (!std::isfinite(v))
            throw integrability_error("hermite_expand: non-finite quadrature sum for " + g.str());
    if (!std::isfinite(mom.g2))
        throw integrability_error("hermite_expand: non-finite second moment for " + g.str());
    return mom;
}

}  // namespace detail

inline HermiteExpansion hermite_expand(const TransformSpec& g, int M, int quad_order = 128) {
    if (!g.instantaneous())
        throw std::invalid_argument("hermite_expand: transform must be instantaneous");
    if (M < 1) throw std::invalid_argument("hermite_expand: truncation order must be >= 1");
    if (quad_order < M + 1)
        throw std::invalid_argument("hermite_expand: quad_order must be >= M + 1");

    const detail::GaussianMoments mom = detail::gaussian_moments(g, M, quad_order);
    HermiteExpansion e;
    e.truncation_order = M;
    e.coefficients.resize(M + 1);
    for (int m = 0; m <= M; ++m) e.coefficients[m] = mom.gh[m] / factorial(m);

    const double var = mom.g2 - mom.gh[0] * mom.gh[0];
    double captured = 0.0;
    for (int m = 1; m <= M; ++m)
        captured += factorial(m) * e.coefficients[m] * e.coefficients[m];
    e.l2_norm_sq = captured;
    if (var <= 1e-14 * std::max(1.0, mom.g2))
        throw degenerate_transform_error("hermite_expand: transform is constant a.e.: " + g.str());
    e.residual_fraction = std::max(0.0, var - captured) / var;
    return e;
}

struct RankEvidence {
    int order;
    double statistic;
    double threshold;
};

struct RankReport {
    enum class Method { gaussian_quadrature, monte_carlo_power, cross_moment_generalized };

    int rank = 0;  // 0 means "none up to max_order_searched"
    bool found = false;
    Method method = Method::gaussian_quadrature;
    std::vector<RankEvidence> evidence;
    double tolerance = 0.0;
    int max_order_searched = 0;
};

inline RankReport hermite_rank(const TransformSpec& g, double tol = 1e-8, int M = 10,
                               int quad_order = 128) {
    if (tol <= 0.0) throw std::invalid_argument("hermite_rank: tolerance must be positive");
    const HermiteExpansion e = hermite_expand(g, M, std::max(quad_order, M + 1));
    RankReport r;
    r.method = RankReport::Method::gaussian_quadrature;
    r.tolerance = tol;
    r.max_order_searched = M;
    for (int m = 1; m <= M; ++m) {
        const double stat =
            factorial(m) * e.coefficients[m] * e.coefficients[m] / e.l2_norm_sq;
        r.evidence.push_back({m, stat, tol});
        if (!r.found && stat >= tol) {
            r.rank = m;
            r.found = true;
        }
    }
    return r;
}

inline RankReport shifted_rank(const TransformSpec& g, double z, double tol = 1e-8, int M = 10,
                               int quad_order = 128) {
    return hermite_rank(TransformSpec::shifted(g, z), tol, M, quad_order);
}

// Power rank via Monte Carlo finite differences of G_inf(y) = E G(Y + y),
// estimated on a 5-point stencil with common random numbers.
inline RankReport power_rank(const TransformSpec& g, const std::vector<double>& y_sample,
                             int max_order = 4, double step = 0.05, double tol = 1e-3) {
    if (y_sample.empty()) throw std::invalid_argument("power_rank: empty sample");
    if (max_order < 1 || max_order > 4)
        throw std::invalid_argument("power_rank: max_order must be in 1..4");
    if (step <= 0.0) throw std::invalid_argument("power_rank: step must be positive");
    if (!g.instantaneous())
        throw std::invalid_argument("power_rank: transform must be instantaneous");

    const double h = step;
    // stencil weights for central differences of order 1..4 on
    // offsets {-2h, -h, 0, h, 2h}
    const double w[4][5] = {
        {1.0 / 12, -8.0 / 12, 0.0, 8.0 / 12, -1.0 / 12},         // f' * h
        {-1.0 / 12, 16.0 / 12, -30.0 / 12, 16.0 / 12, -1.0 / 12}, // f'' * h^2
        {-0.5, 1.0, 0.0, -1.0, 0.5},                              // f''' * h^3
        {1.0, -4.0, 6.0, -4.0, 1.0},                              // f'''' * h^4
    };
    const double n = static_cast<double>(y_sample.size());
    std::vector<double> deriv(max_order, 0.0), deriv_sq(max_order, 0.0);
    double gsum = 0.0, gsum2 = 0.0;
    for (double y : y_sample) {
        double gv[5];
        for (int j = 0; j < 5; ++j) gv[j] = g(y + (j - 2) * h);
        gsum += gv[2];
        gsum2 += gv[2] * gv[2];
        for (int m = 0; m < max_order; ++m) {
            double d = 0.0;
            for (int j = 0; j < 5; ++j) d += w[m][j] * gv[j];
            d /= std::pow(h, m + 1);
            deriv[m] += d;
            deriv_sq[m] += d * d;
        }
    }
    const double scale = std::sqrt(std::max(0.0, gsum2 / n - (gsum / n) * (gsum / n)));

    RankReport r;
    r.method = RankReport::Method::monte_carlo_power;
    r.tolerance = tol;
    r.max_order_searched = max_order;
    for (int m = 0; m < max_order; ++m) {
        const double est = deriv[m] / n;
        const double var = std::max(0.0, deriv_sq[m] / n - est * est);
        const double se = std::sqrt(var / n);
        const double threshold = std::max(tol * scale, 4.0 * se);
        r.evidence.push_back({m + 1, est, threshold});
        if (!r.found && std::abs(est) >= threshold && threshold > 0.0) {
            r.rank = m + 1;
            r.found = true;
        }
    }
    return r;
}

// Generalized Hermite rank for a (possibly non-instantaneous) series X built
// on a driver Y: the first m with a cross-moment E[(X(0)-EX) Y(n)^m]
// distinguishable from zero at some lag |n| <= max_lag. Standard errors use
// block means to absorb serial dependence; `tol` is in standard-error units.
inline RankReport generalized_rank(const std::vector<double>& x, const std::vector<double>& y,
                                   int max_order = 4, int max_lag = 5, double tol = 4.0) {
    if (x.size() != y.size()) throw std::invalid_argument("generalized_rank: length mismatch");
    if (x.size() < 100) throw std::invalid_argument("generalized_rank: need length >= 100");
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
    const double xbar = stats::mean(x);

    RankReport r;
    r.method = RankReport::Method::cross_moment_generalized;
    r.tolerance = tol;
    r.max_order_searched = max_order;
    for (int m = 1; m <= max_order; ++m) {
        bool hit = false;
        for (int lag = -max_lag; lag <= max_lag; ++lag) {
            std::vector<double> prod;
            for (std::ptrdiff_t t = 0; t < n; ++t) {
                const std::ptrdiff_t s = t + lag;
                if (s < 0 || s >= n) continue;
                prod.push_back((x[t] - xbar) * std::pow(y[s], m));
            }
            const double est = stats::mean(prod);
            // block-mean standard error
            const std::size_t nb = static_cast<std::size_t>(std::sqrt(prod.size()));
            const std::size_t bl = prod.size() / nb;
            std::vector<double> bm(nb, 0.0);
            for (std::size_t b = 0; b < nb; ++b) {
                double s = 0.0;
                for (std::size_t i = 0; i < bl; ++i) s += prod[b * bl + i];
                bm[b] = s / static_cast<double>(bl);
            }
            const double se = stats::sd(bm) / std::sqrt(static_cast<double>(nb));
            const double z = se > 0.0 ? std::abs(est) / se : 0.0;
            r.evidence.push_back({m, z, tol});
            if (z >= tol) hit = true;
        }
        if (hit && !r.found) {
            r.rank = m;
            r.found = true;
        }
        if (r.found) break;
    }
    return r;
}

// Hurst index of a rank-k transformation of long-memory noise with Hurst
// index H, clamped at 1/2 in the short-memory regime.
inline double hurst_of_transform(double H, int k) {
    if (H <= 0.5 || H >= 1.0)
        throw std::domain_error("hurst_of_transform: H must lie in (1/2, 1)");
    if (k < 1) throw std::domain_error("hurst_of_transform: rank must be >= 1");
    return std::max(0.5, (H - 1.0) * k + 1.0);
}

// Cov[a(Z1), b(Z2)] for standard bivariate Gaussian (Z1, Z2) with
// correlation rho, from truncated expansions: sum m! a_m b_m rho^m, m >= 1.
inline double cross_covariance_expansion(const HermiteExpansion& a, const HermiteExpansion& b,
                                         double rho, int M) {
    if (std::abs(rho) > 1.0)
        throw std::domain_error("cross_covariance_expansion: |rho| must be <= 1");
    if (a.truncation_order < M || b.truncation_order < M)
        throw std::invalid_argument("cross_covariance_expansion: expansions truncated below M");
    double s = 0.0;
    double rp = 1.0;
    for (int m = 1; m <= M; ++m) {
        rp *= rho;
        s += factorial(m) * a.coefficients[m] * b.coefficients[m] * rp;
    }
    return s;
}

// Same sum including the m = 0 mean product, i.e. E[a(Z1) b(Z2)].
inline double cross_moment_expansion(const HermiteExpansion& a, const HermiteExpansion& b,
                                     double rho, int M) {
    return a.mean() * b.mean() + cross_covariance_expansion(a, b, rho, M);
}

}  // namespace longmem

#endif
