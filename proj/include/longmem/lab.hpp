// Monte Carlo rate and limit checks: partial-sum scaling exponents, the
// sample-variance dichotomy, empirical-process degeneracy, the Whittle
// convergence-rate collapse under perturbation, and CLT stability under
// weak dependence.

#ifndef LONGMEM_LAB_HPP
#define LONGMEM_LAB_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "longmem/hermite.hpp"
#include "longmem/process.hpp"
#include "longmem/quadrature.hpp"
#include "longmem/spectral.hpp"
#include "longmem/stats.hpp"

namespace longmem {

struct ScalingReport {
    std::vector<std::size_t> N_grid;
    std::vector<double> log_stat;  // log RMS of the statistic per N
    double fitted_exponent = 0.0;
    double exponent_ci_lo = 0.0;
    double exponent_ci_hi = 0.0;
    std::size_t replicates = 0;
    std::string target;
};

using Sampler = std::function<TimeSeries(std::size_t N, std::uint64_t seed)>;
using Statistic = std::function<double(const TimeSeries&)>;

inline ScalingReport scaling_exponent(const Sampler& sampler, const Statistic& statistic,
                                      const std::vector<std::size_t>& N_grid,
                                      std::size_t replicates, std::uint64_t seed,
                                      std::string target = "") {
    if (N_grid.size() < 4) throw std::invalid_argument("scaling_exponent: need >= 4 grid sizes");
    if (static_cast<double>(N_grid.back()) / static_cast<double>(N_grid.front()) < 10.0)
        throw std::invalid_argument("scaling_exponent: grid must span at least one decade");
    if (replicates < 200) throw std::invalid_argument("scaling_exponent: need >= 200 replicates");

    ScalingReport rep;
    rep.N_grid = N_grid;
    rep.replicates = replicates;
    rep.target = std::move(target);
    std::vector<double> lx;
    for (std::size_t gi = 0; gi < N_grid.size(); ++gi) {
        const std::size_t N = N_grid[gi];
        double ss = 0.0;
        std::size_t valid = 0, excluded = 0;
        for (std::size_t r = 0; r < replicates; ++r) {
            const TimeSeries path = sampler(N, derive_seed(seed ^ (gi + 1), r));
            const double s = statistic(path);
            if (!std::isfinite(s)) {
                ++excluded;
                continue;
            }
            ss += s * s;
            ++valid;
        }
        if (excluded * 20 > replicates)
            throw numeric_error("scaling_exponent: more than 5% of replicates excluded");
        rep.log_stat.push_back(0.5 * std::log(ss / static_cast<double>(valid)));
        lx.push_back(std::log(static_cast<double>(N)));
    }
    const auto fit = stats::ols(lx, rep.log_stat);
    rep.fitted_exponent = fit.slope;
    rep.exponent_ci_lo = fit.slope - 1.96 * fit.slope_se;
    rep.exponent_ci_hi = fit.slope + 1.96 * fit.slope_se;
    return rep;
}

// Var[F(Z)] under the standard Gaussian, by quadrature.
inline double gaussian_variance_of(const TransformSpec& f) {
    const auto mom = detail::gaussian_moments(f, 1, 256);
    return mom.g2 - mom.gh[0] * mom.gh[0];
}

// Fluctuation exponent of the sample variance of F(fGn(H)). Identity F:
// -1/2 below H = 3/4, 2H-2 above; a rank-1 perturbation forces H-1.
inline ScalingReport sample_variance_experiment(double H,
                                                const std::optional<TransformSpec>& perturbation,
                                                const std::vector<std::size_t>& N_grid,
                                                std::size_t replicates, std::uint64_t seed) {
    if (H <= 0.5 || H >= 1.0) throw std::domain_error("sample_variance_experiment: H in (1/2,1)");
    if (std::abs(H - 0.75) < 0.01)
        throw std::domain_error("sample_variance_experiment: boundary H = 3/4 excluded");
    const TransformSpec f = perturbation.value_or(TransformSpec::identity());
    const double sigma2 = gaussian_variance_of(f);
    Sampler sampler = [H, f](std::size_t N, std::uint64_t s) {
        return apply_transform(simulate_fgn({H, N, 1.0}, s), f);
    };
    Statistic stat = [sigma2](const TimeSeries& x) {
        return stats::variance(x.values) - sigma2;
    };
    return scaling_exponent(sampler, stat, N_grid, replicates, seed,
                            "sample-variance fluctuation, F=" + f.str());
}

struct EmpiricalProcessReport {
    std::vector<double> x_grid;
    std::vector<double> J1_estimates;
    std::vector<std::vector<double>> cross_correlations;
    double scaling_exponent_x0 = 0.0;  // fluctuation exponent of F_N at the middle grid point
};

// Empirical process F_N(x) = (1/N) sum [1{X(n) <= x} - F(x)] for
// X = G(fGn(H)). F is the pooled empirical CDF across replicates.
inline EmpiricalProcessReport empirical_process_experiment(double H, const TransformSpec& g,
                                                           const std::vector<double>& x_grid,
                                                           std::size_t N, std::size_t replicates,
                                                           std::uint64_t seed,
                                                           bool iid_control = false) {
    if (N < 2048) throw std::invalid_argument("empirical_process_experiment: need N >= 2048");
    if (replicates < 500)
        throw std::invalid_argument("empirical_process_experiment: need >= 500 replicates");
    if (!g.instantaneous())
        throw std::invalid_argument("empirical_process_experiment: transform must be instantaneous");
    if (x_grid.empty()) throw std::invalid_argument("empirical_process_experiment: empty grid");

    const std::size_t K = x_grid.size();
    // per replicate and grid point: fraction of X <= x
    std::vector<std::vector<double>> frac(replicates, std::vector<double>(K, 0.0));
    std::vector<double> pooled_cdf(K, 0.0), j1(K, 0.0);
    // sub-sizes for the internal scaling fit of F_N at the middle grid point
    const std::vector<std::size_t> subs = {N / 8, N / 4, N / 2, N};
    std::vector<double> sub_frac_ss(subs.size(), 0.0);
    std::vector<std::vector<double>> sub_fracs(subs.size(), std::vector<double>(replicates, 0.0));
    const std::size_t mid = K / 2;

    for (std::size_t r = 0; r < replicates; ++r) {
        TimeSeries y;
        if (iid_control) {
            Rng rng(derive_seed(seed, r));
            y.values.resize(N);
            for (double& v : y.values) v = rng.gaussian();
        } else {
            y = simulate_fgn({H, N, 1.0}, derive_seed(seed, r));
        }
        for (std::size_t n = 0; n < N; ++n) {
            const double xv = g(y.values[n]);
            for (std::size_t k = 0; k < K; ++k) {
                if (xv <= x_grid[k]) {
                    frac[r][k] += 1.0;
                    if (k == mid)
                        for (std::size_t s = 0; s < subs.size(); ++s)
                            if (n < subs[s]) sub_fracs[s][r] += 1.0;
                    j1[k] += y.values[n];
                }
            }
        }
        for (std::size_t k = 0; k < K; ++k) {
            frac[r][k] /= static_cast<double>(N);
            pooled_cdf[k] += frac[r][k];
        }
        for (std::size_t s = 0; s < subs.size(); ++s)
            sub_fracs[s][r] /= static_cast<double>(subs[s]);
    }
    const double total = static_cast<double>(N) * static_cast<double>(replicates);
    EmpiricalProcessReport rep;
    rep.x_grid = x_grid;
    for (std::size_t k = 0; k < K; ++k) {
        pooled_cdf[k] /= static_cast<double>(replicates);
        rep.J1_estimates.push_back(j1[k] / total);
    }

    // centered process values and their cross-replicate correlations
    std::vector<std::vector<double>> fn(K, std::vector<double>(replicates));
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t r = 0; r < replicates; ++r) fn[k][r] = frac[r][k] - pooled_cdf[k];
    rep.cross_correlations.assign(K, std::vector<double>(K, 1.0));
    for (std::size_t a = 0; a < K; ++a) {
        for (std::size_t b = a + 1; b < K; ++b) {
            double sab = 0.0;
            for (std::size_t r = 0; r < replicates; ++r) sab += fn[a][r] * fn[b][r];
            const double va = stats::variance(fn[a]);
            const double vb = stats::variance(fn[b]);
            const double corr = sab / static_cast<double>(replicates) / std::sqrt(va * vb);
            rep.cross_correlations[a][b] = corr;
            rep.cross_correlations[b][a] = corr;
        }
    }

    std::vector<double> lx, ly;
    for (std::size_t s = 0; s < subs.size(); ++s) {
        const double pooled_sub = stats::mean(sub_fracs[s]);
        double ss = 0.0;
        for (std::size_t r = 0; r < replicates; ++r) {
            const double d = sub_fracs[s][r] - pooled_sub;
            ss += d * d;
        }
        lx.push_back(std::log(static_cast<double>(subs[s])));
        ly.push_back(0.5 * std::log(ss / static_cast<double>(replicates)));
    }
    rep.scaling_exponent_x0 = stats::ols(lx, ly).slope;
    return rep;
}

// Hermite expansion of the derivative, via E[F'(Z) H_m(Z)] = E[F(Z) H_{m+1}(Z)].
inline HermiteExpansion expansion_derivative(const HermiteExpansion& f) {
    HermiteExpansion d;
    d.truncation_order = f.truncation_order - 1;
    d.coefficients.resize(f.coefficients.size() - 1);
    for (std::size_t m = 0; m + 1 < f.coefficients.size(); ++m)
        d.coefficients[m] = static_cast<double>(m + 1) * f.coefficients[m + 1];
    for (std::size_t m = 1; m < d.coefficients.size(); ++m)
        d.l2_norm_sq += factorial(static_cast<int>(m)) * d.coefficients[m] * d.coefficients[m];
    d.residual_fraction = f.residual_fraction;  // exact for polynomials
    return d;
}

// rho_1 for a transformation of FARIMA(0,d,0), with its certification bound.
struct Rho1Certificate {
    double rho1 = 0.0;
    double truncation_bound = 0.0;
    bool nonzero = false;
};

inline Rho1Certificate certify_rho1(const TransformSpec& g, double d, std::size_t max_lag = 200,
                                    int M = 10) {
    const HermiteExpansion ge = hermite_expand(g, M, 256);
    const HermiteExpansion gp = expansion_derivative(ge);
    const auto acov = farima_autocovariance(d, max_lag);
    const auto grad_half = whittle_grad_a_coeffs(d, max_lag);
    const std::size_t L = max_lag;
    std::vector<double> rho(2 * L + 1), grad(2 * L + 1);
    for (std::size_t i = 0; i < 2 * L + 1; ++i) {
        const std::size_t lag = static_cast<std::size_t>(std::abs(static_cast<long>(i) - static_cast<long>(L)));
        rho[i] = acov[lag] / acov[0];
        grad[i] = grad_half[lag];
    }
    Rho1Certificate cert;
    cert.rho1 = compute_rho1(ge, gp, rho, grad);
    double grad_abs_sum = 0.0;
    for (double v : grad) grad_abs_sum += std::abs(v);
    const double tail_norm = std::sqrt(std::max(0.0, ge.l2_norm_sq * ge.residual_fraction)) *
                             std::sqrt(std::max(1.0, gp.l2_norm_sq));
    cert.truncation_bound = 2.0 * grad_abs_sum * tail_norm + 1e-8;
    cert.nonzero = std::abs(cert.rho1) > 10.0 * cert.truncation_bound;
    return cert;
}

// Error-decay exponent of the Whittle d estimate for (possibly perturbed)
// Gaussian FARIMA(0,d,0). Expected -1/2 unperturbed, -(1-H) perturbed.
inline ScalingReport whittle_rate_experiment(double H,
                                             const std::optional<TransformSpec>& perturbation,
                                             const std::vector<std::size_t>& N_grid,
                                             std::size_t replicates, std::uint64_t seed) {
    if (H <= 0.5 || H >= 1.0) throw std::domain_error("whittle_rate_experiment: H in (1/2,1)");
    const double d = H - 0.5;
    if (perturbation) {
        const auto cert = certify_rho1(*perturbation, d);
        if (!cert.nonzero)
            throw std::invalid_argument(
                "whittle_rate_experiment: perturbation not certified (rho_1 "
                "indistinguishable from zero)");
    }
    const TransformSpec f = perturbation.value_or(TransformSpec::identity());

    auto fit_one = [&](std::size_t N, std::uint64_t s) {
        TimeSeries y = simulate_farima(d, N, s);
        if (perturbation) y = apply_transform(y, f);
        return whittle_farima(y);
    };

    double d_true = d;
    if (perturbation) {
        // pseudo-true parameter: large-N median of the perturbed estimates
        const std::size_t N_cal = 2 * N_grid.back();
        std::vector<double> cal;
        for (std::size_t r = 0; r < 101; ++r)
            cal.push_back(fit_one(N_cal, derive_seed(seed ^ 0xca1ULL, r)).d_hat);
        d_true = stats::median(cal);
    }

    std::size_t boundary_hits = 0, fits = 0;
    Sampler sampler = [&](std::size_t N, std::uint64_t s) {
        TimeSeries out;
        const EstimatorResult r = fit_one(N, s);
        if (r.boundary_warning) ++boundary_hits;
        ++fits;
        out.values = {r.d_hat};
        return out;
    };
    Statistic stat = [&](const TimeSeries& t) { return t.values[0] - d_true; };
    ScalingReport rep = scaling_exponent(sampler, stat, N_grid, replicates, seed,
                                         "whittle d-error, F=" + f.str());
    if (boundary_hits * 20 > fits)
        throw numeric_error("whittle_rate_experiment: optimizer hit the boundary in > 5% of fits");
    return rep;
}

struct NormalityReport {
    std::size_t N = 0;
    std::size_t replicates = 0;
    double skewness = 0.0;
    double excess_kurtosis = 0.0;
    double ks_distance = 0.0;   // to the fitted normal
    double sigma2_lr = 0.0;     // averaged Bartlett long-run variance
};

// sqrt(N)-scaled centered sums of F(weak-dependence series): shape of the
// replicate distribution and the long-run variance estimate.
inline NormalityReport clt_stability_experiment(const WeakDepSpec& spec, const TransformSpec& f,
                                                std::size_t N, std::size_t replicates,
                                                std::uint64_t seed) {
    if (!f.lipschitz())
        throw std::invalid_argument("clt_stability_experiment: transform must be Lipschitz");
    if (N < 4096) throw std::invalid_argument("clt_stability_experiment: need N >= 4096");
    if (replicates < 1000)
        throw std::invalid_argument("clt_stability_experiment: need >= 1000 replicates");

    const std::size_t bw = static_cast<std::size_t>(std::cbrt(static_cast<double>(N)));
    std::vector<double> rep_means(replicates);
    std::vector<std::vector<double>> paths(replicates);
    double lrv_sum = 0.0;
    for (std::size_t r = 0; r < replicates; ++r) {
        const TimeSeries x = apply_transform(simulate_weak(spec, N, derive_seed(seed, r)), f);
        rep_means[r] = stats::mean(x.values);
        lrv_sum += stats::long_run_variance(x.values, bw);
        paths[r] = x.values;
    }
    const double mu = stats::mean(rep_means);  // pooled calibration mean
    std::vector<double> sums(replicates);
    for (std::size_t r = 0; r < replicates; ++r) {
        double s = 0.0;
        for (double v : paths[r]) s += v - mu;
        sums[r] = s / std::sqrt(static_cast<double>(paths[r].size()));
    }
    NormalityReport out;
    out.N = N;
    out.replicates = replicates;
    out.skewness = stats::skewness(sums);
    out.excess_kurtosis = stats::excess_kurtosis(sums);
    out.sigma2_lr = lrv_sum / static_cast<double>(replicates);
    if (out.sigma2_lr <= 0.0)
        throw numeric_error("clt_stability_experiment: nonpositive long-run variance");
    const double sm = stats::mean(sums), sv = stats::sd(sums);
    out.ks_distance = stats::ks_statistic(
        sums, [sm, sv](double v) { return quad::normal_cdf((v - sm) / sv); });
    return out;
}

}  // namespace longmem

#endif
