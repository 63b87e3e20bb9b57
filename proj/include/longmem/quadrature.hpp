// Gaussian quadrature rules. The Gauss-Hermite rule is expressed for the
// probabilists' weight, i.e. nodes/weights such that
//   E f(Z) = integral f(x) phi(x) dx ~= sum_i w_i f(x_i),  Z ~ N(0,1).

#ifndef LONGMEM_QUADRATURE_HPP
#define LONGMEM_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace longmem::quad {

struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Hermite for the N(0,1) weight by the Golub-Welsch construction:
// nodes are eigenvalues of the symmetric tridiagonal Jacobi matrix with
// zero diagonal and off-diagonal sqrt(j); the weight is the squared first
// eigenvector component. Stable at high orders, unlike Newton iteration
// on the polynomial recurrence.
inline Rule gauss_hermite_prob(int n) {
    if (n < 1) throw std::invalid_argument("gauss_hermite_prob: order must be >= 1");
    std::vector<double> d(n, 0.0), e(n, 0.0), z(n, 0.0);
    for (int j = 1; j < n; ++j) e[j - 1] = std::sqrt(static_cast<double>(j));
    z[0] = 1.0;
    // QL with implicit shifts, tracking only the first eigenvector row
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= 1e-16 * dd) break;
            }
            if (m != l) {
                if (++iter > 60)
                    throw std::runtime_error("gauss_hermite_prob: eigenvalue iteration failed");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                for (int i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    f = z[i + 1];
                    z[i + 1] = s * z[i] + c * f;
                    z[i] = c * z[i] - s * f;
                }
                if (r == 0.0 && m - 1 >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return d[a] < d[b]; });
    Rule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        r.nodes[i] = d[idx[i]];
        r.weights[i] = z[idx[i]] * z[idx[i]];  // total mass of phi is 1
    }
    return r;
}

// Gauss-Legendre on [-1, 1].
inline Rule gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
    const double pi = 3.14159265358979323846;
    Rule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15) break;
        }
        r.nodes[i] = -z;
        r.nodes[n - 1 - i] = z;
        r.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        r.weights[n - 1 - i] = r.weights[i];
    }
    return r;
}

inline double normal_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * 3.14159265358979323846);
}

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// E f(Z) for f with jump/kink points: composite Gauss-Legendre against the
// Gaussian density on [-12, 12], panels split at the listed breakpoints.
inline double gaussian_expectation_piecewise(const std::function<double(double)>& f,
                                             std::vector<double> breakpoints,
                                             int points_per_panel = 40) {
    const double lo = -12.0, hi = 12.0;
    std::vector<double> edges;
    edges.push_back(lo);
    // regular panels of width 1 keep the smooth part well resolved
    for (double e = lo + 1.0; e < hi - 0.5; e += 1.0) edges.push_back(e);
    for (double b : breakpoints)
        if (b > lo && b < hi) edges.push_back(b);
    edges.push_back(hi);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end(),
                            [](double a, double b) { return std::abs(a - b) < 1e-14; }),
                edges.end());
    const Rule gl = gauss_legendre(points_per_panel);
    double total = 0.0;
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        const double a = edges[p], b = edges[p + 1];
        const double c = 0.5 * (a + b), h = 0.5 * (b - a);
        double s = 0.0;
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            const double t = c + h * gl.nodes[i];
            s += gl.weights[i] * f(t) * normal_pdf(t);
        }
        total += h * s;
    }
    return total;
}

}  // namespace longmem::quad

#endif
