// Deterministic random number generation. All samplers are built on
// mt19937_64 with explicitly coded distributions so that a given seed
// produces the same stream on every standard library implementation.

#ifndef LONGMEM_RNG_HPP
#define LONGMEM_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace longmem {

// splitmix64 finalizer, used to derive per-replicate seeds.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Splittable seed for replicate r of a batch keyed by `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t r) {
    return mix64(seed ^ mix64(r + 0x632be59bd9b4e019ULL));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // Uniform on (0, 1).
    double uniform() {
        // 53-bit mantissa; never exactly 0 or 1.
        const std::uint64_t u = eng_() >> 11;
        return (static_cast<double>(u) + 0.5) * (1.0 / 9007199254740992.0);
    }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    std::uint64_t integer(std::uint64_t n) {  // uniform on {0, ..., n-1}
        if (n == 0) throw std::invalid_argument("Rng::integer: n must be positive");
        // rejection to avoid modulo bias
        const std::uint64_t lim = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t u;
        do { u = eng_(); } while (u >= lim);
        return u % n;
    }

    // Standard normal via Box-Muller (pair cached).
    double gaussian() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * 3.14159265358979323846 * u2;
        cached_ = r * std::sin(theta);
        has_cached_ = true;
        return r * std::cos(theta);
    }

    double gaussian(double mean, double sd) { return mean + sd * gaussian(); }

    // Exp(1) - 1: mean 0, variance 1.
    double centered_exponential() { return -std::log(uniform()) - 1.0; }

    // Student t with integer df > 4, rescaled to unit variance.
    double student_t_unit(int df) {
        if (df <= 4) throw std::invalid_argument("student_t_unit: df must exceed 4");
        double chi2 = 0.0;
        for (int i = 0; i < df; ++i) {
            const double z = gaussian();
            chi2 += z * z;
        }
        const double t = gaussian() / std::sqrt(chi2 / df);
        return t * std::sqrt((df - 2.0) / df);
    }

private:
    std::mt19937_64 eng_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace longmem

#endif
