// Self-contained complex FFT: iterative radix-2 plus Bluestein for
// arbitrary lengths. Forward transform computes
//   X[k] = sum_n x[n] exp(-2*pi*i*n*k/N),
// the inverse divides by N.

#ifndef LONGMEM_FFT_HPP
#define LONGMEM_FFT_HPP

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace longmem::fft {

using cdouble = std::complex<double>;

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

// In-place radix-2 Cooley-Tukey. No normalization.
inline void fft_pow2(std::vector<cdouble>& a, bool inverse) {
    const std::size_t n = a.size();
    if (!is_pow2(n)) throw std::invalid_argument("fft_pow2: size must be a power of two");
    if (n < 2) return;

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    const double pi = 3.14159265358979323846;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * pi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
        const cdouble wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cdouble w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                cdouble u = a[i + k];
                cdouble v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

// Arbitrary-length transform via Bluestein's chirp-z algorithm.
inline std::vector<cdouble> transform(std::vector<cdouble> x, bool inverse = false) {
    const std::size_t n = x.size();
    if (n == 0) return x;
    if (is_pow2(n)) {
        fft_pow2(x, inverse);
        if (inverse)
            for (auto& v : x) v /= static_cast<double>(n);
        return x;
    }
    const double pi = 3.14159265358979323846;
    const double sign = inverse ? 1.0 : -1.0;
    // chirp[k] = exp(sign * i * pi * k^2 / n), with k^2 reduced mod 2n
    std::vector<cdouble> chirp(n);
    for (std::size_t k = 0; k < n; ++k) {
        const unsigned long long k2 = (static_cast<unsigned long long>(k) * k) %
                                      (2ULL * static_cast<unsigned long long>(n));
        const double ang = sign * pi * static_cast<double>(k2) / static_cast<double>(n);
        chirp[k] = cdouble(std::cos(ang), std::sin(ang));
    }
    const std::size_t m = next_pow2(2 * n - 1);
    std::vector<cdouble> a(m, cdouble(0, 0)), b(m, cdouble(0, 0));
    for (std::size_t k = 0; k < n; ++k) a[k] = x[k] * chirp[k];
    for (std::size_t k = 0; k < n; ++k) {
        b[k] = std::conj(chirp[k]);
        if (k != 0) b[m - k] = std::conj(chirp[k]);
    }
    fft_pow2(a, false);
    fft_pow2(b, false);
    for (std::size_t k = 0; k < m; ++k) a[k] *= b[k];
    fft_pow2(a, true);
    std::vector<cdouble> out(n);
    for (std::size_t k = 0; k < n; ++k)
        out[k] = a[k] / static_cast<double>(m) * chirp[k];
    if (inverse)
        for (auto& v : out) v /= static_cast<double>(n);
    return out;
}

inline std::vector<cdouble> transform_real(const std::vector<double>& x, bool inverse = false) {
    std::vector<cdouble> c(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) c[i] = cdouble(x[i], 0.0);
    return transform(std::move(c), inverse);
}

// Linear convolution of two real sequences, length |a|+|b|-1.
inline std::vector<double> convolve(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) return {};
    const std::size_t n = a.size() + b.size() - 1;
    const std::size_t m = next_pow2(n);
    std::vector<cdouble> fa(m, cdouble(0, 0)), fb(m, cdouble(0, 0));
    for (std::size_t i = 0; i < a.size(); ++i) fa[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) fb[i] = b[i];
    fft_pow2(fa, false);
    fft_pow2(fb, false);
    for (std::size_t i = 0; i < m; ++i) fa[i] *= fb[i];
    fft_pow2(fa, true);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = fa[i].real() / static_cast<double>(m);
    return out;
}

}  // namespace longmem::fft

#endif
