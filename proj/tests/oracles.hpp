#pragma once

// Test-only reference computations, independent of the library code paths
// they are used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "levy_spectra/band_matrix.hpp"
#include "levy_spectra/philox.hpp"

namespace oracle {

// Cyclic Jacobi eigenvalues of a dense symmetric matrix (row-major).
inline std::vector<double> jacobi_eigenvalues(std::vector<double> a, std::size_t n) {
    auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
        if (off < 1e-30) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (at(p, q) == 0.0) continue;
                const double theta = (at(q, q) - at(p, p)) / (2.0 * at(p, q));
                const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = at(k, p), akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = at(p, k), aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = at(i, i);
    std::sort(ev.begin(), ev.end());
    return ev;
}

// Random symmetric band matrix with entries uniform in [-1, 1].
inline levy_spectra::SymBandMatrix random_band(std::size_t n, std::size_t b, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    levy_spectra::SymBandMatrix h(n, b);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = (i > b ? i - b : 0); j <= i; ++j) h.set(i, j, u(rng));
    return h;
}

// Law of k * Poisson(lambda), sampled with the standard library.
inline std::vector<std::int64_t> scaled_poisson_samples(double lambda, int k, std::size_t count,
                                                        std::uint64_t seed) {
    levy_spectra::PhiloxStream rng(seed, 99);
    std::poisson_distribution<std::int64_t> dist(lambda);
    std::vector<std::int64_t> out(count);
    for (auto& v : out) v = k * dist(rng);
    return out;
}

// Direct n-fold convolution evaluation of the compound Poisson law with
// weights p_j on {1..m}: sum_N e^{-lambda} lambda^N / N! * (jump law)^{*N}.
inline std::vector<double> compound_poisson_by_convolution(const std::vector<double>& p, std::size_t n_max) {
    double lambda = 0.0;
    for (double v : p) lambda += v;
    std::vector<double> result(n_max + 1, 0.0);
    if (lambda == 0.0) {
        result[0] = 1.0;
        return result;
    }
    std::vector<double> jump(n_max + 1, 0.0);
    for (std::size_t j = 0; j < p.size() && j + 1 <= n_max; ++j) jump[j + 1] = p[j] / lambda;
    std::vector<double> conv(n_max + 1, 0.0);
    conv[0] = 1.0;
    double poisson_weight = std::exp(-lambda);
    for (std::size_t count = 0; count <= n_max; ++count) {
        for (std::size_t n = 0; n <= n_max; ++n) result[n] += poisson_weight * conv[n];
        std::vector<double> next(n_max + 1, 0.0);
        for (std::size_t a = 0; a <= n_max; ++a)
            for (std::size_t b = 1; a + b <= n_max; ++b) next[a + b] += conv[a] * jump[b];
        conv = std::move(next);
        poisson_weight *= lambda / static_cast<double>(count + 1);
    }
    return result;
}

// P{Binomial(n, q) >= 2}.
inline double binomial_at_least_two(double n, double q) {
    return 1.0 - std::pow(1.0 - q, n) - n * q * std::pow(1.0 - q, n - 1.0);
}

}  // namespace oracle
