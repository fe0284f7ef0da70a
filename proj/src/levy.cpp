#include "levy_spectra/levy.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <fmt/format.h>
#include <numbers>

#include "levy_spectra/error.hpp"
#include "levy_spectra/philox.hpp"

namespace levy_spectra {

double LevyWeights::intensity() const noexcept {
    double s = 0.0;
    for (double p : weights) s += p;
    return s;
}

double LevyWeights::mean() const noexcept {
    double s = 0.0;
    for (std::size_t j = 0; j < weights.size(); ++j) s += static_cast<double>(j + 1) * weights[j];
    return s;
}

double LevyWeights::second_moment() const noexcept {
    double s = 0.0;
    for (std::size_t j = 0; j < weights.size(); ++j) s += static_cast<double>((j + 1) * (j + 1)) * weights[j];
    return s;
}

std::vector<double> panjer_pmf(const LevyWeights& w, std::size_t n_max) {
    const std::size_t m = w.support_cap();
    if (n_max < m) throw ConfigError(fmt::format("panjer_pmf needs n_max >= m (got {} < {})", n_max, m));
    for (double p : w.weights)
        if (!(p >= 0.0) || !std::isfinite(p)) throw ConfigError("Levy weights must be finite and nonnegative");
    std::vector<double> pmf(n_max + 1, 0.0);
    pmf[0] = std::exp(-w.intensity());
    for (std::size_t n = 1; n <= n_max; ++n) {
        double s = 0.0;
        for (std::size_t j = 1; j <= std::min(n, m); ++j) s += static_cast<double>(j) * w.weights[j - 1] * pmf[n - j];
        pmf[n] = s / static_cast<double>(n);
    }
    return pmf;
}

std::size_t panjer_support_for_tail(const LevyWeights& w, double tail) {
    std::size_t n = std::max<std::size_t>(w.support_cap(), 8);
    for (;;) {
        const auto pmf = panjer_pmf(w, n);
        double mass = 0.0;
        for (double p : pmf) mass += p;
        if (1.0 - mass < tail || n > 100000) return n;
        n *= 2;
    }
}

double fit_objective(const LevyWeights& w, std::span<const double> target) {
    const auto model = panjer_pmf(w, target.size() - 1);
    double f = 0.0;
    for (std::size_t n = 0; n < target.size(); ++n) f += (model[n] - target[n]) * (model[n] - target[n]);
    return f;
}

LevyWeights moment_matched_weights(double mean, double variance, int m) {
    LevyWeights w{std::vector<double>(static_cast<std::size_t>(m), 0.0)};
    if (!(mean > 0.0)) return w;
    if (m == 1) {
        w.weights[0] = mean;
        return w;
    }
    // Match mean and variance with mass on the two jump sizes bracketing the
    // dispersion index D = Var / mean.
    const double d = std::clamp(variance / mean, 1.0, static_cast<double>(m));
    const int a = std::min(static_cast<int>(std::floor(d)), m - 1);
    const double upper = mean * (d - a) / (a + 1);
    const double lower = mean * (1.0 - (d - a)) / a;
    w.weights[static_cast<std::size_t>(a - 1)] = std::max(0.0, lower);
    w.weights[static_cast<std::size_t>(a)] = std::max(0.0, upper);
    return w;
}

LevyWeights fit_weights(const EmpiricalPMF& pmf, int m, const FitOptions& options) {
    if (m < 1) throw ConfigError("fit_weights needs m >= 1");
    if (pmf.realizations() < 1000)
        throw DegenerateInput(fmt::format("fit_weights needs at least 1000 realizations (got {})", pmf.realizations()));
    const auto mu = static_cast<std::size_t>(m);
    if (pmf.probability(0) == 1.0) return LevyWeights{std::vector<double>(mu, 0.0)};

    const std::size_t n_cap = static_cast<std::size_t>(pmf.max_value()) + mu;
    const auto target = pmf.probabilities(n_cap);
    auto w = moment_matched_weights(pmf.mean(), pmf.variance(), m);
    double f = fit_objective(w, target);

    for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
        double largest_move = 0.0;
        for (std::size_t j = 1; j <= mu; ++j) {
            const auto model = panjer_pmf(w, n_cap);
            auto at = [&](std::size_t n, std::size_t shift) { return n >= shift ? model[n - shift] : 0.0; };
            // dP(n)/dp_j = P(n-j) - P(n); d2P(n)/dp_j^2 = P(n-2j) - 2P(n-j) + P(n)
            double grad = 0.0, curv = 0.0, gauss_newton = 0.0;
            for (std::size_t n = 0; n <= n_cap; ++n) {
                const double r = model[n] - target[n];
                const double d1 = at(n, j) - model[n];
                const double d2 = at(n, 2 * j) - 2.0 * at(n, j) + model[n];
                grad += r * d1;
                curv += d1 * d1 + r * d2;
                gauss_newton += d1 * d1;
            }
            if (gauss_newton == 0.0) continue;
            const double h = curv > 0.0 ? curv : gauss_newton;
            double step = -grad / h;
            const double old = w.weights[j - 1];
            for (int halving = 0; halving < 40; ++halving) {
                w.weights[j - 1] = std::max(0.0, old + step);
                const double trial = fit_objective(w, target);
                if (trial <= f) {
                    f = trial;
                    break;
                }
                step *= 0.5;
                w.weights[j - 1] = old;
            }
            largest_move = std::max(largest_move, std::abs(w.weights[j - 1] - old));
        }
        if (largest_move <= options.tolerance) break;
    }
    return w;
}

BlockSumEstimate block_sum_estimator(std::span<const EmpiricalPMF> per_block, int m) {
    if (m < 1) throw ConfigError("block_sum_estimator needs m >= 1");
    BlockSumEstimate est{LevyWeights{std::vector<double>(static_cast<std::size_t>(m), 0.0)}, 0.0};
    for (const auto& block : per_block) {
        for (int j = 1; j <= m; ++j) est.weights.weights[static_cast<std::size_t>(j - 1)] += block.probability(j);
        est.tail_mass += block.tail_probability(m);
    }
    return est;
}

double poisson_index(const EmpiricalPMF& pmf) {
    if (pmf.realizations() < 2) throw ZeroMean("poisson_index needs at least two realizations");
    const double mean = pmf.mean();
    if (!(mean > 0.0)) throw ZeroMean("poisson_index is undefined for a zero-mean sample");
    return pmf.variance() / mean;
}

std::vector<double> default_t_grid(std::size_t points) {
    std::vector<double> t(points);
    if (points == 1) return {0.0};
    for (std::size_t k = 0; k < points; ++k)
        t[k] = -std::numbers::pi + 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(points - 1);
    return t;
}

double char_fn_distance(const EmpiricalPMF& pmf, const LevyWeights& w, std::span<const double> t_grid) {
    if (t_grid.empty()) throw ConfigError("char_fn_distance needs a nonempty t grid");
    using C = std::complex<double>;
    const double r = static_cast<double>(pmf.realizations());
    double sup = 0.0;
    for (const double t : t_grid) {
        C empirical{0.0, 0.0};
        for (const auto& [value, count] : pmf.counts())
            empirical += static_cast<double>(count) * std::exp(C{0.0, t * static_cast<double>(value)});
        if (r > 0) empirical /= r;
        C exponent{0.0, 0.0};
        for (std::size_t j = 0; j < w.weights.size(); ++j)
            exponent += (std::exp(C{0.0, t * static_cast<double>(j + 1)}) - 1.0) * w.weights[j];
        sup = std::max(sup, std::abs(empirical - std::exp(exponent)));
    }
    return sup;
}

double poisson_tv_distance(const EmpiricalPMF& pmf) {
    const double lambda = pmf.mean();
    const LevyWeights poisson{{lambda}};
    const std::size_t n = std::max<std::size_t>(static_cast<std::size_t>(pmf.max_value()),
                                                panjer_support_for_tail(poisson));
    const auto model = panjer_pmf(poisson, n);
    double tv = 0.0, covered = 0.0;
    for (std::size_t k = 0; k <= n; ++k) {
        tv += std::abs(model[k] - pmf.probability(static_cast<std::int64_t>(k)));
        covered += model[k];
    }
    tv += std::max(0.0, 1.0 - covered);
    return 0.5 * tv;
}

EmpiricalPMF sample_from_pmf(std::span<const double> probabilities, std::size_t realizations, std::uint64_t seed,
                             std::uint64_t stream) {
    std::vector<double> cdf(probabilities.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < probabilities.size(); ++k) cdf[k] = (acc += probabilities[k]);
    PhiloxStream rng(seed, stream);
    std::vector<std::uint64_t> hist(probabilities.size(), 0);
    for (std::size_t r = 0; r < realizations; ++r) {
        const double u = rng.uniform() * acc;
        auto k = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
        hist[std::min(k, hist.size() - 1)]++;
    }
    EmpiricalPMF pmf;
    for (std::size_t k = 0; k < hist.size(); ++k) pmf.add(static_cast<std::int64_t>(k), hist[k]);
    return pmf;
}

}  // namespace levy_spectra
