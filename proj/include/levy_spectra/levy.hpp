#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "levy_spectra/pmf.hpp"

namespace levy_spectra {

// Weights p_1..p_m of a Levy measure on {1, ..., m}.
struct LevyWeights {
    std::vector<double> weights;  // weights[j - 1] = p_j

    std::size_t support_cap() const noexcept { return weights.size(); }
    double intensity() const noexcept;  // sum_j p_j
    double mean() const noexcept;       // sum_j j p_j
    double second_moment() const noexcept;  // sum_j j^2 p_j
};

// Law with characteristic function exp(sum_j (e^{itj} - 1) p_j) on
// {0, ..., n_max} by the Panjer recursion. Requires n_max >= m.
std::vector<double> panjer_pmf(const LevyWeights& w, std::size_t n_max);

// Smallest n_max whose Panjer tail mass is below `tail`.
std::size_t panjer_support_for_tail(const LevyWeights& w, double tail = 1e-15);

struct FitOptions {
    int max_sweeps = 5000;
    double tolerance = 1e-13;  // stop when no coordinate moves more than this
};

// Nonnegative weights minimising the l2 distance between panjer_pmf(w) and the
// empirical pmf on {0, ..., max observed + m}, by projected coordinate Newton
// descent from the moment-matched start. Needs R >= 1000. A point mass at 0
// returns all-zero weights.
LevyWeights fit_weights(const EmpiricalPMF& pmf, int m, const FitOptions& options = {});

// Moment-matched starting point used by fit_weights.
LevyWeights moment_matched_weights(double mean, double variance, int m);

double fit_objective(const LevyWeights& w, std::span<const double> target);

struct BlockSumEstimate {
    LevyWeights weights;     // lambda_j = sum_p P{eta_p = j}
    double tail_mass = 0.0;  // sum_p P{eta_p > m}
};

BlockSumEstimate block_sum_estimator(std::span<const EmpiricalPMF> per_block, int m);

// Sample variance over sample mean. Throws ZeroMean when the mean is 0.
double poisson_index(const EmpiricalPMF& pmf);

// 64 equispaced points on [-pi, pi].
std::vector<double> default_t_grid(std::size_t points = 64);

// sup_t |phi_emp(t) - exp(sum_j (e^{itj} - 1) p_j)| over t_grid.
double char_fn_distance(const EmpiricalPMF& pmf, const LevyWeights& w, std::span<const double> t_grid);

// Total-variation distance between pmf and Poisson(pmf.mean()).
double poisson_tv_distance(const EmpiricalPMF& pmf);

// R iid draws from a pmf on {0, ..., n} by inverse CDF, addressed by (seed, stream).
EmpiricalPMF sample_from_pmf(std::span<const double> probabilities, std::size_t realizations, std::uint64_t seed,
                             std::uint64_t stream = 0);

}  // namespace levy_spectra
