#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace levy_spectra {

// Histogram of a nonnegative integer statistic over R realizations.
class EmpiricalPMF {
public:
    EmpiricalPMF() = default;

    static EmpiricalPMF from_samples(std::span<const std::int64_t> samples);
    static EmpiricalPMF from_counts(std::map<std::int64_t, std::uint64_t> counts);

    void add(std::int64_t value, std::uint64_t times = 1);
    void merge(const EmpiricalPMF& other);

    std::uint64_t realizations() const noexcept { return realizations_; }
    const std::map<std::int64_t, std::uint64_t>& counts() const noexcept { return counts_; }
    std::uint64_t count(std::int64_t j) const;
    double probability(std::int64_t j) const;
    // P(value > j)
    double tail_probability(std::int64_t j) const;
    std::int64_t max_value() const;

    double mean() const;
    // Unbiased sample variance (divides by R - 1).
    double variance() const;

    // p(0), ..., p(n_cap); mass above n_cap is dropped.
    std::vector<double> probabilities(std::size_t n_cap) const;

    bool operator==(const EmpiricalPMF&) const = default;

private:
    std::map<std::int64_t, std::uint64_t> counts_;
    std::uint64_t realizations_ = 0;
};

}  // namespace levy_spectra
