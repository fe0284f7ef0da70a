#include "levy_spectra/pmf.hpp"

#include <fmt/format.h>

#include "levy_spectra/error.hpp"

namespace levy_spectra {

EmpiricalPMF EmpiricalPMF::from_samples(std::span<const std::int64_t> samples) {
    EmpiricalPMF pmf;
    for (auto s : samples) pmf.add(s);
    return pmf;
}

EmpiricalPMF EmpiricalPMF::from_counts(std::map<std::int64_t, std::uint64_t> counts) {
    EmpiricalPMF pmf;
    for (const auto& [j, c] : counts) pmf.add(j, c);
    return pmf;
}

void EmpiricalPMF::add(std::int64_t value, std::uint64_t times) {
    if (value < 0) throw Error(fmt::format("counting statistic must be nonnegative (got {})", value));
    if (times == 0) return;
    counts_[value] += times;
    realizations_ += times;
}

void EmpiricalPMF::merge(const EmpiricalPMF& other) {
    for (const auto& [j, c] : other.counts_) add(j, c);
}

std::uint64_t EmpiricalPMF::count(std::int64_t j) const {
    const auto it = counts_.find(j);
    return it == counts_.end() ? 0 : it->second;
}

double EmpiricalPMF::probability(std::int64_t j) const {
    if (realizations_ == 0) return 0.0;
    return static_cast<double>(count(j)) / static_cast<double>(realizations_);
}

double EmpiricalPMF::tail_probability(std::int64_t j) const {
    if (realizations_ == 0) return 0.0;
    std::uint64_t above = 0;
    for (auto it = counts_.upper_bound(j); it != counts_.end(); ++it) above += it->second;
    return static_cast<double>(above) / static_cast<double>(realizations_);
}

std::int64_t EmpiricalPMF::max_value() const { return counts_.empty() ? 0 : counts_.rbegin()->first; }

double EmpiricalPMF::mean() const {
    if (realizations_ == 0) return 0.0;
    double s = 0.0;
    for (const auto& [j, c] : counts_) s += static_cast<double>(j) * static_cast<double>(c);
    return s / static_cast<double>(realizations_);
}

double EmpiricalPMF::variance() const {
    if (realizations_ < 2) return 0.0;
    const double mu = mean();
    double s = 0.0;
    for (const auto& [j, c] : counts_) {
        const double d = static_cast<double>(j) - mu;
        s += d * d * static_cast<double>(c);
    }
    return s / static_cast<double>(realizations_ - 1);
}

std::vector<double> EmpiricalPMF::probabilities(std::size_t n_cap) const {
    std::vector<double> p(n_cap + 1, 0.0);
    for (const auto& [j, c] : counts_)
        if (static_cast<std::size_t>(j) <= n_cap) p[static_cast<std::size_t>(j)] = probability(j);
    return p;
}

}  // namespace levy_spectra
