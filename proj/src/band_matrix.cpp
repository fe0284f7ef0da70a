#include "levy_spectra/band_matrix.hpp"

#include <stdexcept>
#include <utility>

namespace levy_spectra {

SymBandMatrix::SymBandMatrix(std::size_t order, std::size_t bandwidth)
    : order_(order), bandwidth_(bandwidth), band_(order * (bandwidth + 1), 0.0) {}

double SymBandMatrix::operator()(std::size_t i, std::size_t j) const noexcept {
    if (i < j) std::swap(i, j);
    if (i - j > bandwidth_) return 0.0;
    return band_[slot(i, j)];
}

void SymBandMatrix::set(std::size_t i, std::size_t j, double value) {
    if (i < j) std::swap(i, j);
    if (i >= order_ || i - j > bandwidth_) throw std::out_of_range("SymBandMatrix::set outside band");
    band_[slot(i, j)] = value;
}

void SymBandMatrix::add(std::size_t i, std::size_t j, double value) {
    if (i < j) std::swap(i, j);
    if (i >= order_ || i - j > bandwidth_) throw std::out_of_range("SymBandMatrix::add outside band");
    band_[slot(i, j)] += value;
}

void SymBandMatrix::shift_diagonal(double c) {
    for (std::size_t i = 0; i < order_; ++i) band_[slot(i, i)] += c;
}

std::vector<double> SymBandMatrix::to_dense() const {
    std::vector<double> dense(order_ * order_, 0.0);
    for (std::size_t i = 0; i < order_; ++i) {
        const std::size_t first = i > bandwidth_ ? i - bandwidth_ : 0;
        for (std::size_t j = first; j <= i; ++j) {
            const double v = band_[slot(i, j)];
            dense[i * order_ + j] = v;
            dense[j * order_ + i] = v;
        }
    }
    return dense;
}

}  // namespace levy_spectra
