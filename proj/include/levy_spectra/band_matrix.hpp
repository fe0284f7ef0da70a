#pragma once

#include <cstddef>
#include <vector>

namespace levy_spectra {

// Real symmetric band matrix in lower band storage: row i holds the
// entries (i, i-b) ... (i, i). Entries outside the band are zero.
class SymBandMatrix {
public:
    SymBandMatrix() = default;
    SymBandMatrix(std::size_t order, std::size_t bandwidth);

    std::size_t order() const noexcept { return order_; }
    std::size_t bandwidth() const noexcept { return bandwidth_; }

    // Symmetric access; returns 0 outside the band.
    double operator()(std::size_t i, std::size_t j) const noexcept;
    // Writes both (i, j) and (j, i); |i - j| must not exceed the bandwidth.
    void set(std::size_t i, std::size_t j, double value);
    void add(std::size_t i, std::size_t j, double value);

    void shift_diagonal(double c);

    std::vector<double> to_dense() const;  // row-major order x order

    // Raw lower-band storage, row-major with stride bandwidth + 1. Element
    // (i, j) with j <= i lives at i * (b + 1) + (b - (i - j)).
    const std::vector<double>& storage() const noexcept { return band_; }

private:
    std::size_t slot(std::size_t i, std::size_t j) const noexcept {
        return i * (bandwidth_ + 1) + (bandwidth_ - (i - j));
    }

    std::size_t order_ = 0;
    std::size_t bandwidth_ = 0;
    std::vector<double> band_;
};

}  // namespace levy_spectra
