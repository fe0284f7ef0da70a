#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "levy_spectra/band_matrix.hpp"

namespace levy_spectra {

// Rescaled window (center + a/scale, center + b/scale], half-open.
// a == b is allowed and denotes the empty window.
class EnergyWindow {
public:
    EnergyWindow(double center, double a, double b, double scale);

    double center() const noexcept { return center_; }
    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    double scale() const noexcept { return scale_; }
    double length() const noexcept { return b_ - a_; }

    double left() const noexcept { return center_ + a_ / scale_; }
    double right() const noexcept { return center_ + b_ / scale_; }

    EnergyWindow shifted(double c) const { return {center_ + c, a_, b_, scale_}; }

private:
    double center_;
    double a_;
    double b_;
    double scale_;
};

struct Inertia {
    std::size_t n_neg = 0;
    std::size_t n_zero = 0;
    std::size_t n_pos = 0;

    std::size_t order() const noexcept { return n_neg + n_zero + n_pos; }
    bool operator==(const Inertia&) const = default;
};

struct PivotPolicy {
    double tolerance = 1e-300;  // absolute pivot magnitude treated as breakdown
    double relative_shift = 1e-12;
    int max_retries = 3;
};

// Inertia of H - e*Id by unpivoted banded LDL^T. Throws PivotBreakdown if a
// pivot magnitude is below the tolerance.
Inertia ldl_inertia(const SymBandMatrix& h, double e, const PivotPolicy& policy = {});

// Number of eigenvalues <= e. On breakdown, retries at e + delta, e - delta,
// e + 2 delta with delta = relative_shift * (1 + |e|); `retries` (if given)
// accumulates the number of retries used.
std::size_t count_leq(const SymBandMatrix& h, double e, const PivotPolicy& policy = {},
                      int* retries = nullptr);

// Tr E_W(H) for the half-open window W.
std::size_t count_in(const SymBandMatrix& h, const EnergyWindow& window, const PivotPolicy& policy = {},
                     int* retries = nullptr);

inline constexpr std::size_t kDenseOrderCap = 2048;

// All eigenvalues, ascending, by Householder tridiagonalisation followed by
// implicit-shift QL. Throws OrderTooLarge above `cap`.
std::vector<double> eigenvalues_dense(const SymBandMatrix& h, std::size_t cap = kDenseOrderCap);
std::vector<double> eigenvalues_dense(std::vector<double> dense_row_major, std::size_t order);

// Count of sorted eigenvalues in (left, right].
std::size_t count_sorted_in(std::span<const double> sorted, double left, double right);

}  // namespace levy_spectra
