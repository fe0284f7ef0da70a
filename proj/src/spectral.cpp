#include "levy_spectra/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "levy_spectra/error.hpp"

namespace levy_spectra {

EnergyWindow::EnergyWindow(double center, double a, double b, double scale)
    : center_(center), a_(a), b_(b), scale_(scale) {
    if (!(std::isfinite(center) && std::isfinite(a) && std::isfinite(b)))
        throw ConfigError("energy window values must be finite");
    if (a > b) throw ConfigError(fmt::format("energy window needs a <= b (got [{}, {}])", a, b));
    if (!(scale > 0.0) || !std::isfinite(scale))
        throw ConfigError(fmt::format("energy window scale must be positive (got {})", scale));
}

Inertia ldl_inertia(const SymBandMatrix& h, double e, const PivotPolicy& policy) {
    const std::size_t n = h.order();
    const std::size_t b = h.bandwidth();
    const std::size_t stride = b + 1;
    // Working copy of H - e I; row i holds columns i-b..i at offsets 0..b.
    std::vector<double> w = h.storage();
    for (std::size_t i = 0; i < n; ++i) w[i * stride + b] -= e;

    Inertia inertia;
    for (std::size_t k = 0; k < n; ++k) {
        const double d = w[k * stride + b];
        if (!(std::abs(d) >= policy.tolerance))
            throw PivotBreakdown(fmt::format("pivot {} at row {} below tolerance", d, k), e);
        if (d < 0.0)
            ++inertia.n_neg;
        else
            ++inertia.n_pos;
        const std::size_t last = std::min(n - 1, k + b);
        // Schur complement update of the trailing band: W(i,j) -= W(i,k) W(j,k) / d
        for (std::size_t i = k + 1; i <= last; ++i) {
            const double lik = w[i * stride + b - (i - k)];
            if (lik == 0.0) continue;
            const double t = lik / d;
            double* row = &w[i * stride + b - i];  // row[j] addresses W(i, j)
            for (std::size_t j = k + 1; j <= i; ++j) row[j] -= t * w[j * stride + b - (j - k)];
        }
    }
    return inertia;
}

std::size_t count_leq(const SymBandMatrix& h, double e, const PivotPolicy& policy, int* retries) {
    const double delta = policy.relative_shift * (1.0 + std::abs(e));
    for (int attempt = 0;; ++attempt) {
        double shift = 0.0;
        if (attempt > 0) shift = (attempt % 2 == 1 ? 1.0 : -1.0) * ((attempt + 1) / 2) * delta;
        try {
            const auto in = ldl_inertia(h, e + shift, policy);
            return in.n_neg + in.n_zero;
        } catch (const PivotBreakdown&) {
            if (attempt >= policy.max_retries) throw;
            if (retries) ++*retries;
        }
    }
}

std::size_t count_in(const SymBandMatrix& h, const EnergyWindow& window, const PivotPolicy& policy,
                     int* retries) {
    if (window.length() == 0.0) return 0;
    const auto right = count_leq(h, window.right(), policy, retries);
    const auto left = count_leq(h, window.left(), policy, retries);
    return right >= left ? right - left : 0;
}

namespace {

// Householder reduction of a dense symmetric matrix (row-major, lower
// triangle used) to tridiagonal form; diag/offdiag receive the result with
// offdiag[i] coupling rows i-1 and i.
void tridiagonalize(std::vector<double>& a, std::size_t n, std::vector<double>& diag, std::vector<double>& offdiag) {
    auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
    diag.assign(n, 0.0);
    offdiag.assign(n, 0.0);
    for (std::size_t i = n - 1; i > 0; --i) {
        const std::size_t l = i - 1;
        double hh = 0.0;
        if (l > 0) {
            double scale = 0.0;
            for (std::size_t k = 0; k <= l; ++k) scale += std::abs(at(i, k));
            if (scale == 0.0) {
                offdiag[i] = at(i, l);
            } else {
                for (std::size_t k = 0; k <= l; ++k) {
                    at(i, k) /= scale;
                    hh += at(i, k) * at(i, k);
                }
                double f = at(i, l);
                double g = f >= 0.0 ? -std::sqrt(hh) : std::sqrt(hh);
                offdiag[i] = scale * g;
                hh -= f * g;
                at(i, l) = f - g;
                f = 0.0;
                for (std::size_t j = 0; j <= l; ++j) {
                    g = 0.0;
                    for (std::size_t k = 0; k <= j; ++k) g += at(j, k) * at(i, k);
                    for (std::size_t k = j + 1; k <= l; ++k) g += at(k, j) * at(i, k);
                    offdiag[j] = g / hh;
                    f += offdiag[j] * at(i, j);
                }
                const double hf = f / (hh + hh);
                for (std::size_t j = 0; j <= l; ++j) {
                    f = at(i, j);
                    g = offdiag[j] - hf * f;
                    offdiag[j] = g;
                    for (std::size_t k = 0; k <= j; ++k) at(j, k) -= f * offdiag[k] + g * at(i, k);
                }
            }
        } else {
            offdiag[i] = at(i, l);
        }
        diag[i] = hh;
    }
    offdiag[0] = 0.0;
    for (std::size_t i = 0; i < n; ++i) diag[i] = at(i, i);
}

// Implicit-shift QL on a symmetric tridiagonal matrix; eigenvalues land in d.
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e) {
    const std::size_t n = d.size();
    if (n == 0) return;
    for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;
    constexpr double eps = std::numeric_limits<double>::epsilon();
    for (std::size_t l = 0; l < n; ++l) {
        int iter = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (iter++ == 60) throw Error("implicit QL failed to converge");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                bool underflow = false;
                for (std::size_t ii = m; ii-- > l;) {
                    const double f = s * e[ii];
                    const double bb = c * e[ii];
                    r = std::hypot(f, g);
                    e[ii + 1] = r;
                    if (r == 0.0) {
                        d[ii + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[ii + 1] - p;
                    r = (d[ii] - g) * s + 2.0 * c * bb;
                    p = s * r;
                    d[ii + 1] = g + p;
                    g = c * r - bb;
                }
                if (underflow) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

}  // namespace

std::vector<double> eigenvalues_dense(std::vector<double> a, std::size_t order) {
    if (a.size() != order * order) throw DimensionMismatch("dense matrix size does not match order");
    if (order == 0) return {};
    std::vector<double> d, e;
    tridiagonalize(a, order, d, e);
    tridiagonal_ql(d, e);
    std::sort(d.begin(), d.end());
    return d;
}

std::vector<double> eigenvalues_dense(const SymBandMatrix& h, std::size_t cap) {
    if (h.order() > cap)
        throw OrderTooLarge(fmt::format("dense eigensolver cap is {} (matrix order {})", cap, h.order()));
    return eigenvalues_dense(h.to_dense(), h.order());
}

std::size_t count_sorted_in(std::span<const double> sorted, double left, double right) {
    if (!(left < right)) return 0;
    const auto lo = std::upper_bound(sorted.begin(), sorted.end(), left);
    const auto hi = std::upper_bound(sorted.begin(), sorted.end(), right);
    return static_cast<std::size_t>(hi - lo);
}

}  // namespace levy_spectra
