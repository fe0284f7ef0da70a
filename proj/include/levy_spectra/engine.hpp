#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "levy_spectra/lattice.hpp"
#include "levy_spectra/pmf.hpp"
#include "levy_spectra/spectral.hpp"
#include "levy_spectra/stats.hpp"

namespace levy_spectra {

struct RunOptions {
    int workers = 0;  // 0: OpenMP default
    PivotPolicy pivot;
};

// Window (E0 + a/beta, E0 + b/beta] with beta = |Lambda| of `box`.
EnergyWindow local_window(const LatticeBox& box, double center, double a, double b);
// Centered window of length |I|: I = [-|I|/2, |I|/2].
EnergyWindow local_window(const LatticeBox& box, double center, double length);

// Per-realization counts for several windows evaluated on the same H.
// values[r * windows + w]; a dropped realization stores -1 in every slot.
struct CountSamples {
    std::size_t realizations = 0;
    std::size_t windows = 0;
    std::vector<std::int64_t> values;
    std::vector<std::uint64_t> dropped;  // realization indices, ascending

    std::int64_t at(std::size_t r, std::size_t w) const { return values[r * windows + w]; }
    std::vector<std::int64_t> column(std::size_t w) const;  // drops failed realizations
    EmpiricalPMF pmf(std::size_t w) const;
};

// OpenMP over realizations. Results depend only on (spec, box, windows, R, seed).
CountSamples sample_counts(const ModelSpec& spec, const LatticeBox& box, std::span<const EnergyWindow> windows,
                           std::size_t realizations, std::uint64_t seed, const RunOptions& options = {});

// Plain loop over realizations; reference for the parallel path.
CountSamples sample_counts_serial(const ModelSpec& spec, const LatticeBox& box,
                                  std::span<const EnergyWindow> windows, std::size_t realizations,
                                  std::uint64_t seed, const PivotPolicy& pivot = {});

// Empirical law of xi_L(I). Requires window.scale() == box.site_count().
EmpiricalPMF run_xi(const ModelSpec& spec, const LatticeBox& box, const EnergyWindow& window,
                    std::size_t realizations, std::uint64_t seed, const RunOptions& options = {});

// Non-overlapping cover of a box by cubes of side 2*ell+1.
struct BlockScheme {
    int block_half_side = 0;
    int dim = 1;
    std::vector<std::array<int, 3>> origins;  // lower corner of each block, box coordinates
    std::vector<std::array<int, 3>> centers;  // block centers n_p, centered coordinates

    int block_side() const noexcept { return 2 * block_half_side + 1; }
    std::size_t block_count() const noexcept { return origins.size(); }

    // Throws TilingError unless 2*ell+1 divides the box side.
    static BlockScheme tile(const LatticeBox& box, int block_half_side);
};

// floor(L^((1 - eps) / 2)), lowered until it tiles a box of side `side`.
// Throws TilingError when only ell = 0 would tile.
int default_block_half_side(int half_side, int side, double epsilon = 0.1);

// Half side L' closest to L (ties to the smaller) with 2L'+1 divisible by 2*ell+1.
int nearest_tileable_half_side(int half_side, int block_half_side);

struct BlockRun {
    std::vector<EmpiricalPMF> per_block;  // law of eta_{ell,p}, one per block
    EmpiricalPMF zeta;
    EmpiricalPMF xi;
    std::vector<std::int64_t> xi_samples;    // -1 for dropped realizations
    std::vector<std::int64_t> zeta_samples;  // -1 for dropped realizations
    std::vector<std::uint64_t> dropped;
};

// Block statistics eta_{ell,p} (restrictions of the same disorder draw to each
// block, counted in the big-box window) together with zeta = sum_p eta_p and xi.
BlockRun run_eta_blocks(const ModelSpec& spec, const LatticeBox& box, const BlockScheme& scheme,
                        const EnergyWindow& window, std::size_t realizations, std::uint64_t seed,
                        const RunOptions& options = {});

BlockRun run_eta_blocks_serial(const ModelSpec& spec, const LatticeBox& box, const BlockScheme& scheme,
                               const EnergyWindow& window, std::size_t realizations, std::uint64_t seed,
                               const PivotPolicy& pivot = {});

struct CurvePoint {
    double energy = 0.0;
    double value = 0.0;
    double std_error = 0.0;
};

// Averaged integrated density of states, eigenvalues <= E per site.
std::vector<CurvePoint> estimate_ids(const ModelSpec& spec, const LatticeBox& box, std::span<const double> energy_grid,
                                     std::size_t realizations, std::uint64_t seed, const RunOptions& options = {});

// Central difference (N(E+h) - N(E-h)) / 2h with linear interpolation on the
// IDS grid; outside the grid the curve is held at its end values.
std::vector<CurvePoint> estimate_dos(std::span<const CurvePoint> ids_curve, double bandwidth);

struct ScalingRow {
    int half_side = 0;
    std::size_t sites = 0;
    double length = 0.0;
    double value = 0.0;
    double std_error = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    std::size_t realizations = 0;
    std::uint64_t seed = 0;
};

struct ScalingTable {
    std::string statistic;
    std::vector<ScalingRow> rows;

    std::vector<const ScalingRow*> for_half_side(int half_side) const;
};

// Mean of xi_L(I) against |I| for every box in `half_sides`.
ScalingTable wegner_scan(const ModelSpec& spec, std::span<const int> half_sides, std::span<const double> lengths,
                         double center, std::size_t realizations, std::uint64_t seed,
                         const RunOptions& options = {});

// P{xi_L(I) > m_k} against |I|, with Wilson intervals.
ScalingTable minami_scan(const ModelSpec& spec, std::span<const int> half_sides, std::span<const double> lengths,
                         double center, std::size_t realizations, std::uint64_t seed,
                         const RunOptions& options = {});

// Linear fit of value against |I| for one box (Wegner slope).
LinearFit wegner_slope(const ScalingTable& table, int half_side);
// Log-log fit of value against |I| for one box (Minami exponent).
LinearFit minami_exponent(const ScalingTable& table, int half_side);

}  // namespace levy_spectra
