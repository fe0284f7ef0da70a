#include "levy_spectra/engine.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fmt/format.h>
#include <mutex>
#include <omp.h>

#include "levy_spectra/error.hpp"

namespace levy_spectra {

namespace {

int thread_count(const RunOptions& options) {
    return options.workers > 0 ? options.workers : omp_get_max_threads();
}

void log_dropped(const std::vector<std::uint64_t>& dropped, std::size_t realizations) {
    if (dropped.empty()) return;
    fmt::print(stderr, "levy_spectra: dropped {} of {} realizations after pivot breakdown (first: {})\n",
               dropped.size(), realizations, dropped.front());
}

// Collects the first exception thrown inside a parallel region so it can be
// rethrown on the calling thread.
class ErrorSlot {
public:
    void capture(std::uint64_t realization) {
        std::lock_guard lock(mutex_);
        if (!error_) {
            error_ = std::current_exception();
            realization_ = realization;
        }
    }
    void rethrow() const {
        if (!error_) return;
        try {
            std::rethrow_exception(error_);
        } catch (const std::exception& e) {
            throw RealizationError(fmt::format("realization {}: {}", realization_, e.what()), realization_);
        }
    }

private:
    std::mutex mutex_;
    std::exception_ptr error_;
    std::uint64_t realization_ = 0;
};

// Fills out[0..windows) with counts for realization r; returns false (and -1s)
// when the factorization broke down after all retries.
bool count_realization(const ModelSpec& spec, const LatticeBox& box, std::span<const EnergyWindow> windows,
                       std::uint64_t seed, std::uint64_t r, const PivotPolicy& pivot, std::int64_t* out) {
    const auto omega = sample_disorder(spec, box, seed, r);
    const auto h = build_hamiltonian(spec, box, omega);
    try {
        for (std::size_t w = 0; w < windows.size(); ++w)
            out[w] = static_cast<std::int64_t>(count_in(h, windows[w], pivot));
        return true;
    } catch (const PivotBreakdown&) {
        std::fill(out, out + windows.size(), std::int64_t{-1});
        return false;
    }
}

void check_inputs(const ModelSpec& spec, const LatticeBox& box) {
    spec.validate();
    if (box.dim() != spec.dim)
        throw DimensionMismatch(fmt::format("box dim {} does not match model dim {}", box.dim(), spec.dim));
    (void)block_count(spec, box);  // throws TilingError
}

std::vector<std::uint64_t> collect_dropped(const std::vector<std::int64_t>& values, std::size_t stride) {
    std::vector<std::uint64_t> dropped;
    if (stride == 0) return dropped;
    for (std::size_t r = 0; r * stride < values.size(); ++r)
        if (values[r * stride] < 0) dropped.push_back(r);
    return dropped;
}

}  // namespace

EnergyWindow local_window(const LatticeBox& box, double center, double a, double b) {
    return {center, a, b, static_cast<double>(box.site_count())};
}

EnergyWindow local_window(const LatticeBox& box, double center, double length) {
    return local_window(box, center, -0.5 * length, 0.5 * length);
}

std::vector<std::int64_t> CountSamples::column(std::size_t w) const {
    std::vector<std::int64_t> col;
    col.reserve(realizations);
    for (std::size_t r = 0; r < realizations; ++r)
        if (at(r, w) >= 0) col.push_back(at(r, w));
    return col;
}

EmpiricalPMF CountSamples::pmf(std::size_t w) const {
    const auto col = column(w);
    return EmpiricalPMF::from_samples(col);
}

CountSamples sample_counts(const ModelSpec& spec, const LatticeBox& box, std::span<const EnergyWindow> windows,
                           std::size_t realizations, std::uint64_t seed, const RunOptions& options) {
    check_inputs(spec, box);
    CountSamples out;
    out.realizations = realizations;
    out.windows = windows.size();
    out.values.assign(realizations * windows.size(), 0);
    if (windows.empty()) return out;

    ErrorSlot errors;
    const auto n = static_cast<std::int64_t>(realizations);
#pragma omp parallel for schedule(dynamic, 8) num_threads(thread_count(options))
    for (std::int64_t r = 0; r < n; ++r) {
        try {
            count_realization(spec, box, windows, seed, static_cast<std::uint64_t>(r), options.pivot,
                              &out.values[static_cast<std::size_t>(r) * windows.size()]);
        } catch (...) {
            errors.capture(static_cast<std::uint64_t>(r));
        }
    }
    errors.rethrow();
    out.dropped = collect_dropped(out.values, out.windows);
    log_dropped(out.dropped, realizations);
    return out;
}

CountSamples sample_counts_serial(const ModelSpec& spec, const LatticeBox& box,
                                  std::span<const EnergyWindow> windows, std::size_t realizations,
                                  std::uint64_t seed, const PivotPolicy& pivot) {
    check_inputs(spec, box);
    CountSamples out;
    out.realizations = realizations;
    out.windows = windows.size();
    out.values.assign(realizations * windows.size(), 0);
    for (std::size_t r = 0; r < realizations; ++r) {
        const auto omega = sample_disorder(spec, box, seed, r);
        const auto h = build_hamiltonian(spec, box, omega);
        try {
            for (std::size_t w = 0; w < windows.size(); ++w)
                out.values[r * windows.size() + w] = static_cast<std::int64_t>(count_in(h, windows[w], pivot));
        } catch (const PivotBreakdown&) {
            for (std::size_t w = 0; w < windows.size(); ++w) out.values[r * windows.size() + w] = -1;
            out.dropped.push_back(r);
        }
    }
    return out;
}

EmpiricalPMF run_xi(const ModelSpec& spec, const LatticeBox& box, const EnergyWindow& window,
                    std::size_t realizations, std::uint64_t seed, const RunOptions& options) {
    if (window.scale() != static_cast<double>(box.site_count()))
        throw ConfigError(fmt::format("xi window scale must equal |Lambda| = {} (got {})", box.site_count(),
                                      window.scale()));
    const std::array<EnergyWindow, 1> windows{window};
    return sample_counts(spec, box, windows, realizations, seed, options).pmf(0);
}

// ---- block scheme ----------------------------------------------------------

BlockScheme BlockScheme::tile(const LatticeBox& box, int block_half_side) {
    if (block_half_side < 0) throw TilingError("block half side must be nonnegative");
    const int side = 2 * block_half_side + 1;
    if (box.side() % side != 0)
        throw TilingError(fmt::format("blocks of side {} do not tile a box of side {}", side, box.side()));
    BlockScheme scheme;
    scheme.block_half_side = block_half_side;
    scheme.dim = box.dim();
    const int per_axis = box.side() / side;
    std::size_t total = 1;
    for (int a = 0; a < box.dim(); ++a) total *= static_cast<std::size_t>(per_axis);
    for (std::size_t p = 0; p < total; ++p) {
        std::array<int, 3> origin{0, 0, 0}, center{0, 0, 0};
        std::size_t rem = p;
        for (int a = box.dim() - 1; a >= 0; --a) {
            origin[a] = static_cast<int>(rem % static_cast<std::size_t>(per_axis)) * side;
            rem /= static_cast<std::size_t>(per_axis);
            center[a] = origin[a] + block_half_side - box.half_side();
        }
        scheme.origins.push_back(origin);
        scheme.centers.push_back(center);
    }
    return scheme;
}

int default_block_half_side(int half_side, int side, double epsilon) {
    int ell = static_cast<int>(std::floor(std::pow(static_cast<double>(half_side), (1.0 - epsilon) / 2.0)));
    while (ell > 0 && side % (2 * ell + 1) != 0) --ell;
    if (ell == 0)
        throw TilingError(fmt::format("no block half side >= 1 tiles a box of side {} (L = {})", side, half_side));
    return ell;
}

int nearest_tileable_half_side(int half_side, int block_half_side) {
    const int side = 2 * block_half_side + 1;
    for (int d = 0;; ++d) {
        if (half_side - d >= 1 && (2 * (half_side - d) + 1) % side == 0) return half_side - d;
        if ((2 * (half_side + d) + 1) % side == 0) return half_side + d;
    }
}

namespace {

struct BlockGeometry {
    LatticeBox block_box;
    std::vector<std::vector<std::size_t>> sites;  // box site index per block site, per block
};

BlockGeometry block_geometry(const LatticeBox& box, const BlockScheme& scheme) {
    if (scheme.dim != box.dim()) throw DimensionMismatch("block scheme and box disagree on dimension");
    if (box.side() % scheme.block_side() != 0) throw TilingError("block scheme does not tile the box");
    BlockGeometry g{LatticeBox::with_side(box.dim(), scheme.block_side()), {}};
    g.sites.reserve(scheme.block_count());
    for (const auto& origin : scheme.origins) {
        std::vector<std::size_t> idx(g.block_box.site_count());
        for (std::size_t q = 0; q < idx.size(); ++q) {
            auto c = g.block_box.coord(q);
            for (int a = 0; a < box.dim(); ++a) c[a] += origin[a];
            idx[q] = box.index(c);
        }
        g.sites.push_back(std::move(idx));
    }
    return g;
}

// Writes eta_p into `eta` and returns xi; throws PivotBreakdown.
std::int64_t count_blocks(const ModelSpec& spec, const LatticeBox& box, const BlockGeometry& geometry,
                          const EnergyWindow& window, std::uint64_t seed, std::uint64_t r, const PivotPolicy& pivot,
                          std::vector<std::int64_t>& eta) {
    const auto omega = sample_disorder(spec, box, seed, r);
    const auto potential = site_potential(spec, box, omega);
    const auto h = assemble(box, spec.internal_dim(), spec.hopping, potential);
    const auto xi = static_cast<std::int64_t>(count_in(h, window, pivot));
    std::vector<double> local(geometry.block_box.site_count());
    eta.resize(geometry.sites.size());
    for (std::size_t p = 0; p < geometry.sites.size(); ++p) {
        for (std::size_t q = 0; q < local.size(); ++q) local[q] = potential[geometry.sites[p][q]];
        const auto hp = assemble(geometry.block_box, spec.internal_dim(), spec.hopping, local);
        eta[p] = static_cast<std::int64_t>(count_in(hp, window, pivot));
    }
    return xi;
}

void finish_block_run(BlockRun& run, std::size_t realizations) {
    for (std::size_t r = 0; r < realizations; ++r) {
        if (run.xi_samples[r] < 0) {
            run.dropped.push_back(r);
            continue;
        }
        run.xi.add(run.xi_samples[r]);
        run.zeta.add(run.zeta_samples[r]);
    }
}

}  // namespace

BlockRun run_eta_blocks(const ModelSpec& spec, const LatticeBox& box, const BlockScheme& scheme,
                        const EnergyWindow& window, std::size_t realizations, std::uint64_t seed,
                        const RunOptions& options) {
    check_inputs(spec, box);
    const auto geometry = block_geometry(box, scheme);
    BlockRun run;
    run.per_block.assign(scheme.block_count(), EmpiricalPMF{});
    run.xi_samples.assign(realizations, 0);
    run.zeta_samples.assign(realizations, 0);

    ErrorSlot errors;
    std::mutex merge_mutex;
    const auto n = static_cast<std::int64_t>(realizations);
#pragma omp parallel num_threads(thread_count(options))
    {
        // integer histograms merge exactly in any order
        std::vector<EmpiricalPMF> local(scheme.block_count());
        std::vector<std::int64_t> eta;
#pragma omp for schedule(dynamic, 8)
        for (std::int64_t r = 0; r < n; ++r) {
            const auto ri = static_cast<std::size_t>(r);
            try {
                run.xi_samples[ri] = count_blocks(spec, box, geometry, window, seed, ri, options.pivot, eta);
                std::int64_t zeta = 0;
                for (std::size_t p = 0; p < eta.size(); ++p) {
                    local[p].add(eta[p]);
                    zeta += eta[p];
                }
                run.zeta_samples[ri] = zeta;
            } catch (const PivotBreakdown&) {
                run.xi_samples[ri] = -1;
                run.zeta_samples[ri] = -1;
            } catch (...) {
                errors.capture(ri);
            }
        }
        std::lock_guard lock(merge_mutex);
        for (std::size_t p = 0; p < local.size(); ++p) run.per_block[p].merge(local[p]);
    }
    errors.rethrow();
    finish_block_run(run, realizations);
    log_dropped(run.dropped, realizations);
    return run;
}

BlockRun run_eta_blocks_serial(const ModelSpec& spec, const LatticeBox& box, const BlockScheme& scheme,
                               const EnergyWindow& window, std::size_t realizations, std::uint64_t seed,
                               const PivotPolicy& pivot) {
    check_inputs(spec, box);
    const auto geometry = block_geometry(box, scheme);
    BlockRun run;
    run.per_block.assign(scheme.block_count(), EmpiricalPMF{});
    run.xi_samples.assign(realizations, -1);
    run.zeta_samples.assign(realizations, -1);
    std::vector<std::int64_t> eta;
    for (std::size_t r = 0; r < realizations; ++r) {
        try {
            const auto xi = count_blocks(spec, box, geometry, window, seed, r, pivot, eta);
            run.xi_samples[r] = xi;
            run.zeta_samples[r] = 0;
            for (std::size_t p = 0; p < eta.size(); ++p) {
                run.per_block[p].add(eta[p]);
                run.zeta_samples[r] += eta[p];
            }
        } catch (const PivotBreakdown&) {
        }
    }
    finish_block_run(run, realizations);
    return run;
}

// ---- IDS / DOS -------------------------------------------------------------

std::vector<CurvePoint> estimate_ids(const ModelSpec& spec, const LatticeBox& box, std::span<const double> energy_grid,
                                     std::size_t realizations, std::uint64_t seed, const RunOptions& options) {
    check_inputs(spec, box);
    if (!std::is_sorted(energy_grid.begin(), energy_grid.end())) throw ConfigError("energy grid must be sorted");
    const std::size_t g = energy_grid.size();
    std::vector<std::int64_t> counts(realizations * g, 0);

    ErrorSlot errors;
    const auto n = static_cast<std::int64_t>(realizations);
#pragma omp parallel for schedule(dynamic, 8) num_threads(thread_count(options))
    for (std::int64_t r = 0; r < n; ++r) {
        const auto ri = static_cast<std::size_t>(r);
        try {
            const auto h = build_hamiltonian(spec, box, sample_disorder(spec, box, seed, ri));
            try {
                for (std::size_t k = 0; k < g; ++k)
                    counts[ri * g + k] = static_cast<std::int64_t>(count_leq(h, energy_grid[k], options.pivot));
            } catch (const PivotBreakdown&) {
                std::fill_n(&counts[ri * g], g, std::int64_t{-1});
            }
        } catch (...) {
            errors.capture(ri);
        }
    }
    errors.rethrow();
    const auto dropped = collect_dropped(counts, g);
    log_dropped(dropped, realizations);

    const auto sites = static_cast<double>(box.site_count());
    std::vector<CurvePoint> curve(g);
    for (std::size_t k = 0; k < g; ++k) {
        std::int64_t sum = 0;
        double sumsq = 0.0;
        std::size_t kept = 0;
        for (std::size_t r = 0; r < realizations; ++r) {
            const auto c = counts[r * g + k];
            if (c < 0) continue;
            sum += c;
            sumsq += static_cast<double>(c) * static_cast<double>(c);
            ++kept;
        }
        curve[k].energy = energy_grid[k];
        if (kept == 0) continue;
        const double mean = static_cast<double>(sum) / static_cast<double>(kept);
        const double var = kept > 1 ? std::max(0.0, (sumsq - mean * static_cast<double>(sum)) / (kept - 1)) : 0.0;
        curve[k].value = mean / sites;
        curve[k].std_error = std::sqrt(var / static_cast<double>(kept)) / sites;
    }
    return curve;
}

std::vector<CurvePoint> estimate_dos(std::span<const CurvePoint> ids, double bandwidth) {
    if (ids.size() < 2) throw ConfigError("DOS estimate needs at least two IDS points");
    double max_gap = 0.0;
    for (std::size_t k = 1; k < ids.size(); ++k) {
        if (ids[k].energy < ids[k - 1].energy) throw ConfigError("IDS curve must be sorted by energy");
        max_gap = std::max(max_gap, ids[k].energy - ids[k - 1].energy);
    }
    if (bandwidth < max_gap * (1.0 - 1e-12))
        throw BandwidthTooSmall(fmt::format("bandwidth {} is below the grid spacing {}", bandwidth, max_gap));

    auto interp = [&](double e) -> CurvePoint {
        if (e <= ids.front().energy) return ids.front();
        if (e >= ids.back().energy) return ids.back();
        const auto it = std::upper_bound(ids.begin(), ids.end(), e,
                                         [](double v, const CurvePoint& p) { return v < p.energy; });
        const auto& hi = *it;
        const auto& lo = *(it - 1);
        const double t = (e - lo.energy) / (hi.energy - lo.energy);
        return {e, lo.value + t * (hi.value - lo.value), lo.std_error + t * (hi.std_error - lo.std_error)};
    };

    std::vector<CurvePoint> dos;
    dos.reserve(ids.size());
    for (const auto& p : ids) {
        const auto up = interp(p.energy + bandwidth);
        const auto down = interp(p.energy - bandwidth);
        // endpoint errors are strongly correlated; this is a conservative bound
        dos.push_back({p.energy, (up.value - down.value) / (2.0 * bandwidth),
                       (up.std_error + down.std_error) / (2.0 * bandwidth)});
    }
    return dos;
}

// ---- scaling scans ---------------------------------------------------------

std::vector<const ScalingRow*> ScalingTable::for_half_side(int half_side) const {
    std::vector<const ScalingRow*> out;
    for (const auto& row : rows)
        if (row.half_side == half_side) out.push_back(&row);
    return out;
}

namespace {

template <class Statistic>
ScalingTable scan(const std::string& name, const ModelSpec& spec, std::span<const int> half_sides,
                  std::span<const double> lengths, double center, std::size_t realizations, std::uint64_t seed,
                  const RunOptions& options, Statistic&& statistic) {
    ScalingTable table{name, {}};
    for (const int half_side : half_sides) {
        const auto box = fit_box(spec, half_side);
        std::vector<EnergyWindow> windows;
        for (const double len : lengths) {
            if (len < 0.0) throw ConfigError(fmt::format("interval length must be nonnegative (got {})", len));
            windows.push_back(local_window(box, center, len));
        }
        const auto samples = sample_counts(spec, box, windows, realizations, seed, options);
        for (std::size_t w = 0; w < windows.size(); ++w) {
            ScalingRow row;
            row.half_side = half_side;
            row.sites = box.site_count();
            row.length = lengths[w];
            row.seed = seed;
            statistic(samples.column(w), row);
            table.rows.push_back(row);
        }
    }
    return table;
}

}  // namespace

ScalingTable wegner_scan(const ModelSpec& spec, std::span<const int> half_sides, std::span<const double> lengths,
                         double center, std::size_t realizations, std::uint64_t seed, const RunOptions& options) {
    return scan("mean_xi", spec, half_sides, lengths, center, realizations, seed, options,
                [](const std::vector<std::int64_t>& col, ScalingRow& row) {
                    const auto pmf = EmpiricalPMF::from_samples(col);
                    row.realizations = col.size();
                    row.value = pmf.mean();
                    row.std_error = col.empty() ? 0.0 : std::sqrt(pmf.variance() / static_cast<double>(col.size()));
                    row.ci_lo = row.value - 1.959963984540054 * row.std_error;
                    row.ci_hi = row.value + 1.959963984540054 * row.std_error;
                });
}

ScalingTable minami_scan(const ModelSpec& spec, std::span<const int> half_sides, std::span<const double> lengths,
                         double center, std::size_t realizations, std::uint64_t seed, const RunOptions& options) {
    const auto m = static_cast<std::int64_t>(spec.rank());
    return scan("prob_xi_gt_rank", spec, half_sides, lengths, center, realizations, seed, options,
                [m](const std::vector<std::int64_t>& col, ScalingRow& row) {
                    const auto n = static_cast<double>(col.size());
                    const auto hits = static_cast<double>(std::count_if(col.begin(), col.end(),
                                                                        [m](std::int64_t v) { return v > m; }));
                    row.realizations = col.size();
                    row.value = n > 0 ? hits / n : 0.0;
                    row.std_error = n > 0 ? std::sqrt(row.value * (1.0 - row.value) / n) : 0.0;
                    const auto ci = wilson_interval(hits, n);
                    row.ci_lo = ci.lo;
                    row.ci_hi = ci.hi;
                });
}

LinearFit wegner_slope(const ScalingTable& table, int half_side) {
    std::vector<double> x, y;
    for (const auto* row : table.for_half_side(half_side)) {
        x.push_back(row->length);
        y.push_back(row->value);
    }
    return linear_fit(x, y);
}

LinearFit minami_exponent(const ScalingTable& table, int half_side) {
    std::vector<double> x, y;
    for (const auto* row : table.for_half_side(half_side)) {
        x.push_back(row->length);
        y.push_back(row->value);
    }
    return loglog_fit(x, y);
}

}  // namespace levy_spectra
