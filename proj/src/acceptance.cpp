#include "levy_spectra/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <fmt/ranges.h>
#include <ostream>
#include <random>
#include <sstream>

#include "levy_spectra/campaign_io.hpp"
#include "levy_spectra/cli.hpp"
#include "levy_spectra/config.hpp"
#include "levy_spectra/engine.hpp"
#include "levy_spectra/levy.hpp"

namespace levy_spectra {

namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool passed = false;
    std::string detail;
};

RunOptions run_options(const AcceptanceOptions& o) {
    RunOptions opts;
    opts.workers = o.workers;
    return opts;
}

// Example 1: rank-2 projections, h = 0, U(0,1), E0 = 0.5, |I| = 1, L = 500.
Outcome criterion_1(const AcceptanceOptions& o) {
    const auto cfg = load_preset("example1");
    const auto box = fit_box(cfg.model, 500);
    const std::size_t realizations = 20000;
    const auto pmf = run_xi(cfg.model, box, local_window(box, 0.5, -0.5, 0.5), realizations, cfg.seed, run_options(o));
    const double drop_rate = 1.0 - static_cast<double>(pmf.realizations()) / static_cast<double>(realizations);
    double odd = 0.0;
    for (const auto& [j, c] : pmf.counts())
        if (j % 2 != 0) odd += pmf.probability(j);
    const double e1 = std::exp(-1.0);
    const double d0 = std::abs(pmf.probability(0) - e1);
    const double d2 = std::abs(pmf.probability(2) - e1);
    const double d4 = std::abs(pmf.probability(4) - e1 / 2.0);
    const double idx = poisson_index(pmf);
    const auto w = fit_weights(pmf, 2);
    const bool ok = box.site_count() == 1001 && odd == 0.0 && d0 <= 0.01 && d2 <= 0.01 && d4 <= 0.01 && idx >= 1.9 &&
                    idx <= 2.1 && w.weights[1] >= 0.95 && w.weights[1] <= 1.05 && w.weights[0] <= 0.02 &&
                    drop_rate < 1e-4;
    return {ok, fmt::format("P(odd) {}; |P(0)-1/e| {:.4f}, |P(2)-1/e| {:.4f}, |P(4)-1/2e| {:.4f} (<= 0.01); "
                            "var/mean {:.4f} in [1.9, 2.1]; p2 {:.4f} in [0.95, 1.05]; p1 {:.4f} <= 0.02; "
                            "drop rate {} < 1e-4",
                            odd, d0, d2, d4, idx, w.weights[1], w.weights[0], drop_rate)};
}

// Example 2: MatrixValued(3) counts are exactly 3x the rank-one counts on the
// same disorder draw; var/mean near 3.
Outcome criterion_2(const AcceptanceOptions& o) {
    const auto cfg = load_preset("example2");
    auto scalar = cfg.model;
    scalar.variant = Variant::RankOneSite;
    scalar.block_param = 1;
    const auto box = fit_box(cfg.model, 250);
    const std::vector<EnergyWindow> windows{local_window(box, 3.0, 1.0), local_window(box, 3.0, 8.0),
                                            local_window(box, 1.0, 4.0), local_window(box, 5.5, -3.0, 5.0)};
    const auto mv = sample_counts(cfg.model, box, windows, 200, cfg.seed, run_options(o));
    const auto r1 = sample_counts(scalar, box, windows, 200, cfg.seed, run_options(o));
    std::size_t mismatches = 0, nonzero = 0;
    for (std::size_t i = 0; i < mv.values.size(); ++i) {
        if (mv.values[i] != 3 * r1.values[i]) ++mismatches;
        if (r1.values[i] > 0) ++nonzero;
    }
    const auto pmf = run_xi(cfg.model, box, local_window(box, 3.0, 1.0), 20000, cfg.seed, run_options(o));
    const double idx = poisson_index(pmf);
    const bool ok = mismatches == 0 && box.site_count() == 501 && idx >= 2.8 && idx <= 3.2;
    return {ok, fmt::format("{} sites x 200 realizations x {} windows: {} mismatches ({} nonzero); "
                            "var/mean {:.4f} in [2.8, 3.2]",
                            box.site_count(), windows.size(), mismatches, nonzero, idx)};
}

// Rank-one Anderson model: Poisson limit.
Outcome criterion_3(const AcceptanceOptions& o) {
    const auto cfg = load_preset("rank1-poisson");
    std::string detail;
    bool ok = true;
    for (int L : {250, 1000}) {
        const auto box = fit_box(cfg.model, L);
        const auto pmf = run_xi(cfg.model, box, local_window(box, 2.5, 1.0), 20000, cfg.seed, run_options(o));
        const double idx = poisson_index(pmf);
        const double tv = poisson_tv_distance(pmf);
        const auto dropped = 20000 - pmf.realizations();
        detail += fmt::format("{} sites: var/mean {:.4f}, TV {:.4f}, dropped {}; ", box.site_count(), idx, tv, dropped);
        ok = ok && dropped == 0;
        if (L == 1000) ok = ok && idx >= 0.9 && idx <= 1.1 && tv <= 0.02;
    }
    detail += "bounds at 2001 sites: var/mean in [0.9, 1.1], TV <= 0.02, drop rate < 1e-4";
    return {ok, detail};
}

// Wegner: E[xi] linear in |I| with slope m * rho(E0) = 2.
Outcome criterion_4(const AcceptanceOptions& o) {
    const auto cfg = load_preset("example1");
    const std::vector<int> boxes{500};
    const std::vector<double> lengths{0.25, 0.5, 1.0, 2.0};
    const auto table = wegner_scan(cfg.model, boxes, lengths, 0.5, 20000, cfg.seed, run_options(o));
    const auto fit = wegner_slope(table, 500);
    const bool ok = std::abs(fit.slope - 2.0) <= 0.1 && fit.r_squared >= 0.99;
    return {ok, fmt::format("slope {:.4f} (2.0 +- 0.1), R^2 {:.5f} >= 0.99", fit.slope, fit.r_squared)};
}

// Minami: P{xi > m} against |I| on log-log axes, slope 2 +- 0.3.
Outcome criterion_5(const AcceptanceOptions& o) {
    const std::vector<double> lengths{0.5, 1.0, 2.0, 4.0};
    bool ok = true;
    std::string detail;
    const std::pair<const char*, int> cases[] = {{"example1", 500}, {"rank1-poisson", 1000}};
    for (const auto& [name, L] : cases) {
        const auto cfg = load_preset(name);
        const std::vector<int> boxes{L};
        const auto table = minami_scan(cfg.model, boxes, lengths, cfg.center, 50000, cfg.seed, run_options(o));
        const auto fit = minami_exponent(table, L);
        std::vector<std::string> values;
        for (const auto& r : table.rows) values.push_back(fmt::format("{:.4g}", r.value));
        const bool here = std::abs(fit.slope - 2.0) <= 0.3;
        ok = ok && here;
        detail += fmt::format("{} ({}): slope {:.3f} [{}] {}; ", name, to_string(cfg.model.variant), fit.slope,
                              fmt::join(values, ", "), here ? "ok" : "outside");
    }
    detail += "bound 2.0 +- 0.3";
    return {ok, detail};
}

struct VariantCase {
    Variant variant;
    int param;
    int dim;
};

// Random finite-rank perturbations move counts by at most the rank.
Outcome criterion_6(const AcceptanceOptions&) {
    const VariantCase cases[] = {
        {Variant::RankOneSite, 1, 1},  {Variant::RankOneSite, 1, 2},  {Variant::RankOneSite, 1, 3},
        {Variant::Dimer, 1, 1},        {Variant::PolymerBlock, 2, 1}, {Variant::PolymerBlock, 3, 1},
        {Variant::PolymerBlock, 2, 2}, {Variant::MatrixValued, 2, 1}, {Variant::MatrixValued, 3, 1},
        {Variant::MatrixValued, 2, 2}, {Variant::Diagonal, 2, 1},     {Variant::Diagonal, 3, 1},
    };
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int violations = 0, changed = 0;
    std::size_t max_order = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto& vc = cases[static_cast<std::size_t>(trial) % std::size(cases)];
        ModelSpec spec;
        spec.variant = vc.variant;
        spec.block_param = vc.param;
        spec.dim = vc.dim;
        spec.hopping = vc.variant == Variant::Diagonal ? 0.0 : 2.0 * u(rng);
        spec.disorder = DisorderLaw::uniform(0.0, 1.0 + 7.0 * u(rng));
        // largest box with order <= 400
        int max_half = 1;
        while (true) {
            const auto next = fit_box(spec, max_half + 1);
            if (next.site_count() * static_cast<std::size_t>(spec.internal_dim()) > 400) break;
            ++max_half;
        }
        const auto box = fit_box(spec, 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_half)));
        const auto sample = sample_disorder(spec, box, 6, static_cast<std::uint64_t>(trial));
        auto h = build_hamiltonian(spec, box, sample);
        max_order = std::max(max_order, h.order());
        const auto groups = projection_blocks(spec, box);
        const auto& group = groups[rng() % groups.size()];
        const double spread = 2.0 * spec.dim * spec.hopping;
        const double center = spec.disorder.support_min() - spread +
                              (spec.disorder.support_max() - spec.disorder.support_min() + 2.0 * spread) * u(rng);
        const EnergyWindow w(center, -3.0 * u(rng), 3.0 * u(rng), 1.0);
        const auto before = static_cast<long>(count_in(h, w));
        add_projection(h, group, 0.01 + 10.0 * u(rng));
        const auto after = static_cast<long>(count_in(h, w));
        if (std::abs(after - before) > spec.rank()) ++violations;
        if (after != before) ++changed;
    }
    return {violations == 0, fmt::format("1000 trials over {} variant/dimension cases, max order {}: {} violations "
                                         "of |change| <= m_k ({} trials changed the count)",
                                         std::size(cases), max_order, violations, changed)};
}

// Sylvester counts against dense eigenvalues.
Outcome criterion_7(const AcceptanceOptions&) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int mismatches = 0, windows = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 1 + rng() % 64;
        const std::size_t b = rng() % std::min<std::size_t>(n, 10);
        SymBandMatrix h(n, b);
        const bool degenerate = trial % 5 == 0;  // integer diagonal, repeated eigenvalues
        for (std::size_t i = 0; i < n; ++i) {
            h.set(i, i, degenerate ? static_cast<double>(rng() % 5) : 3.0 * u(rng));
            if (degenerate) continue;
            for (std::size_t j = i >= b ? i - b : 0; j < i; ++j) h.set(i, j, u(rng));
        }
        const auto ev = eigenvalues_dense(h);
        for (int k = 0; k < 3; ++k) {
            double left = 0.0, right = 0.0;
            if (degenerate) {
                left = std::floor(5.0 * (u(rng) + 1.0) / 2.0) - 0.5;
                right = left + static_cast<double>(1 + rng() % 3);
            } else {
                left = 4.0 * u(rng);
                right = left + 2.0 * (u(rng) + 1.0);
            }
            const double c = 0.5 * (left + right);
            const EnergyWindow w(c, left - c, right - c, 1.0);
            if (count_in(h, w) != count_sorted_in(ev, w.left(), w.right())) ++mismatches;
            ++windows;
        }
    }
    return {mismatches == 0, fmt::format("500 matrices of order <= 64, {} windows: {} mismatches", windows, mismatches)};
}

// Block decomposition on the rank-one model with ell = floor(L^0.45).
Outcome criterion_8(const AcceptanceOptions& o) {
    const auto cfg = load_preset("rank1-poisson");
    const std::size_t realizations = 1000000;
    std::vector<double> gaps, tails;
    std::string detail;
    for (int target : {50, 200, 800}) {
        const int ell = static_cast<int>(std::floor(std::pow(static_cast<double>(target), 0.45)));
        const int L = nearest_tileable_half_side(target, ell);
        const auto box = fit_box(cfg.model, L);
        const auto scheme = BlockScheme::tile(box, ell);
        const auto window = local_window(box, cfg.center, 1.0);
        const auto run = run_eta_blocks(cfg.model, box, scheme, window, realizations, cfg.seed, run_options(o));
        const double gap = std::abs(run.xi.mean() - run.zeta.mean());
        const double tail = block_sum_estimator(run.per_block, cfg.model.rank()).tail_mass;
        gaps.push_back(gap);
        tails.push_back(tail);
        detail += fmt::format("L={} (from {}) ell={} blocks={}: |E xi - E zeta| {:.5f}, tail {:.3g}; ", L, target, ell,
                              scheme.block_count(), gap, tail);
    }
    const bool gaps_ok = gaps[0] >= gaps[1] && gaps[1] >= gaps[2];
    const bool tails_ok = tails[0] > tails[1] && tails[1] > tails[2];
    detail += fmt::format("gap nonincreasing: {}, tail decreasing: {}", gaps_ok, tails_ok);
    return {gaps_ok && tails_ok, detail};
}

// Fit recovery on synthetic compound Poisson samples.
Outcome criterion_9(const AcceptanceOptions&) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (std::uint64_t trial = 0; trial < 20; ++trial) {
        LevyWeights w{std::vector<double>(4)};
        double total = 0.0;
        for (auto& v : w.weights) total += (v = u(rng));
        const double intensity = 0.2 + 2.8 * u(rng);
        for (auto& v : w.weights) v *= intensity / total;
        const auto law = panjer_pmf(w, panjer_support_for_tail(w));
        const auto fitted = fit_weights(sample_from_pmf(law, 1000000, 9, trial), 4);
        for (std::size_t j = 0; j < 4; ++j) worst = std::max(worst, std::abs(fitted.weights[j] - w.weights[j]));
    }
    return {worst <= 0.02, fmt::format("20 weight vectors on {{1..4}}, intensity <= 3, R = 10^6: max |error| {:.5f} "
                                       "<= 0.02",
                                       worst)};
}

// simulate artifacts are byte-identical for 1, 4 and 8 workers.
Outcome criterion_10(const AcceptanceOptions& o) {
    std::vector<std::vector<std::pair<std::string, std::string>>> runs;
    for (int workers : {1, 4, 8}) {
        auto cfg = load_preset("example1");
        cfg.workers = workers;
        cfg.out_dir = (fs::path(o.scratch_dir) / fmt::format("workers_{}", workers)).string();
        fs::remove_all(cfg.out_dir);
        std::ostringstream log;
        cmd_simulate(cfg, log);
        std::vector<std::pair<std::string, std::string>> files;
        for (const auto& entry : fs::directory_iterator(cfg.out_dir))
            files.emplace_back(entry.path().filename().string(), read_text(entry.path()));
        std::sort(files.begin(), files.end());
        runs.push_back(std::move(files));
    }
    const bool ok = !runs[0].empty() && runs[0] == runs[1] && runs[0] == runs[2];
    return {ok, fmt::format("{} files per run, identical across workers 1/4/8: {}", runs[0].size(), ok)};
}

struct Criterion {
    int id;
    const char* title;
    Outcome (*run)(const AcceptanceOptions&);
};

constexpr Criterion kCriteria[] = {
    {1, "Example 1 compound Poisson limit", criterion_1},
    {2, "Example 2 multiplicity 3", criterion_2},
    {3, "rank-one Poisson limit", criterion_3},
    {4, "Wegner linear scaling", criterion_4},
    {5, "Minami quadratic scaling", criterion_5},
    {6, "finite-rank perturbation bound", criterion_6},
    {7, "inertia counts vs dense eigenvalues", criterion_7},
    {8, "block decomposition convergence", criterion_8},
    {9, "Levy weight fit recovery", criterion_9},
    {10, "determinism across worker counts", criterion_10},
};

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options,
                                            const std::function<void(const CriterionResult&)>& on_result) {
    std::vector<CriterionResult> results;
    for (const auto& c : kCriteria) {
        if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), c.id) == options.only.end())
            continue;
        CriterionResult r;
        r.id = c.id;
        r.title = c.title;
        const auto start = std::chrono::steady_clock::now();
        try {
            const auto outcome = c.run(options);
            r.passed = outcome.passed;
            r.detail = outcome.detail;
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = fmt::format("exception: {}", e.what());
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (on_result) on_result(r);
        results.push_back(std::move(r));
    }
    return results;
}

int run_acceptance_suite(const AcceptanceOptions& options, std::ostream& out) {
    const auto results = run_acceptance(options, [&](const CriterionResult& r) {
        fmt::print(out, "[{}] criterion {}: {} | {} ({:.1f} s)\n", r.passed ? "PASS" : "FAIL", r.id, r.title, r.detail,
                   r.seconds);
        out.flush();
    });
    const auto passed = std::count_if(results.begin(), results.end(), [](const CriterionResult& r) { return r.passed; });
    fmt::print(out, "{}/{} criteria passed\n", passed, results.size());
    return static_cast<std::size_t>(passed) == results.size() ? kExitOk : kExitFailure;
}

}  // namespace levy_spectra
