#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "levy_spectra/error.hpp"
#include "levy_spectra/lattice.hpp"
#include "levy_spectra/spectral.hpp"
#include "oracles.hpp"

using namespace levy_spectra;

namespace {

SymBandMatrix diagonal(std::vector<double> d) {
    SymBandMatrix h(d.size(), 0);
    for (std::size_t i = 0; i < d.size(); ++i) h.set(i, i, d[i]);
    return h;
}

}  // namespace

TEST_CASE("ldl_inertia on diagonal matrices") {
    const auto h = diagonal({1, 2, 3});
    CHECK(ldl_inertia(h, 2.5) == Inertia{2, 0, 1});
    CHECK(ldl_inertia(h, 0.0) == Inertia{0, 0, 3});
    CHECK(ldl_inertia(h, 10.0).order() == 3u);
}

TEST_CASE("pivot breakdown and retry") {
    SymBandMatrix h(2, 1);
    h.set(1, 0, 1.0);  // [[0, 1], [1, 0]], eigenvalues -1, 1
    CHECK_THROWS_AS(ldl_inertia(h, 0.0), PivotBreakdown);
    int retries = 0;
    CHECK(count_leq(h, 0.0, {}, &retries) == 1u);
    CHECK(retries == 1);
    // a policy without retries propagates the breakdown
    PivotPolicy strict;
    strict.max_retries = 0;
    CHECK_THROWS_AS(count_leq(h, 0.0, strict), PivotBreakdown);
}

TEST_CASE("eigenvalues_dense examples") {
    auto ev = eigenvalues_dense(diagonal({3, 1, 2}));
    CHECK(ev == std::vector<double>{1, 2, 3});

    SymBandMatrix swap(2, 1);
    swap.set(1, 0, 1.0);
    ev = eigenvalues_dense(swap);
    CHECK(ev[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(ev[1] == doctest::Approx(1.0).epsilon(1e-14));

    CHECK_THROWS_AS(eigenvalues_dense(SymBandMatrix(10, 1), 8), OrderTooLarge);
    CHECK(eigenvalues_dense(SymBandMatrix(0, 0)).empty());
}

TEST_CASE("eigenvalues_dense: trace identity on a random 50x50 matrix") {
    std::mt19937_64 rng(42);
    const auto h = oracle::random_band(50, 49, rng);
    const auto ev = eigenvalues_dense(h);
    double trace = 0.0, sum = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < 50; ++i) {
        trace += h(i, i);
        scale += std::abs(h(i, i));
    }
    for (double v : ev) sum += v;
    CHECK(std::abs(sum - trace) <= 1e-9 * std::max(1.0, scale));
    CHECK(std::is_sorted(ev.begin(), ev.end()));
}

TEST_CASE("eigenvalues_dense agrees with an independent Jacobi solver") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 1 + rng() % 30;
        const auto h = oracle::random_band(n, rng() % n, rng);
        const auto ev = eigenvalues_dense(h);
        const auto ref = oracle::jacobi_eigenvalues(h.to_dense(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(ev[i] == doctest::Approx(ref[i]).epsilon(1e-10).scale(1.0));
    }
}

TEST_CASE("count_in examples") {
    SUBCASE("all eigenvalues inside") {
        const auto h = diagonal({0.3, 0.3, 0.7, 0.7});
        CHECK(count_in(h, EnergyWindow(0.5, -0.5, 0.5, 1.0)) == 4u);
    }
    SUBCASE("3-site laplacian has spectrum {-sqrt2, 0, sqrt2}") {
        SymBandMatrix h(3, 1);
        h.set(1, 0, 1.0);
        h.set(2, 1, 1.0);
        const auto ev = eigenvalues_dense(h);
        CHECK(ev[0] == doctest::Approx(-std::sqrt(2.0)));
        CHECK(std::abs(ev[1]) < 1e-14);
        CHECK(ev[2] == doctest::Approx(std::sqrt(2.0)));
        CHECK(count_in(h, EnergyWindow(0.0, -1.0, 1.0, 1.0)) == 1u);
    }
    SUBCASE("zero width or beyond the spectrum") {
        const auto h = diagonal({1, 2, 3});
        CHECK(count_in(h, EnergyWindow(2.0, 0.0, 0.0, 1.0)) == 0u);
        CHECK(count_in(h, EnergyWindow(10.0, -1.0, 1.0, 1.0)) == 0u);
    }
    SUBCASE("half-open window") {
        const auto h = diagonal({1, 2, 3});
        CHECK(count_in(h, EnergyWindow(1.5, -0.5, 0.5, 1.0)) == 1u);  // (1, 2] holds only 2
    }
    CHECK_THROWS_AS(EnergyWindow(0.0, 1.0, -1.0, 1.0), ConfigError);
    CHECK_THROWS_AS(EnergyWindow(0.0, -1.0, 1.0, 0.0), ConfigError);
}

TEST_CASE("inertia counts match dense eigenvalues on 500 random band matrices") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> energy(-3.0, 3.0);
    int mismatches = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 1 + rng() % 64;
        const std::size_t b = rng() % std::min<std::size_t>(n, 8);
        const auto h = oracle::random_band(n, b, rng);
        const auto ev = eigenvalues_dense(h);
        const double e = energy(rng);
        const auto in = ldl_inertia(h, e);
        const auto expected = static_cast<std::size_t>(std::lower_bound(ev.begin(), ev.end(), e) - ev.begin());
        if (in.n_neg != expected) ++mismatches;
        CHECK(in.order() == n);
    }
    CHECK(mismatches == 0);
}

TEST_CASE("counting function is monotone and reaches the order") {
    std::mt19937_64 rng(5);
    const auto h = oracle::random_band(60, 4, rng);
    std::size_t previous = 0;
    for (double e = -12.0; e <= 12.0; e += 0.01) {
        const auto n = count_leq(h, e);
        CHECK(n >= previous);
        previous = n;
    }
    CHECK(previous == 60u);
}

TEST_CASE("shift covariance of count_in") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        auto h = oracle::random_band(40, 3, rng);
        const EnergyWindow w(u(rng), -1.0, 1.0 + u(rng) + 2.0, 2.0);
        const auto base = count_in(h, w);
        // dyadic shifts keep the arithmetic exact
        const double c = std::ldexp(std::floor(u(rng) * 8.0), -3);
        h.shift_diagonal(c);
        CHECK(count_in(h, w.shifted(c)) == base);
    }
}

TEST_CASE("rank-perturbation bound on random model instances") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const std::vector<std::pair<Variant, int>> variants{
        {Variant::RankOneSite, 1}, {Variant::Dimer, 1}, {Variant::MatrixValued, 3}, {Variant::PolymerBlock, 2}};
    for (int trial = 0; trial < 100; ++trial) {
        const auto [variant, param] = variants[static_cast<std::size_t>(trial) % variants.size()];
        ModelSpec spec;
        spec.variant = variant;
        spec.block_param = param;
        spec.dim = variant == Variant::PolymerBlock ? 2 : 1;
        spec.hopping = u(rng);
        spec.disorder = DisorderLaw::uniform(0.0, 4.0);
        const auto box = fit_box(spec, 1 + static_cast<int>(rng() % 6));
        auto h = build_hamiltonian(spec, box, sample_disorder(spec, box, 123, static_cast<std::uint64_t>(trial)));
        const auto groups = projection_blocks(spec, box);
        const auto& group = groups[rng() % groups.size()];
        const EnergyWindow w(4.0 * u(rng), -u(rng) * 3.0, u(rng) * 3.0, 1.0);
        const auto before = static_cast<long>(count_in(h, w));
        add_projection(h, group, 0.01 + 5.0 * u(rng));
        const auto after = static_cast<long>(count_in(h, w));
        CHECK(std::abs(after - before) <= spec.rank());
    }
}
