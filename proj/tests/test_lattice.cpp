#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "levy_spectra/error.hpp"
#include "levy_spectra/lattice.hpp"
#include "levy_spectra/spectral.hpp"

using namespace levy_spectra;

namespace {

ModelSpec make_spec(Variant v, int param, double hopping, int dim = 1) {
    ModelSpec s;
    s.dim = dim;
    s.variant = v;
    s.block_param = param;
    s.hopping = hopping;
    s.disorder = DisorderLaw::uniform(0.0, 1.0);
    return s;
}

DisorderSample omega_of(std::vector<double> v) {
    DisorderSample s;
    s.values = std::move(v);
    return s;
}

}  // namespace

TEST_CASE("box enumeration is a bijection onto the centered cube") {
    for (int dim = 1; dim <= 3; ++dim) {
        const auto box = LatticeBox::cube(dim, 2);
        CHECK(box.site_count() == static_cast<std::size_t>(std::pow(5, dim)));
        for (std::size_t s = 0; s < box.site_count(); ++s) {
            CHECK(box.index(box.coord(s)) == s);
            const auto c = box.centered_coord(s);
            for (int a = 0; a < dim; ++a) CHECK(std::abs(c[a]) <= 2);
        }
        // first site is the corner (-L, ..., -L), last axis runs fastest
        CHECK(box.centered_coord(0)[0] == -2);
        CHECK(box.coord(1)[dim - 1] == 1);
    }
    CHECK_THROWS_AS(LatticeBox::cube(4, 1), ConfigError);
    CHECK_THROWS_AS(LatticeBox::cube(1, 0), ConfigError);
}

TEST_CASE("model rank per variant") {
    CHECK(make_spec(Variant::RankOneSite, 1, 1.0).rank() == 1);
    CHECK(make_spec(Variant::Dimer, 1, 1.0).rank() == 2);
    CHECK(make_spec(Variant::PolymerBlock, 3, 1.0, 2).rank() == 9);
    CHECK(make_spec(Variant::MatrixValued, 4, 1.0).rank() == 4);
    CHECK(make_spec(Variant::Diagonal, 2, 0.0).rank() == 2);
}

TEST_CASE("model validation") {
    CHECK_THROWS_AS(make_spec(Variant::Dimer, 1, 1.0, 2).validate(), ConfigError);
    CHECK_THROWS_AS(make_spec(Variant::Diagonal, 2, 1.0).validate(), ConfigError);
    CHECK_THROWS_AS(make_spec(Variant::MatrixValued, 0, 1.0).validate(), ConfigError);
    CHECK_THROWS_AS(make_spec(Variant::RankOneSite, 1, -1.0).validate(), ConfigError);
    CHECK_THROWS_AS(variant_from_string("trimer"), ConfigError);
    CHECK(variant_from_string("polymer_block") == Variant::PolymerBlock);
}

TEST_CASE("projection_blocks examples") {
    SUBCASE("dimer pairs on a padded box") {
        const auto spec = make_spec(Variant::Dimer, 1, 1.0);
        const auto box = fit_box(spec, 1);
        CHECK(box.side() == 4);
        const auto groups = projection_blocks(spec, box);
        CHECK(groups == std::vector<IndexGroup>{{0, 1}, {2, 3}});
    }
    SUBCASE("rank one") {
        const auto groups = projection_blocks(make_spec(Variant::RankOneSite, 1, 1.0), LatticeBox::cube(1, 1));
        CHECK(groups == std::vector<IndexGroup>{{0}, {1}, {2}});
    }
    SUBCASE("matrix valued, site-major") {
        const auto groups = projection_blocks(make_spec(Variant::MatrixValued, 2, 1.0), LatticeBox::cube(1, 1));
        CHECK(groups == std::vector<IndexGroup>{{0, 1}, {2, 3}, {4, 5}});
    }
    SUBCASE("2d polymer blocks tile the box") {
        const auto spec = make_spec(Variant::PolymerBlock, 2, 1.0, 2);
        const auto box = LatticeBox::with_side(2, 4);
        const auto groups = projection_blocks(spec, box);
        REQUIRE(groups.size() == 4);
        CHECK(groups[0] == IndexGroup{0, 1, 4, 5});
        CHECK(groups[3] == IndexGroup{10, 11, 14, 15});
        std::vector<std::size_t> all;
        for (const auto& g : groups) {
            CHECK(g.size() == 4u);
            all.insert(all.end(), g.begin(), g.end());
        }
        std::sort(all.begin(), all.end());
        std::vector<std::size_t> expected(16);
        std::iota(expected.begin(), expected.end(), 0u);
        CHECK(all == expected);
    }
    SUBCASE("tiling failure") {
        CHECK_THROWS_AS(projection_blocks(make_spec(Variant::Dimer, 1, 1.0), LatticeBox::cube(1, 1)), TilingError);
        CHECK_THROWS_AS(projection_blocks(make_spec(Variant::PolymerBlock, 2, 1.0, 2), LatticeBox::cube(2, 2)),
                        TilingError);
    }
}

TEST_CASE("fit_box rounds the side up to a multiple of the block side") {
    CHECK(fit_box(make_spec(Variant::PolymerBlock, 3, 1.0, 2), 2).side() == 6);
    CHECK(fit_box(make_spec(Variant::PolymerBlock, 3, 1.0, 2), 4).side() == 9);
    CHECK(fit_box(make_spec(Variant::RankOneSite, 1, 1.0), 7).side() == 15);
}

TEST_CASE("sample_disorder") {
    const auto spec = make_spec(Variant::RankOneSite, 1, 1.0);
    const auto box = LatticeBox::cube(1, 25000);
    const auto a = sample_disorder(spec, box, 7, 0);
    const auto b = sample_disorder(spec, box, 7, 1);
    CHECK(a.values.size() == box.site_count());

    SUBCASE("support") {
        for (double v : a.values) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
    }
    SUBCASE("determinism and independence of realizations") {
        CHECK(sample_disorder(spec, box, 7, 0).values == a.values);
        CHECK(a.values != b.values);
        CHECK(sample_disorder(spec, box, 8, 0).values != a.values);
    }
    SUBCASE("law of large numbers over 1e5 draws") {
        double sum = 0.0;
        for (double v : a.values) sum += v;
        for (double v : b.values) sum += v;
        CHECK(std::abs(sum / static_cast<double>(a.values.size() + b.values.size()) - 0.5) < 0.005);
    }
    SUBCASE("block value depends only on its own counter") {
        const auto small = sample_disorder(spec, LatticeBox::cube(1, 3), 7, 0);
        for (std::size_t g = 0; g < small.values.size(); ++g) CHECK(small.values[g] == a.values[g]);
    }
    SUBCASE("one value per block") {
        CHECK(sample_disorder(make_spec(Variant::Dimer, 1, 1.0), LatticeBox::with_side(1, 10), 1, 0).values.size() ==
              5u);
        CHECK(sample_disorder(make_spec(Variant::MatrixValued, 3, 1.0), LatticeBox::cube(1, 2), 1, 0).values.size() ==
              5u);
    }
}

TEST_CASE("piecewise-linear disorder law") {
    // triangular density on [0, 2] peaked at 1
    const auto law = DisorderLaw::piecewise_linear({0.0, 1.0, 2.0}, {0.0, 5.0, 0.0});
    CHECK(law.density(1.0) == doctest::Approx(1.0));
    CHECK(law.density(0.5) == doctest::Approx(0.5));
    CHECK(law.density(-0.1) == 0.0);
    CHECK(law.density(2.5) == 0.0);
    CHECK(law.cdf(1.0) == doctest::Approx(0.5));
    CHECK(law.cdf(0.5) == doctest::Approx(0.125));
    CHECK(law.mean() == doctest::Approx(1.0));
    for (double u : {0.0, 0.01, 0.125, 0.3, 0.5, 0.77, 0.999}) CHECK(law.cdf(law.quantile(u)) == doctest::Approx(u));

    // quadrature check that the density integrates to 1
    double area = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) area += law.density((i + 0.5) * 2.0 / n) * 2.0 / n;
    CHECK(area == doctest::Approx(1.0).epsilon(1e-6));

    CHECK_THROWS_AS(DisorderLaw::piecewise_linear({0.0, 0.0}, {1.0, 1.0}), ConfigError);
    CHECK_THROWS_AS(DisorderLaw::piecewise_linear({0.0, 1.0}, {-1.0, 1.0}), ConfigError);
    CHECK_THROWS_AS(DisorderLaw::uniform(1.0, 1.0), ConfigError);
}

TEST_CASE("build_hamiltonian examples") {
    SUBCASE("diagonal model, h = 0") {
        const auto spec = make_spec(Variant::Diagonal, 2, 0.0);
        const auto h = build_hamiltonian(spec, LatticeBox::with_side(1, 2), omega_of({0.3, 0.7}));
        CHECK(h.order() == 4u);
        CHECK(h.bandwidth() == 0u);
        const std::vector<double> expected{0.3, 0, 0, 0, 0, 0.3, 0, 0, 0, 0, 0.7, 0, 0, 0, 0, 0.7};
        CHECK(h.to_dense() == expected);
    }
    SUBCASE("pure laplacian") {
        const auto h = build_hamiltonian(make_spec(Variant::RankOneSite, 1, 1.0), LatticeBox::cube(1, 1),
                                         omega_of({0, 0, 0}));
        const std::vector<double> expected{0, 1, 0, 1, 0, 1, 0, 1, 0};
        CHECK(h.to_dense() == expected);
    }
    SUBCASE("spectrum of laplacian plus potential (1,2,3) is {2-sqrt3, 2, 2+sqrt3}") {
        const auto h = build_hamiltonian(make_spec(Variant::RankOneSite, 1, 1.0), LatticeBox::cube(1, 1),
                                         omega_of({1, 2, 3}));
        const auto ev = eigenvalues_dense(h);
        CHECK(ev[0] == doctest::Approx(2.0 - std::sqrt(3.0)).epsilon(1e-12));
        CHECK(ev[1] == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(ev[2] == doctest::Approx(2.0 + std::sqrt(3.0)).epsilon(1e-12));
    }
    SUBCASE("wrong disorder length") {
        CHECK_THROWS_AS(build_hamiltonian(make_spec(Variant::RankOneSite, 1, 1.0), LatticeBox::cube(1, 1),
                                          omega_of({1, 2})),
                        DimensionMismatch);
    }
    SUBCASE("2d adjacency has four neighbours in the bulk") {
        const auto box = LatticeBox::cube(2, 1);
        const auto h = build_hamiltonian(make_spec(Variant::RankOneSite, 1, 1.0, 2), box,
                                         omega_of(std::vector<double>(9, 0.0)));
        const auto dense = h.to_dense();
        double row_sum = 0.0;
        for (std::size_t j = 0; j < 9; ++j) row_sum += dense[4 * 9 + j];
        CHECK(row_sum == 4.0);
        CHECK(dense[0 * 9 + 8] == 0.0);
    }
}

TEST_CASE("bandwidth bounds") {
    for (auto [variant, param, dim] : std::vector<std::tuple<Variant, int, int>>{{Variant::RankOneSite, 1, 1},
                                                                                   {Variant::Dimer, 1, 1},
                                                                                   {Variant::MatrixValued, 3, 1},
                                                                                   {Variant::PolymerBlock, 2, 2},
                                                                                   {Variant::RankOneSite, 1, 2}}) {
        const auto spec = make_spec(variant, param, 1.0, dim);
        const auto box = fit_box(spec, 3);
        const auto h = build_hamiltonian(spec, box, sample_disorder(spec, box, 1, 0));
        if (dim == 1)
            CHECK(h.bandwidth() <= static_cast<std::size_t>(spec.rank() + 1));
        else
            CHECK(h.bandwidth() <= static_cast<std::size_t>(spec.rank() * box.side()));
    }
}

TEST_CASE("symmetry of assembled operators") {
    const auto spec = make_spec(Variant::PolymerBlock, 2, 0.7, 2);
    const auto box = fit_box(spec, 3);
    const auto h = build_hamiltonian(spec, box, sample_disorder(spec, box, 3, 4));
    const auto d = h.to_dense();
    const auto n = h.order();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) CHECK(d[i * n + j] == d[j * n + i]);
}

TEST_CASE("h = 0: spectrum is the disorder values with multiplicity m_k") {
    for (const auto& spec : {make_spec(Variant::Diagonal, 3, 0.0), make_spec(Variant::Dimer, 1, 0.0),
                             make_spec(Variant::PolymerBlock, 2, 0.0, 2), make_spec(Variant::MatrixValued, 2, 0.0)}) {
        const auto box = fit_box(spec, 2);
        const auto omega = sample_disorder(spec, box, 11, 2);
        const auto ev = eigenvalues_dense(build_hamiltonian(spec, box, omega));
        std::vector<double> expected;
        for (double v : omega.values) expected.insert(expected.end(), static_cast<std::size_t>(spec.rank()), v);
        std::sort(expected.begin(), expected.end());
        REQUIRE(ev.size() == expected.size());
        for (std::size_t i = 0; i < ev.size(); ++i) CHECK(ev[i] == doctest::Approx(expected[i]).epsilon(1e-12));
    }
}

TEST_CASE("matrix-valued spectrum is the rank-one spectrum repeated m times") {
    const auto rank_one = make_spec(Variant::RankOneSite, 1, 1.0);
    const auto matrix3 = make_spec(Variant::MatrixValued, 3, 1.0);
    const auto box = LatticeBox::cube(1, 6);
    for (std::uint64_t r = 0; r < 5; ++r) {
        const auto omega = sample_disorder(rank_one, box, 5, r);
        CHECK(sample_disorder(matrix3, box, 5, r).values == omega.values);
        const auto ev1 = eigenvalues_dense(build_hamiltonian(rank_one, box, omega));
        const auto ev3 = eigenvalues_dense(build_hamiltonian(matrix3, box, omega));
        REQUIRE(ev3.size() == 3 * ev1.size());
        for (std::size_t i = 0; i < ev3.size(); ++i) CHECK(ev3[i] == doctest::Approx(ev1[i / 3]).epsilon(1e-10));
    }
}
