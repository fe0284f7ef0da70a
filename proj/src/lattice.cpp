#include "levy_spectra/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "levy_spectra/error.hpp"
#include "levy_spectra/philox.hpp"

namespace levy_spectra {

namespace {

std::size_t ipow(std::size_t base, int exp) {
    std::size_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

}  // namespace

// ---- LatticeBox ------------------------------------------------------------

LatticeBox::LatticeBox(int dim, int side)
    : dim_(dim), side_(side), site_count_(ipow(static_cast<std::size_t>(side), dim)) {}

LatticeBox LatticeBox::cube(int dim, int half_side) {
    if (dim < 1 || dim > 3) throw ConfigError(fmt::format("dim must be 1, 2 or 3 (got {})", dim));
    if (half_side < 1) throw ConfigError(fmt::format("half_side must be positive (got {})", half_side));
    return LatticeBox(dim, 2 * half_side + 1);
}

LatticeBox LatticeBox::with_side(int dim, int side) {
    if (dim < 1 || dim > 3) throw ConfigError(fmt::format("dim must be 1, 2 or 3 (got {})", dim));
    if (side < 1) throw ConfigError(fmt::format("box side must be positive (got {})", side));
    return LatticeBox(dim, side);
}

std::size_t LatticeBox::index(const std::array<int, 3>& coord) const noexcept {
    std::size_t idx = 0;
    for (int a = 0; a < dim_; ++a) idx = idx * static_cast<std::size_t>(side_) + static_cast<std::size_t>(coord[a]);
    return idx;
}

std::array<int, 3> LatticeBox::coord(std::size_t index) const noexcept {
    std::array<int, 3> c{0, 0, 0};
    for (int a = dim_ - 1; a >= 0; --a) {
        c[a] = static_cast<int>(index % static_cast<std::size_t>(side_));
        index /= static_cast<std::size_t>(side_);
    }
    return c;
}

std::array<int, 3> LatticeBox::centered_coord(std::size_t index) const noexcept {
    auto c = coord(index);
    for (int a = 0; a < dim_; ++a) c[a] -= half_side();
    return c;
}

// ---- DisorderLaw -----------------------------------------------------------

DisorderLaw::DisorderLaw(std::variant<UniformLaw, PiecewiseLinearLaw> law) : law_(std::move(law)) {}

DisorderLaw DisorderLaw::uniform(double a, double b) {
    if (!(std::isfinite(a) && std::isfinite(b) && a < b))
        throw ConfigError(fmt::format("uniform disorder needs finite a < b (got a={}, b={})", a, b));
    return DisorderLaw(UniformLaw{a, b});
}

DisorderLaw DisorderLaw::piecewise_linear(std::vector<double> x, std::vector<double> y) {
    if (x.size() < 2 || x.size() != y.size())
        throw ConfigError("piecewise-linear disorder needs at least two knots and matching x/y lengths");
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i]) || !std::isfinite(y[i]) || y[i] < 0.0)
            throw ConfigError("piecewise-linear disorder knots must be finite with nonnegative density");
        if (i > 0 && !(x[i] > x[i - 1]))
            throw ConfigError("piecewise-linear disorder knots must be strictly increasing");
    }
    double area = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) area += 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
    if (!(area > 0.0)) throw ConfigError("piecewise-linear disorder density has zero mass");
    for (auto& v : y) v /= area;

    DisorderLaw law(PiecewiseLinearLaw{std::move(x), std::move(y)});
    const auto& pl = std::get<PiecewiseLinearLaw>(law.law_);
    law.cumulative_.assign(pl.x.size(), 0.0);
    for (std::size_t i = 1; i < pl.x.size(); ++i)
        law.cumulative_[i] = law.cumulative_[i - 1] + 0.5 * (pl.y[i] + pl.y[i - 1]) * (pl.x[i] - pl.x[i - 1]);
    return law;
}

double DisorderLaw::density(double e) const noexcept {
    if (const auto* u = std::get_if<UniformLaw>(&law_)) return (e >= u->a && e <= u->b) ? 1.0 / (u->b - u->a) : 0.0;
    const auto& pl = std::get<PiecewiseLinearLaw>(law_);
    if (e < pl.x.front() || e > pl.x.back()) return 0.0;
    const auto it = std::upper_bound(pl.x.begin(), pl.x.end(), e);
    const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(it - pl.x.begin()), pl.x.size() - 1);
    const double t = (e - pl.x[i - 1]) / (pl.x[i] - pl.x[i - 1]);
    return pl.y[i - 1] + t * (pl.y[i] - pl.y[i - 1]);
}

double DisorderLaw::cdf(double e) const noexcept {
    if (const auto* u = std::get_if<UniformLaw>(&law_)) return std::clamp((e - u->a) / (u->b - u->a), 0.0, 1.0);
    const auto& pl = std::get<PiecewiseLinearLaw>(law_);
    if (e <= pl.x.front()) return 0.0;
    if (e >= pl.x.back()) return 1.0;
    const auto it = std::upper_bound(pl.x.begin(), pl.x.end(), e);
    const std::size_t i = static_cast<std::size_t>(it - pl.x.begin());
    const double t = e - pl.x[i - 1];
    const double slope = (pl.y[i] - pl.y[i - 1]) / (pl.x[i] - pl.x[i - 1]);
    return cumulative_[i - 1] + pl.y[i - 1] * t + 0.5 * slope * t * t;
}

double DisorderLaw::quantile(double u) const noexcept {
    if (const auto* uni = std::get_if<UniformLaw>(&law_)) return uni->a + (uni->b - uni->a) * u;
    const auto& pl = std::get<PiecewiseLinearLaw>(law_);
    // first segment whose upper cumulative value exceeds u
    std::size_t i = 1;
    while (i + 1 < pl.x.size() && cumulative_[i] <= u) ++i;
    const double width = pl.x[i] - pl.x[i - 1];
    const double y0 = pl.y[i - 1];
    const double slope = (pl.y[i] - y0) / width;
    const double rem = std::max(0.0, u - cumulative_[i - 1]);
    // root of y0 t + slope t^2 / 2 = rem, written to avoid cancellation
    const double disc = std::sqrt(std::max(0.0, y0 * y0 + 2.0 * slope * rem));
    const double denom = y0 + disc;
    const double t = denom > 0.0 ? 2.0 * rem / denom : 0.0;
    return pl.x[i - 1] + std::clamp(t, 0.0, width);
}

double DisorderLaw::support_min() const noexcept {
    if (const auto* u = std::get_if<UniformLaw>(&law_)) return u->a;
    return std::get<PiecewiseLinearLaw>(law_).x.front();
}

double DisorderLaw::support_max() const noexcept {
    if (const auto* u = std::get_if<UniformLaw>(&law_)) return u->b;
    return std::get<PiecewiseLinearLaw>(law_).x.back();
}

double DisorderLaw::mean() const noexcept {
    if (const auto* u = std::get_if<UniformLaw>(&law_)) return 0.5 * (u->a + u->b);
    const auto& pl = std::get<PiecewiseLinearLaw>(law_);
    double m = 0.0;
    for (std::size_t i = 1; i < pl.x.size(); ++i) {
        // Simpson is exact for the quadratic x * density(x)
        const double h = pl.x[i] - pl.x[i - 1];
        const double xm = 0.5 * (pl.x[i] + pl.x[i - 1]);
        const double ym = 0.5 * (pl.y[i] + pl.y[i - 1]);
        m += h / 6.0 * (pl.x[i - 1] * pl.y[i - 1] + 4.0 * xm * ym + pl.x[i] * pl.y[i]);
    }
    return m;
}

// ---- ModelSpec -------------------------------------------------------------

std::string to_string(Variant v) {
    switch (v) {
        case Variant::RankOneSite: return "rank_one_site";
        case Variant::PolymerBlock: return "polymer_block";
        case Variant::MatrixValued: return "matrix_valued";
        case Variant::Dimer: return "dimer";
        case Variant::Diagonal: return "diagonal";
    }
    return "unknown";
}

Variant variant_from_string(const std::string& name) {
    for (auto v : {Variant::RankOneSite, Variant::PolymerBlock, Variant::MatrixValued, Variant::Dimer,
                   Variant::Diagonal})
        if (to_string(v) == name) return v;
    throw ConfigError(fmt::format("unknown variant '{}' (expected rank_one_site, polymer_block, "
                                  "matrix_valued, dimer or diagonal)",
                                  name));
}

int ModelSpec::rank() const {
    switch (variant) {
        case Variant::RankOneSite: return 1;
        case Variant::Dimer: return 2;
        case Variant::PolymerBlock: return static_cast<int>(ipow(static_cast<std::size_t>(block_param), dim));
        case Variant::MatrixValued:
        case Variant::Diagonal: return block_param;
    }
    return 1;
}

int ModelSpec::block_side() const {
    switch (variant) {
        case Variant::Dimer: return 2;
        case Variant::PolymerBlock: return block_param;
        default: return 1;
    }
}

int ModelSpec::internal_dim() const {
    return (variant == Variant::MatrixValued || variant == Variant::Diagonal) ? block_param : 1;
}

void ModelSpec::validate() const {
    if (dim < 1 || dim > 3) throw ConfigError(fmt::format("dim must be 1, 2 or 3 (got {})", dim));
    if (!(hopping >= 0.0) || !std::isfinite(hopping))
        throw ConfigError(fmt::format("hopping must be a finite nonnegative number (got {})", hopping));
    switch (variant) {
        case Variant::RankOneSite: break;
        case Variant::Dimer:
            if (dim != 1) throw ConfigError("the dimer model is defined for dim = 1 only");
            break;
        case Variant::PolymerBlock:
            if (block_param < 1) throw ConfigError("polymer_block needs block side k >= 1");
            break;
        case Variant::MatrixValued:
            if (block_param < 1) throw ConfigError("matrix_valued needs internal dimension m >= 1");
            break;
        case Variant::Diagonal:
            if (block_param < 1) throw ConfigError("diagonal needs internal dimension m >= 1");
            if (hopping != 0.0) throw ConfigError("the diagonal variant has no hopping term; set hopping = 0");
            break;
    }
}

LatticeBox fit_box(const ModelSpec& spec, int half_side) {
    const auto box = LatticeBox::cube(spec.dim, half_side);
    const int k = spec.block_side();
    if (box.side() % k == 0) return box;
    return LatticeBox::with_side(spec.dim, (box.side() / k + 1) * k);
}

// ---- projection blocks and disorder ----------------------------------------

namespace {

void check_tiling(const ModelSpec& spec, const LatticeBox& box) {
    if (box.dim() != spec.dim)
        throw DimensionMismatch(fmt::format("box dim {} does not match model dim {}", box.dim(), spec.dim));
    const int k = spec.block_side();
    if (box.side() % k != 0)
        throw TilingError(fmt::format("block side {} does not divide box side {}", k, box.side()));
}

// Block index of every site.
std::vector<std::size_t> site_to_block(const ModelSpec& spec, const LatticeBox& box) {
    check_tiling(spec, box);
    const int k = spec.block_side();
    const auto blocks_per_axis = static_cast<std::size_t>(box.side() / k);
    std::vector<std::size_t> owner(box.site_count());
    for (std::size_t s = 0; s < box.site_count(); ++s) {
        const auto c = box.coord(s);
        std::size_t b = 0;
        for (int a = 0; a < box.dim(); ++a) b = b * blocks_per_axis + static_cast<std::size_t>(c[a] / k);
        owner[s] = b;
    }
    return owner;
}

}  // namespace

std::size_t block_count(const ModelSpec& spec, const LatticeBox& box) {
    check_tiling(spec, box);
    return box.site_count() / ipow(static_cast<std::size_t>(spec.block_side()), box.dim());
}

std::vector<IndexGroup> projection_blocks(const ModelSpec& spec, const LatticeBox& box) {
    spec.validate();
    const auto owner = site_to_block(spec, box);
    const auto m = static_cast<std::size_t>(spec.internal_dim());
    std::vector<IndexGroup> groups(block_count(spec, box));
    for (auto& g : groups) g.reserve(static_cast<std::size_t>(spec.rank()));
    for (std::size_t s = 0; s < owner.size(); ++s)
        for (std::size_t c = 0; c < m; ++c) groups[owner[s]].push_back(s * m + c);
    return groups;
}

DisorderSample sample_disorder(const ModelSpec& spec, const LatticeBox& box, std::uint64_t seed,
                               std::uint64_t realization) {
    DisorderSample sample;
    sample.seed = seed;
    sample.realization = realization;
    sample.values.resize(block_count(spec, box));
    for (std::size_t g = 0; g < sample.values.size(); ++g)
        sample.values[g] = spec.disorder.quantile(philox_uniform(seed, realization, g));
    return sample;
}

std::vector<double> site_potential(const ModelSpec& spec, const LatticeBox& box, const DisorderSample& omega) {
    const auto owner = site_to_block(spec, box);
    if (omega.values.size() != block_count(spec, box))
        throw DimensionMismatch(fmt::format("disorder sample has {} values, model needs {}", omega.values.size(),
                                            block_count(spec, box)));
    std::vector<double> v(owner.size());
    for (std::size_t s = 0; s < owner.size(); ++s) v[s] = omega.values[owner[s]];
    return v;
}

SymBandMatrix assemble(const LatticeBox& box, int internal_dim, double hopping,
                       const std::vector<double>& potential) {
    if (potential.size() != box.site_count())
        throw DimensionMismatch(
            fmt::format("potential has {} entries, box has {} sites", potential.size(), box.site_count()));
    const auto m = static_cast<std::size_t>(internal_dim);
    const auto side = static_cast<std::size_t>(box.side());
    // neighbour along the slowest axis is side^(dim-1) sites away
    const std::size_t bandwidth = hopping == 0.0 ? 0 : m * ipow(side, box.dim() - 1);
    SymBandMatrix h(box.site_count() * m, bandwidth);
    for (std::size_t s = 0; s < box.site_count(); ++s) {
        for (std::size_t c = 0; c < m; ++c) h.set(s * m + c, s * m + c, potential[s]);
        if (hopping == 0.0) continue;
        const auto coord = box.coord(s);
        std::size_t stride = 1;
        for (int a = box.dim() - 1; a >= 0; --a) {
            if (static_cast<std::size_t>(coord[a]) + 1 < side) {
                const std::size_t t = s + stride;
                for (std::size_t c = 0; c < m; ++c) h.set(t * m + c, s * m + c, hopping);
            }
            stride *= side;
        }
    }
    return h;
}

SymBandMatrix build_hamiltonian(const ModelSpec& spec, const LatticeBox& box, const DisorderSample& omega) {
    spec.validate();
    return assemble(box, spec.internal_dim(), spec.hopping, site_potential(spec, box, omega));
}

void add_projection(SymBandMatrix& h, const IndexGroup& group, double tau) {
    for (auto row : group) h.add(row, row, tau);
}

}  // namespace levy_spectra
