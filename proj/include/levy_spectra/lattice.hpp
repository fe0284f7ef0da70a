#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "levy_spectra/band_matrix.hpp"

namespace levy_spectra {

// Cube of lattice sites with `side` sites per axis. Sites are enumerated
// row-major over coordinates (last axis fastest). A box built from a half
// side L has side 2L+1 and covers {n : |n|_inf <= L}; coordinates stored
// here are offsets from the lower corner.
class LatticeBox {
public:
    static LatticeBox cube(int dim, int half_side);
    static LatticeBox with_side(int dim, int side);

    int dim() const noexcept { return dim_; }
    int side() const noexcept { return side_; }
    // Half side of the centered cube; for padded even sides this is side/2.
    int half_side() const noexcept { return side_ / 2; }
    std::size_t site_count() const noexcept { return site_count_; }

    std::size_t index(const std::array<int, 3>& coord) const noexcept;
    std::array<int, 3> coord(std::size_t index) const noexcept;
    // Coordinates relative to the box centre, i.e. the lattice point n in Lambda_L.
    std::array<int, 3> centered_coord(std::size_t index) const noexcept;

    bool operator==(const LatticeBox&) const = default;

private:
    LatticeBox(int dim, int side);

    int dim_;
    int side_;
    std::size_t site_count_;
};

struct UniformLaw {
    double a = 0.0;
    double b = 1.0;
};

// Piecewise-linear density through the knots (x_i, y_i); normalised on
// construction and zero outside [x_0, x_last].
struct PiecewiseLinearLaw {
    std::vector<double> x;
    std::vector<double> y;
};

class DisorderLaw {
public:
    static DisorderLaw uniform(double a, double b);
    static DisorderLaw piecewise_linear(std::vector<double> x, std::vector<double> y);

    double density(double e) const noexcept;
    double cdf(double e) const noexcept;
    // Inverse CDF; u in [0, 1).
    double quantile(double u) const noexcept;
    double support_min() const noexcept;
    double support_max() const noexcept;
    double mean() const noexcept;

    const std::variant<UniformLaw, PiecewiseLinearLaw>& law() const noexcept { return law_; }

private:
    explicit DisorderLaw(std::variant<UniformLaw, PiecewiseLinearLaw> law);

    std::variant<UniformLaw, PiecewiseLinearLaw> law_;
    std::vector<double> cumulative_;  // CDF at knots, piecewise-linear law only
};

enum class Variant { RankOneSite, PolymerBlock, MatrixValued, Dimer, Diagonal };

std::string to_string(Variant v);
Variant variant_from_string(const std::string& name);

// Determines the random operator family h*L + sum_g omega_g P_g.
struct ModelSpec {
    int dim = 1;
    Variant variant = Variant::RankOneSite;
    // Polymer block side k, or internal dimension m for MatrixValued/Diagonal.
    int block_param = 1;
    double hopping = 1.0;
    DisorderLaw disorder = DisorderLaw::uniform(0.0, 1.0);

    // m_k, the common rank of the projections.
    int rank() const;
    // Side length of a spatial projection block (1 for site-local variants).
    int block_side() const;
    // Size of the internal space tensored onto every site.
    int internal_dim() const;

    // Throws ConfigError if the variant constraints do not hold.
    void validate() const;
};

// Smallest admissible box for `spec` containing the cube of half side L:
// the side 2L+1 is rounded up to a multiple of the block side.
LatticeBox fit_box(const ModelSpec& spec, int half_side);

using IndexGroup = std::vector<std::size_t>;

// Matrix-row groups, one per projection P_g; disjoint and covering all rows.
// Throws TilingError if the blocks do not tile the box.
std::vector<IndexGroup> projection_blocks(const ModelSpec& spec, const LatticeBox& box);

std::size_t block_count(const ModelSpec& spec, const LatticeBox& box);

struct DisorderSample {
    std::vector<double> values;
    std::uint64_t seed = 0;
    std::uint64_t realization = 0;
};

// One iid draw per projection block, addressed by (seed, realization, block).
DisorderSample sample_disorder(const ModelSpec& spec, const LatticeBox& box, std::uint64_t seed,
                               std::uint64_t realization);

// Potential value at every lattice site implied by omega (all projections
// are diagonal in the site basis).
std::vector<double> site_potential(const ModelSpec& spec, const LatticeBox& box,
                                   const DisorderSample& omega);

// h * (adjacency of box) (x) I_internal + diag(potential (x) 1_internal),
// Dirichlet restriction, internal index fastest.
SymBandMatrix assemble(const LatticeBox& box, int internal_dim, double hopping,
                       const std::vector<double>& potential);

SymBandMatrix build_hamiltonian(const ModelSpec& spec, const LatticeBox& box,
                                const DisorderSample& omega);

// Adds tau * P for the projection onto the rows in `group`.
void add_projection(SymBandMatrix& h, const IndexGroup& group, double tau);

}  // namespace levy_spectra
