#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace levy_spectra {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
// A draw is a pure function of (key, counter), so streams can be addressed
// directly by (seed, realization, block) without any sequential state.
class Philox4x32 {
public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static constexpr Counter block(Counter ctr, Key key) noexcept {
        for (int round = 0; round < 10; ++round) {
            ctr = single_round(ctr, key);
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        return ctr;
    }

    static constexpr Key key_from_seed(std::uint64_t seed) noexcept {
        return {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
    }

    static constexpr Counter counter(std::uint64_t hi, std::uint64_t lo) noexcept {
        return {static_cast<std::uint32_t>(lo), static_cast<std::uint32_t>(lo >> 32),
                static_cast<std::uint32_t>(hi), static_cast<std::uint32_t>(hi >> 32)};
    }

private:
    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

    static constexpr Counter single_round(const Counter& c, const Key& k) noexcept {
        const std::uint64_t p0 = std::uint64_t{kMul0} * c[0];
        const std::uint64_t p1 = std::uint64_t{kMul1} * c[2];
        const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const auto lo0 = static_cast<std::uint32_t>(p0);
        const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const auto lo1 = static_cast<std::uint32_t>(p1);
        return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    }
};

// 64 random bits addressed by (seed, stream, index).
constexpr std::uint64_t philox_bits(std::uint64_t seed, std::uint64_t stream,
                                    std::uint64_t index) noexcept {
    const auto out = Philox4x32::block(Philox4x32::counter(stream, index),
                                       Philox4x32::key_from_seed(seed));
    return (std::uint64_t{out[1]} << 32) | out[0];
}

// Uniform double in [0, 1) with 53 random bits.
constexpr double philox_uniform(std::uint64_t seed, std::uint64_t stream,
                                std::uint64_t index) noexcept {
    return static_cast<double>(philox_bits(seed, stream, index) >> 11) * 0x1.0p-53;
}

// UniformRandomBitGenerator view over one (seed, stream) pair; the counter
// advances with each call. Used for synthetic sampling in tests and fits.
class PhiloxStream {
public:
    using result_type = std::uint64_t;

    PhiloxStream(std::uint64_t seed, std::uint64_t stream) noexcept
        : seed_(seed), stream_(stream) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()() noexcept { return philox_bits(seed_, stream_, index_++); }
    double uniform() noexcept { return philox_uniform(seed_, stream_, index_++); }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t index_ = 0;
};

}  // namespace levy_spectra
