#ifndef FRECHET_RNG_HPP
#define FRECHET_RNG_HPP

#include <array>
#include <cstdint>
#include <limits>

namespace frechet {

/// Philox4x32-10 counter-based bijection (Salmon et al., "Parallel random
/// numbers: as easy as 1, 2, 3"). Maps a 128-bit counter under a 64-bit key to
/// 128 pseudo-random bits with no internal state, so any (key, counter) cell
/// can be evaluated independently and in any order.
class Philox4x32 {
public:
    using counter_type = std::array<std::uint32_t, 4>;

    explicit constexpr Philox4x32(std::uint64_t key) noexcept
        : key0_(static_cast<std::uint32_t>(key)), key1_(static_cast<std::uint32_t>(key >> 32)) {}

    constexpr counter_type operator()(counter_type ctr) const noexcept {
        std::uint32_t k0 = key0_;
        std::uint32_t k1 = key1_;
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * ctr[0];
            const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * ctr[2];
            ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ k0, static_cast<std::uint32_t>(p1),
                   static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ k1, static_cast<std::uint32_t>(p0)};
            k0 += 0x9E3779B9u;
            k1 += 0xBB67AE85u;
        }
        return ctr;
    }

    /// 64 bits for the cell (stream, index).
    constexpr std::uint64_t bits(std::uint64_t stream, std::uint64_t index) const noexcept {
        const auto out = (*this)({static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                                  static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)});
        return (std::uint64_t{out[1]} << 32) | out[0];
    }

private:
    std::uint32_t key0_;
    std::uint32_t key1_;
};

/// Uniform double in [0, 1) from the top 53 bits.
constexpr double to_unit_interval(std::uint64_t bits) noexcept {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// SplitMix64 finalizer; used to derive child seeds from (parent, index) pairs.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t a) noexcept {
    return mix64(mix64(parent) ^ mix64(a + 0x632BE59BD9B4E019ull));
}

constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t a, std::uint64_t b) noexcept {
    return derive_seed(derive_seed(parent, a), b);
}

/// UniformRandomBitGenerator over one Philox stream: successive calls walk the
/// counter of a fixed (key, stream) cell.
class StreamEngine {
public:
    using result_type = std::uint64_t;

    StreamEngine(std::uint64_t key, std::uint64_t stream) noexcept : philox_(key), stream_(stream) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept { return philox_.bits(stream_, counter_++); }

private:
    Philox4x32 philox_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
};

}

#endif
