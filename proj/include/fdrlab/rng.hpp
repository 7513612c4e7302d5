#pragma once

#include <cmath>
#include <cstdint>

namespace fdrlab {

// splitmix64 finalizer; full avalanche, stable across platforms and stdlibs.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Seed of substream `index` of a master seed. Trials and sweep cells derive
// their streams through this, so parallel and serial runs agree exactly.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index) {
    return mix64(master ^ mix64(index + 0x632be59bd9b4e019ull));
}

// Minimal splitmix64 stream. All sampling routes through this generator
// rather than <random> distributions, so results are reproducible bit for
// bit independent of the standard library implementation.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : state_(seed) {}

    static RngStream substream(std::uint64_t master, std::uint64_t index) {
        return RngStream(substream_seed(master, index));
    }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform on (0, 1]; never 0, so -log() stays finite.
    double next_unit() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    // Standard exponential.
    double next_exponential() { return -std::log(next_unit()); }

    // Rademacher sign, +1 or -1.
    double next_sign() { return (next_u64() & 1u) ? 1.0 : -1.0; }

    // Uniform integer in [0, bound); bound >= 1. Multiply-shift map; the
    // O(bound/2^64) bias is irrelevant at simulation scale.
    std::uint64_t next_below(std::uint64_t bound) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
    }

private:
    std::uint64_t state_;
};

}  // namespace fdrlab
