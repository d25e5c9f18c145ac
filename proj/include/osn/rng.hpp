#pragma once

#include <cstdint>
#include <random>

namespace osn {

// splitmix64 finalizer. Used to derive independent stream seeds from a base
// seed plus a tag, so parallel code can hand every node / trial its own
// generator without coordination.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
    return mix64(mix64(a) ^ (b + 0x9e3779b97f4a7c15ULL));
}

// Stream tags. Kept in the high byte so (tag | node_id) never collides for
// any realistic node count.
enum class Stream : std::uint64_t {
    deploy    = 0x01ULL << 56,
    formation = 0x02ULL << 56,
    multicast = 0x03ULL << 56,
    trial     = 0x04ULL << 56,
    dataset   = 0x05ULL << 56,
};

using Rng = std::mt19937_64;

// Deterministic substream: same (seed, tag, id) always yields the same
// generator state regardless of construction order or thread count.
inline Rng substream(std::uint64_t seed, Stream tag, std::uint64_t id = 0) {
    const std::uint64_t s = mix64(seed, static_cast<std::uint64_t>(tag) | id);
    std::seed_seq seq{static_cast<std::uint32_t>(s),
                      static_cast<std::uint32_t>(s >> 32),
                      static_cast<std::uint32_t>(mix64(s)),
                      static_cast<std::uint32_t>(mix64(s) >> 32)};
    return Rng(seq);
}

// Uniform in [0,1). Own helper instead of std::uniform_real_distribution so
// the produced sequence is identical across standard library versions.
inline double uniform01(Rng& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n). Rejection sampling, unbiased.
inline std::uint64_t uniform_below(Rng& g, std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = g();
    } while (x >= limit);
    return x % n;
}

}  // namespace osn
