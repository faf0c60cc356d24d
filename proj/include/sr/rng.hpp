#pragma once

#include <cstdint>
#include <random>

namespace sr {

// splitmix64; used both as a mixer for stream derivation and as the
// seeding primitive for per-task engines.
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Derives an independent stream seed from a master seed and a list of
/// task indices (lambda index, k index, replica index, ...). Every worker
/// owns the engine built from its derived seed; aggregation is then
/// deterministic for a fixed master seed.
inline uint64_t derive_seed(uint64_t master, std::initializer_list<uint64_t> indices) {
    uint64_t s = splitmix64(master);
    for (uint64_t ix : indices) {
        s = splitmix64(s ^ (0x632be59bd9b4e019ULL + ix));
    }
    return s;
}

inline std::mt19937_64 make_engine(uint64_t seed) {
    return std::mt19937_64(splitmix64(seed));
}

}  // namespace sr
