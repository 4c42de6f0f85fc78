#pragma once

#include <cstdint>
#include <random>

namespace fap {

using Rng = std::mt19937_64;

// Replication streams: stream r of a master seed is seeded with master ^ r,
// so stream 0 is the master stream itself and a longer run replays a shorter
// one as a prefix.
inline std::uint64_t replication_seed(std::uint64_t master, std::uint64_t index) {
    return master ^ index;
}

// splitmix64 step, used to derive independent sub-streams for named purposes
// (topology generation, benchmark records, GA) from one master seed.
inline std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline int uniform_int(Rng& rng, int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    return d(rng);
}

inline double uniform_real(Rng& rng, double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    return d(rng);
}

}  // namespace fap
