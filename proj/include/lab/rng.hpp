#pragma once

#include <cstdint>
#include <random>

namespace lab {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Engine for stream `stream` derived from a run seed. Streams are independent
// of execution order, so parallel and serial runs agree bit-for-bit.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed;
    std::uint64_t mixed = splitmix64(s);
    s ^= 0x6a09e667f3bcc909ull + stream;
    mixed ^= splitmix64(s);
    return std::mt19937_64(mixed);
}

// Hierarchical substream, e.g. (seed, rep, path).
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = seed ^ (0x9e3779b97f4a7c15ull * (a + 1));
    std::uint64_t mixed = splitmix64(s);
    s ^= 0x6a09e667f3bcc909ull + b;
    mixed ^= splitmix64(s);
    return std::mt19937_64(mixed);
}

} // namespace lab
