#pragma once

#include <cstdint>
#include <random>

namespace zerolab {

using Rng = std::mt19937_64;

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed of the index-th stream derived from a base seed. Streams for distinct
/// indices are independent of each other and of the order they are consumed in.
constexpr std::uint64_t stream_seed(std::uint64_t base_seed, std::uint64_t index)
{
    return mix64(base_seed ^ mix64(index + 0x5851F42D4C957F2DULL));
}

inline Rng make_stream(std::uint64_t base_seed, std::uint64_t index)
{
    return Rng(stream_seed(base_seed, index));
}

} // namespace zerolab
