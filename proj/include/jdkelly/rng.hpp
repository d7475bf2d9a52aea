#pragma once

#include <cstdint>
#include <random>

namespace jdkelly {

// Independent named substreams inside one path. Adding a new consumer must
// get a new id; existing ids never change meaning.
enum class Stream : std::uint64_t {
    jump_times = 1,
    jump_outcomes = 2,
    diffusion = 3,
    randomization_1 = 4,
    randomization_2 = 5,
};

constexpr std::uint64_t splitmix64(std::uint64_t z)
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Engine for (seed, path, stream); pure function of its arguments.
inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t path, Stream stream)
{
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ (path * 0xd1b54a32d192ed03ULL));
    h = splitmix64(h ^ static_cast<std::uint64_t>(stream));
    return std::mt19937_64(h);
}

}  // namespace jdkelly
