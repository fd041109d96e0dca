#ifndef USTATLAB_RNG_HPP
#define USTATLAB_RNG_HPP

#include <cstdint>

// Counter-based deterministic randomness: every output is a pure function of
// (seed, index), so lazy extension, replay and replicate-level parallelism
// all reproduce bit-exactly regardless of evaluation order.

namespace ustatlab::rng {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// 64-bit finalizer with full avalanche (splitmix64's mixing stage).
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// i-th 64-bit block of the stream keyed by `seed`; equals the splitmix64
// sequence jumped directly to position i.
inline std::uint64_t block(std::uint64_t seed, std::uint64_t i) {
    return mix64(seed + (i + 1) * kGolden);
}

// Derives the seed for replicate `index` of an experiment. The extra mix64
// scatters child seeds so their block sequences cannot alias each other or
// the parent's (block() walks seeds in kGolden steps; children land on
// unrelated offsets).
inline std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) {
    return mix64(seed ^ mix64(index * 0xD1B54A32D192ED03ull + 0x8CB92BA72F3D8DD7ull));
}

// Uniform double in [0,1) with 53 random bits, from block i.
inline double uniform01(std::uint64_t seed, std::uint64_t i) {
    return static_cast<double>(block(seed, i) >> 11) * 0x1.0p-53;
}

} // namespace ustatlab::rng

#endif
