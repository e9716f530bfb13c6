#pragma once

#include <cstdint>

namespace randfib {

// Counter-based generator: every draw is a pure function of
// (seed, trajectory index, step index), so results do not depend on how
// trajectories are scheduled across threads or SIMD lanes.
//
// Construction: a per-trajectory 64-bit key is derived from (seed, traj);
// the per-step stream is the SplitMix64 sequence keyed by it (Stafford
// mix13 finalizer over key + step * golden gamma).

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;
inline constexpr std::uint64_t kSeedSalt = 0x5851F42D4C957F2DULL;

inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

inline std::uint64_t trajectory_key(std::uint64_t seed, std::uint64_t traj) {
    return mix64((seed ^ kSeedSalt) + traj * kGoldenGamma);
}

inline std::uint64_t counter_word(std::uint64_t key, std::uint64_t step) {
    return mix64(key + (step + 1) * kGoldenGamma);
}

/// Uniform double in [0, 1) from the top 52 bits of a word.
inline double unit_from_word(std::uint64_t w) {
    return double(w >> 12) * 0x1.0p-52;
}

/// The uniform draw for (seed, trajectory, step).
inline double uniform01(std::uint64_t seed, std::uint64_t traj, std::uint64_t step) {
    return unit_from_word(counter_word(trajectory_key(seed, traj), step));
}

/// Bernoulli noise: eta = 0 with probability eps. Sharing the uniform across
/// different eps values yields the monotone coupling (eta non-increasing in eps).
inline bool eta_draw(double u, double eps) {
    return u >= eps;
}

} // namespace randfib
