#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>

// Counter-based randomness: every draw is a pure function of
// (seed, stream tag, counters...). No sequential generator state, so
// evaluation order and parallelism cannot change any sampled value.

namespace sonarsim {

// Stream tags keep draws for different purposes statistically independent
// even when the remaining counters collide.
enum class RngStream : std::uint64_t {
    asymptotic_accuracy = 0x61636300,  // per-arch a_inf jitter
    curve_rate = 0x74617500,           // per-arch tau
    optimal_latency = 0x6c737400,      // per-key L* jitter
    tuning_spread = 0x73707200,        // per-key excess sigma
    train_noise = 0x74726e00,          // per-(arch, epoch) accuracy noise
    trial_excess = 0x74726c00,         // per-(key, trial) tuning excess
    scheduler_tiebreak = 0x74696500,   // per-round scheduler seed derivation
    test_points = 0x74737400,          // synthetic point sets in tests
};

inline std::uint64_t split_mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Order-sensitive combination of a seed, a stream tag and counters.
inline std::uint64_t counter_hash(std::uint64_t seed, RngStream stream,
                                  std::initializer_list<std::uint64_t> counters) {
    std::uint64_t h = split_mix(seed ^ 0x5bf03635c2a34e2dULL);
    h = split_mix(h ^ static_cast<std::uint64_t>(stream));
    for (std::uint64_t c : counters) {
        h = split_mix(h ^ c);
    }
    return h;
}

// Uniform in (0, 1); never returns 0 or 1 exactly.
inline double u01(std::uint64_t h) {
    return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
}

// Standard normal via Box-Muller on two sub-draws of the same counter.
inline double normal01(std::uint64_t h) {
    const double u1 = u01(split_mix(h ^ 0x243f6a8885a308d3ULL));
    const double u2 = u01(split_mix(h ^ 0x13198a2e03707344ULL));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
}

}  // namespace sonarsim
