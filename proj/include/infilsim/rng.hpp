#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace infilsim {

// splitmix64 step, used for seed derivation only.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Mixes a stream tag into a seed so module-level streams replay independently.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
    std::uint64_t s = seed ^ (0x5851f42d4c957f2dULL * (tag + 1));
    std::uint64_t a = splitmix64_next(s);
    std::uint64_t b = splitmix64_next(s);
    return a ^ (b << 1);
}

/// Deterministic random stream: mt19937_64 plus hand-rolled draw helpers so
/// identical seeds give identical sequences on every platform (the standard
/// pins the engine but not the distribution adapters).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1), 53-bit resolution.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return next_unit() < p; }

    /// Uniform in [0, bound), unbiased via rejection from the top of the range.
    std::uint64_t next_below(std::uint64_t bound) {
        if (bound == 0) return 0;
        const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
        const std::uint64_t limit = max - max % bound;
        std::uint64_t x = next_u64();
        while (x >= limit) x = next_u64();
        return x % bound;
    }

    /// Independent child stream; derivation does not consume parent draws.
    Rng child(std::uint64_t tag) const { return Rng(derive_seed(seed_, tag)); }

    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

// Stream tags for the per-replica hierarchy.
inline constexpr std::uint64_t kGraphStream = 0x11;
inline constexpr std::uint64_t kBehaviorStream = 0x22;
inline constexpr std::uint64_t kStrategyStream = 0x33;

}  // namespace infilsim
