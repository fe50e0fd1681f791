#pragma once

#include <cstdint>
#include <random>

namespace probprog {

// Deterministic random source. All draws go through next_uniform() with an
// explicit layout on top of std::mt19937_64, so output streams are identical
// across platforms and standard libraries.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : engine_(mix(seed)) {}

    // Independent stream for a (master, stream-index) pair.
    static RandomSource derived(std::uint64_t master, std::uint64_t stream) {
        return RandomSource(mix(master) ^ mix(stream + 0x632be59bd9b4e019ULL));
    }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1) with 53 random bits.
    double next_uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

private:
    // splitmix64 finalizer; spreads low-entropy seeds over the full state.
    static std::uint64_t mix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    std::mt19937_64 engine_;
};

} // namespace probprog
