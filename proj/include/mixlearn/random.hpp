#pragma once

#include <cstdint>
#include <random>

namespace mixlearn {

// Seeded generator with platform-independent output. The engine is
// std::mt19937_64, whose sequence is fixed by the C++ standard; all
// variates are derived here rather than through <random> distributions,
// whose algorithms are implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform on (0, 1].
    double uniform_open_low() { return 1.0 - uniform(); }

    // Standard normal by the Box-Muller transform; the second variate of each
    // pair is cached.
    double normal();

    // Index drawn with probability proportional to the cumulative table
    // (last entry must be 1).
    std::size_t categorical(const double* cumulative, std::size_t size);

private:
    std::mt19937_64 engine_;
    double cached_normal_ = 0.0;
    bool has_cached_ = false;
};

// SplitMix64 finaliser.
std::uint64_t mix64(std::uint64_t x);

// Seed for an independent stream: mix64(seed) xor mix64(stream + constant),
// mixed once more. Used for sample chunks and experiment trials.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

} // namespace mixlearn
