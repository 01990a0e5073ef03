#pragma once

#include "mixlearn/grid.hpp"
#include "mixlearn/mixture.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mixlearn {

// Draws from one mixture. Discrete families fill `integers`, continuous
// families fill `reals`; exactly one of the two is used.
struct SampleDataset {
    Family family = Family::Poisson;
    std::vector<std::int64_t> integers;
    std::vector<double> reals;
    std::optional<std::uint64_t> seed;
    std::string spec_text; // free-form description of the source

    std::size_t size() const noexcept { return is_discrete(family) ? integers.size() : reals.size(); }
    bool empty() const noexcept { return size() == 0; }
};

// Draws per chunk of this many values come from their own derived stream.
inline constexpr std::size_t kSampleChunk = 1u << 16;

// i.i.d. draws from `spec`. Value j belongs to chunk j / kSampleChunk, whose
// generator is seeded with derive_seed(seed, chunk); the output therefore
// depends only on (spec, count, seed), never on the thread count.
//
// Per draw: component chosen by weight, then
//   binomial      n Bernoulli(p) trials,
//   Poisson       CDF inversion (rates above 30 split into additive pieces),
//   geometric     floor(log U / log(1-p)),
//   Gaussian      Box-Muller,
//   chi-squared   sum of dof squared normals,
//   neg. binomial sum of r geometric counts with per-trial probability p.
// A geometric component with p = 0 has no finite draws and is rejected.
SampleDataset sample(const MixtureSpec& spec, std::size_t count, std::uint64_t seed);

} // namespace mixlearn
