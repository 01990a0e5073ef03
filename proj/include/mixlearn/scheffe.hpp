#pragma once

#include "mixlearn/mixture.hpp"
#include "mixlearn/rational.hpp"
#include "mixlearn/sampler.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mixlearn {

struct Interval {
    double lo;
    double hi;
};

// {x : a(x) >= b(x)} for two candidate mixtures.
struct ScheffeSet {
    enum class Kind { Discrete, Intervals } kind = Kind::Discrete;
    std::vector<std::int64_t> points; // discrete: members within [0, x_max]
    std::int64_t x_max = -1;
    std::vector<Interval> intervals; // continuous: disjoint, ascending
    bool full = false;               // a == b everywhere: the whole support
    std::size_t source_a = 0;
    std::size_t source_b = 0;

    bool contains(std::int64_t x) const;
    bool contains(double x) const;
};

// Discrete families compare pmfs pointwise over [0, x_max]; continuous
// families locate density crossings to 1e-9 sigma and keep the regions where
// a >= b. Identical densities give the full support.
ScheffeSet scheffe_set(const MixtureSpec& a, const MixtureSpec& b, std::int64_t x_max = -1);

// Probability a mixture assigns to the set.
double set_probability(const MixtureSpec& spec, const ScheffeSet& set);

// Fraction of the data inside the set, exact.
Rational empirical_measure(const SampleDataset& data, const ScheffeSet& set);

struct MdeResult {
    std::size_t winner = 0;
    double delta = 0.0; // winner's max discrepancy over the Scheffe sets
    std::vector<double> scores;
    bool tie_broken = false;
    std::int64_t x_max = -1; // discrete truncation used for the sets
};

// Minimum distance estimate over the Scheffe sets of all ordered candidate
// pairs. Scores within 1e-12 of the minimum tie; the lexicographically
// smallest index multiset among them wins.
MdeResult mde_select(const std::vector<MixtureSpec>& candidates, const SampleDataset& data);

// Oracle mode: the empirical measure is replaced by the exact distribution
// of `truth`.
MdeResult mde_select(const std::vector<MixtureSpec>& candidates, const MixtureSpec& truth);

// All k-subsets (distinct) or k-multisets of the grid's indices with uniform
// weights, lexicographic order. CapExceededError above `cap` candidates.
std::vector<MixtureSpec> candidate_family(const ParameterGrid& grid, std::size_t k, bool distinct,
                                          const SharedParams& shared, std::size_t cap = 100000);

std::string format_mde(const MdeResult& result, const std::vector<MixtureSpec>& candidates);

} // namespace mixlearn
