#pragma once

#include "mixlearn/rational.hpp"
#include "mixlearn/sampler.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace mixlearn {

// Distinct values of an integer dataset with their counts, ascending.
using ValueHistogram = std::vector<std::pair<std::int64_t, std::uint64_t>>;

ValueHistogram histogram(const SampleDataset& data);

// S_l = sum_i Y_i^l / t for l = 0..T, exact.
struct EmpiricalMoments {
    unsigned T = 0;
    std::vector<Rational> values;
    std::size_t t = 0;
};

// Exact moments of an integer dataset. Power sums are accumulated as big
// integers over the value histogram, so the result does not depend on the
// order of the data.
EmpiricalMoments estimate_moments(const SampleDataset& data, unsigned T);
EmpiricalMoments estimate_moments(const ValueHistogram& hist, unsigned T);

// P_l = #{i : Y_i = l} / t for l = 0..T.
std::vector<Rational> estimate_pmf(const SampleDataset& data, unsigned T);
std::vector<Rational> estimate_pmf(const ValueHistogram& hist, unsigned T);

// Plug-in standard errors sqrt((S_2l - S_l^2) / t) of S_l, l = 0..T.
std::vector<double> moment_standard_errors(const ValueHistogram& hist, unsigned T);

// Plug-in standard errors sqrt(P_l (1 - P_l) / t), l = 0..T.
std::vector<double> pmf_standard_errors(const ValueHistogram& hist, unsigned T);

struct LatticeRounding {
    Rational rounded;
    Rational residual; // |value - rounded| / spacing, in [0, 1/2]
    bool warning = false; // residual > 1/4
};

// Nearest multiple of `spacing`, halves going to the even multiple.
LatticeRounding round_to_lattice(const Rational& value, const Rational& spacing);

} // namespace mixlearn
