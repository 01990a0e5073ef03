#pragma once

#include "mixlearn/grid.hpp"
#include "mixlearn/mixture.hpp"

#include <cstdint>
#include <ostream>
#include <string_view>
#include <vector>

namespace mixlearn {

// Arc parameter for the characteristic-function bound: a fixed value, or
// N^(1/3) with N the largest grid index.
struct LRule {
    enum class Kind { Fixed, CubeRoot } kind = Kind::CubeRoot;
    double value = 1.0;

    double resolve(const ParameterGrid& grid) const;
};

LRule parse_lrule(std::string_view text); // "cbrt" or a positive number

struct SurveyRow {
    std::vector<std::int64_t> a;
    std::vector<std::int64_t> b;
    double tv_lo = 0.0;
    double tv_hi = 0.0;
    double charfn_bound = 0.0;
    double witness_t = 0.0;
};

struct SurveySummary {
    std::size_t candidates = 0;
    std::size_t pairs = 0;
    double L = 0.0;
    double min_tv = 0.0; // smallest tv_lo over all pairs
    std::vector<std::int64_t> min_a, min_b;
    // c in min_tv = k^-1 exp(-c N^(1/3))
    double implied_c = 0.0;
};

struct SurveyResult {
    std::vector<SurveyRow> rows;
    SurveySummary summary;
};

// Exact TV and the characteristic-function lower bound for every pair of
// distinct k-subsets of the grid, rows in lexicographic pair order.
// CapExceededError when the pair count exceeds `pair_cap`.
SurveyResult separation_survey(const ParameterGrid& grid, const SharedParams& shared, std::size_t k, LRule rule,
                               std::size_t pair_cap = 100000, double tol = 1e-9, int grid_points = 1024);

// Header `pair_a,pair_b,tv_lo,tv_hi,charfn_bound,witness_t`, one row per
// pair, then a `#` summary line.
void write_survey_csv(std::ostream& os, const SurveyResult& survey);

} // namespace mixlearn
