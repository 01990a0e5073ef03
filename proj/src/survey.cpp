#include "mixlearn/survey.hpp"

#include "mixlearn/error.hpp"
#include "mixlearn/parallel.hpp"
#include "mixlearn/scheffe.hpp"
#include "mixlearn/tv.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace mixlearn {

double LRule::resolve(const ParameterGrid& grid) const {
    if (kind == Kind::Fixed) return value;
    return std::max(1.0, std::cbrt(static_cast<double>(grid.max_index())));
}

LRule parse_lrule(std::string_view text) {
    if (text == "cbrt") return {};
    double v = to_double(parse_rational(text));
    if (!(v > 0.0)) throw ParseError("L must be positive");
    return {LRule::Kind::Fixed, v};
}

SurveyResult separation_survey(const ParameterGrid& grid, const SharedParams& shared, std::size_t k, LRule rule,
                               std::size_t pair_cap, double tol, int grid_points) {
    auto candidates = candidate_family(grid, k, true, shared);
    const std::size_t c = candidates.size();
    const std::size_t pairs = c * (c - 1) / 2;
    if (pairs > pair_cap)
        throw CapExceededError("survey of " + std::to_string(pairs) + " pairs exceeds the cap of " +
                               std::to_string(pair_cap));
    SurveyResult out;
    out.summary.candidates = c;
    out.summary.pairs = pairs;
    out.summary.L = rule.resolve(grid);

    std::vector<std::pair<std::size_t, std::size_t>> index;
    index.reserve(pairs);
    for (std::size_t i = 0; i < c; ++i)
        for (std::size_t j = i + 1; j < c; ++j) index.emplace_back(i, j);
    out.rows.resize(pairs);
    parallel_for(pairs, [&](std::size_t p) {
        const auto& a = candidates[index[p].first];
        const auto& b = candidates[index[p].second];
        TvInterval tv = tv_exact(a, b, tol);
        TvCertificate cert = tv_lower_bound_charfn(a, b, out.summary.L, grid_points);
        out.rows[p] = {a.indices(), b.indices(), tv.lo, tv.hi, cert.value, cert.witness_t};
    });

    out.summary.min_tv = std::numeric_limits<double>::infinity();
    for (const auto& row : out.rows) {
        if (row.tv_lo < out.summary.min_tv) {
            out.summary.min_tv = row.tv_lo;
            out.summary.min_a = row.a;
            out.summary.min_b = row.b;
        }
    }
    if (pairs == 0) out.summary.min_tv = 0.0;
    const double n_cbrt = std::cbrt(static_cast<double>(std::max<std::int64_t>(grid.max_index(), 1)));
    out.summary.implied_c = out.summary.min_tv > 0.0
                                ? -std::log(static_cast<double>(k) * out.summary.min_tv) / n_cbrt
                                : std::numeric_limits<double>::infinity();
    return out;
}

void write_survey_csv(std::ostream& os, const SurveyResult& survey) {
    os.precision(17);
    os << "pair_a,pair_b,tv_lo,tv_hi,charfn_bound,witness_t\n";
    for (const auto& row : survey.rows)
        os << format_indices(row.a) << ',' << format_indices(row.b) << ',' << row.tv_lo << ',' << row.tv_hi << ','
           << row.charfn_bound << ',' << row.witness_t << '\n';
    const auto& s = survey.summary;
    os << "# candidates=" << s.candidates << " pairs=" << s.pairs << " L=" << s.L << " min_tv=" << s.min_tv
       << " min_pair=" << format_indices(s.min_a) << '|' << format_indices(s.min_b) << " implied_c=" << s.implied_c
       << '\n';
}

} // namespace mixlearn
