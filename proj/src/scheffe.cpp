#include "mixlearn/scheffe.hpp"

#include "mixlearn/distributions.hpp"
#include "mixlearn/error.hpp"
#include "mixlearn/moments.hpp"
#include "mixlearn/parallel.hpp"
#include "mixlearn/tv.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

namespace mixlearn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTruncationMass = 1e-9;
constexpr double kTieTolerance = 1e-12;

std::int64_t family_truncation(const std::vector<MixtureSpec>& specs) {
    std::int64_t x_max = 0;
    for (const auto& s : specs) x_max = std::max(x_max, truncation_point(s, kTruncationMass));
    return x_max;
}

MdeResult select(const std::vector<MixtureSpec>& candidates,
                 const std::function<std::vector<double>(const std::vector<ScheffeSet>&)>& target) {
    if (candidates.empty()) throw ContractError("candidate list is empty");
    for (const auto& c : candidates) require_compatible(candidates.front(), c);
    const bool discrete = is_discrete(candidates.front().family());
    const std::int64_t x_max = discrete ? family_truncation(candidates) : -1;

    const std::size_t n = candidates.size();
    std::vector<ScheffeSet> sets;
    sets.reserve(n * (n - 1));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) {
                sets.push_back(scheffe_set(candidates[i], candidates[j], x_max));
                sets.back().source_a = i;
                sets.back().source_b = j;
            }

    const std::vector<double> observed = target(sets);
    MdeResult out;
    out.x_max = x_max;
    out.scores.assign(n, 0.0);
    parallel_for(n, [&](std::size_t c) {
        double worst = 0.0;
        for (std::size_t s = 0; s < sets.size(); ++s)
            worst = std::max(worst, std::abs(set_probability(candidates[c], sets[s]) - observed[s]));
        out.scores[c] = worst;
    });

    const double best = *std::min_element(out.scores.begin(), out.scores.end());
    std::size_t tied = 0;
    bool first = true;
    for (std::size_t c = 0; c < n; ++c) {
        if (out.scores[c] > best + kTieTolerance) continue;
        ++tied;
        if (first || candidates[c].indices() < candidates[out.winner].indices()) out.winner = c;
        first = false;
    }
    out.tie_broken = tied > 1;
    out.delta = out.scores[out.winner];
    return out;
}

} // namespace

bool ScheffeSet::contains(std::int64_t x) const {
    if (full) return true;
    if (kind == Kind::Discrete) return std::binary_search(points.begin(), points.end(), x);
    return contains(static_cast<double>(x));
}

bool ScheffeSet::contains(double x) const {
    if (full) return true;
    if (kind == Kind::Discrete) {
        if (std::floor(x) != x) return false;
        return contains(static_cast<std::int64_t>(x));
    }
    auto it = std::upper_bound(intervals.begin(), intervals.end(), x,
                               [](double v, const Interval& iv) { return v < iv.lo; });
    if (it == intervals.begin()) return false;
    --it;
    return x <= it->hi;
}

ScheffeSet scheffe_set(const MixtureSpec& a, const MixtureSpec& b, std::int64_t x_max) {
    require_compatible(a, b);
    ScheffeSet set;
    if (a == b) set.full = true;
    if (is_discrete(a.family())) {
        set.kind = ScheffeSet::Kind::Discrete;
        if (x_max < 0) x_max = std::max(truncation_point(a, kTruncationMass), truncation_point(b, kTruncationMass));
        set.x_max = x_max;
        for (std::int64_t x = 0; x <= x_max; ++x)
            if (pmf(a, x) >= pmf(b, x)) set.points.push_back(x);
        return set;
    }

    set.kind = ScheffeSet::Kind::Intervals;
    if (set.full) {
        set.intervals.push_back({a.family() == Family::ChiSquared ? 0.0 : -kInf, kInf});
        return set;
    }
    const double scale = a.family() == Family::Gaussian ? *a.shared().sigma : 1.0;
    SignRegions regions = density_sign_regions(a, b, 1e-9 * scale);
    if (regions.signs.size() == 1 && regions.signs[0] == 0) {
        set.full = true;
        set.intervals.push_back({regions.support_lo, kInf});
        return set;
    }
    for (std::size_t i = 0; i < regions.signs.size(); ++i) {
        if (regions.signs[i] < 0) continue;
        double lo = i == 0 ? regions.support_lo : regions.cuts[i - 1];
        double hi = i == regions.cuts.size() ? kInf : regions.cuts[i];
        if (!set.intervals.empty() && set.intervals.back().hi == lo) set.intervals.back().hi = hi;
        else set.intervals.push_back({lo, hi});
    }
    return set;
}

double set_probability(const MixtureSpec& spec, const ScheffeSet& set) {
    if (set.full) return 1.0;
    if (set.kind == ScheffeSet::Kind::Discrete) {
        double total = 0.0;
        for (std::int64_t x : set.points) total += pmf(spec, x);
        return total;
    }
    double total = 0.0;
    for (const auto& iv : set.intervals) total += interval_probability(spec, iv.lo, iv.hi);
    return total;
}

Rational empirical_measure(const SampleDataset& data, const ScheffeSet& set) {
    if (data.empty()) throw DomainError("dataset is empty");
    std::size_t inside = 0;
    if (is_discrete(data.family)) {
        for (std::int64_t y : data.integers)
            if (set.contains(y)) ++inside;
    } else {
        for (double y : data.reals)
            if (set.contains(y)) ++inside;
    }
    Rational r(BigInt(static_cast<unsigned long>(inside)), BigInt(static_cast<unsigned long>(data.size())));
    r.canonicalize();
    return r;
}

MdeResult mde_select(const std::vector<MixtureSpec>& candidates, const SampleDataset& data) {
    if (data.empty()) throw DomainError("dataset is empty");
    if (!candidates.empty() && data.family != candidates.front().family())
        throw FamilyMismatchError("data is " + std::string(family_name(data.family)) + ", candidates are " +
                                  std::string(family_name(candidates.front().family())));
    return select(candidates, [&](const std::vector<ScheffeSet>& sets) {
        std::vector<double> observed(sets.size());
        const double m = static_cast<double>(data.size());
        if (is_discrete(data.family)) {
            ValueHistogram hist = histogram(data);
            parallel_for(sets.size(), [&](std::size_t s) {
                std::uint64_t inside = 0;
                for (const auto& [value, count] : hist)
                    if (sets[s].contains(value)) inside += count;
                observed[s] = static_cast<double>(inside) / m;
            });
        } else {
            std::vector<double> sorted = data.reals;
            std::sort(sorted.begin(), sorted.end());
            parallel_for(sets.size(), [&](std::size_t s) {
                if (sets[s].full) {
                    observed[s] = 1.0;
                    return;
                }
                std::size_t inside = 0;
                for (const auto& iv : sets[s].intervals) {
                    auto lo = std::lower_bound(sorted.begin(), sorted.end(), iv.lo);
                    auto hi = std::upper_bound(sorted.begin(), sorted.end(), iv.hi);
                    if (hi > lo) inside += static_cast<std::size_t>(hi - lo);
                }
                observed[s] = static_cast<double>(inside) / m;
            });
        }
        return observed;
    });
}

MdeResult mde_select(const std::vector<MixtureSpec>& candidates, const MixtureSpec& truth) {
    if (!candidates.empty()) require_compatible(candidates.front(), truth);
    return select(candidates, [&](const std::vector<ScheffeSet>& sets) {
        std::vector<double> observed(sets.size());
        for (std::size_t s = 0; s < sets.size(); ++s) observed[s] = set_probability(truth, sets[s]);
        return observed;
    });
}

std::vector<MixtureSpec> candidate_family(const ParameterGrid& grid, std::size_t k, bool distinct,
                                          const SharedParams& shared, std::size_t cap) {
    if (k < 1) throw DomainError("k must be at least 1");
    const auto range = static_cast<unsigned>(grid.size());
    if (distinct && k > range)
        throw DomainError("k = " + std::to_string(k) + " exceeds the " + std::to_string(range) + " grid points");
    BigInt count = distinct ? binomial(range, static_cast<unsigned>(k))
                            : binomial(range + static_cast<unsigned>(k) - 1, static_cast<unsigned>(k));
    if (count > BigInt(static_cast<unsigned long>(cap)))
        throw CapExceededError(to_string(count) + " candidates exceed the cap of " + std::to_string(cap));

    std::vector<MixtureSpec> out;
    out.reserve(count.get_ui());
    std::vector<std::int64_t> idx(k);
    // lexicographic enumeration of nondecreasing (or increasing) index tuples
    for (std::size_t i = 0; i < k; ++i)
        idx[i] = grid.min_index() + (distinct ? static_cast<std::int64_t>(i) : 0);
    auto limit = [&](std::size_t pos) {
        return grid.max_index() - (distinct ? static_cast<std::int64_t>(k - 1 - pos) : 0);
    };
    for (;;) {
        out.emplace_back(grid, idx, shared);
        std::ptrdiff_t pos = static_cast<std::ptrdiff_t>(k) - 1;
        while (pos >= 0 && idx[pos] >= limit(static_cast<std::size_t>(pos))) --pos;
        if (pos < 0) return out;
        ++idx[pos];
        for (std::size_t q = static_cast<std::size_t>(pos) + 1; q < k; ++q) idx[q] = idx[q - 1] + (distinct ? 1 : 0);
    }
}

std::string format_mde(const MdeResult& result, const std::vector<MixtureSpec>& candidates) {
    std::ostringstream os;
    os.precision(17);
    os << "winner=" << format_indices(candidates[result.winner].indices(), ',') << '\n'
       << "delta=" << result.delta << '\n'
       << "tie_broken=" << (result.tie_broken ? "true" : "false") << '\n'
       << "candidates=" << candidates.size() << '\n';
    if (result.x_max >= 0) os << "x_max=" << result.x_max << '\n';
    return os.str();
}

} // namespace mixlearn
