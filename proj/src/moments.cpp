#include "mixlearn/moments.hpp"

#include "mixlearn/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace mixlearn {

namespace {

void require_integer_data(const SampleDataset& data) {
    if (data.empty()) throw DomainError("dataset is empty");
    if (!is_discrete(data.family)) throw DomainError("moment estimation needs an integer-valued dataset");
}

std::uint64_t total_count(const ValueHistogram& hist) {
    std::uint64_t t = 0;
    for (const auto& [value, count] : hist) t += count;
    if (t == 0) throw DomainError("dataset is empty");
    return t;
}

BigInt to_big(std::uint64_t v) {
    BigInt b;
    mpz_import(b.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
    return b;
}

} // namespace

ValueHistogram histogram(const SampleDataset& data) {
    require_integer_data(data);
    std::map<std::int64_t, std::uint64_t> counts;
    for (std::int64_t y : data.integers) {
        if (y < 0) throw DomainError("negative value in a count dataset");
        ++counts[y];
    }
    return {counts.begin(), counts.end()};
}

EmpiricalMoments estimate_moments(const ValueHistogram& hist, unsigned T) {
    const BigInt t = to_big(total_count(hist));
    std::vector<BigInt> sums(T + 1, BigInt(0));
    for (const auto& [value, count] : hist) {
        BigInt c = to_big(count);
        BigInt power = 1;
        const BigInt y = BigInt(std::to_string(value));
        for (unsigned l = 0; l <= T; ++l) {
            sums[l] += c * power;
            power *= y;
        }
    }
    EmpiricalMoments out;
    out.T = T;
    out.t = static_cast<std::size_t>(total_count(hist));
    out.values.reserve(T + 1);
    for (auto& s : sums) {
        Rational r(s, t);
        r.canonicalize();
        out.values.push_back(r);
    }
    return out;
}

EmpiricalMoments estimate_moments(const SampleDataset& data, unsigned T) {
    return estimate_moments(histogram(data), T);
}

std::vector<Rational> estimate_pmf(const ValueHistogram& hist, unsigned T) {
    const BigInt t = to_big(total_count(hist));
    std::vector<Rational> out(T + 1, Rational(0));
    for (const auto& [value, count] : hist) {
        if (value <= static_cast<std::int64_t>(T)) {
            Rational r(to_big(count), t);
            r.canonicalize();
            out[static_cast<std::size_t>(value)] = r;
        }
    }
    return out;
}

std::vector<Rational> estimate_pmf(const SampleDataset& data, unsigned T) {
    return estimate_pmf(histogram(data), T);
}

std::vector<double> moment_standard_errors(const ValueHistogram& hist, unsigned T) {
    auto m = estimate_moments(hist, 2 * T);
    std::vector<double> se(T + 1, 0.0);
    const double t = static_cast<double>(m.t);
    for (unsigned l = 0; l <= T; ++l) {
        Rational var = m.values[2 * l] - m.values[l] * m.values[l];
        se[l] = std::sqrt(std::max(0.0, to_double(var)) / t);
    }
    return se;
}

std::vector<double> pmf_standard_errors(const ValueHistogram& hist, unsigned T) {
    auto p = estimate_pmf(hist, T);
    const double t = static_cast<double>(total_count(hist));
    std::vector<double> se(T + 1, 0.0);
    for (unsigned l = 0; l <= T; ++l) {
        double q = to_double(p[l]);
        se[l] = std::sqrt(q * (1.0 - q) / t);
    }
    return se;
}

LatticeRounding round_to_lattice(const Rational& value, const Rational& spacing) {
    if (sgn(spacing) <= 0) throw DomainError("lattice spacing must be positive");
    Rational scaled = value / spacing;
    BigInt nearest = round_half_even(scaled);
    LatticeRounding out;
    out.rounded = Rational(nearest) * spacing;
    out.residual = abs(scaled - Rational(nearest));
    out.warning = out.residual > Rational(1, 4);
    return out;
}

} // namespace mixlearn
