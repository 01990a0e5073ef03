#include "mixlearn/power_sums.hpp"

#include "mixlearn/error.hpp"
#include "mixlearn/polynomial.hpp"

#include <algorithm>
#include <optional>

namespace mixlearn {

namespace {

std::string format_sums(const PowerSumVector& m) {
    std::string s = "(";
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i) s += ",";
        s += to_string(m[i]);
    }
    return s + ")";
}

BigInt big(std::int64_t v) { return BigInt(static_cast<long>(v)); }

// Sequential solve shared by the moment and point-mass paths. coefficient
// row l (index d) multiplies m_d in k * value[l]; `unknown(l)` names the
// power sum first appearing in row l.
PowerSumSolve triangular_solve(const std::vector<Rational>& values,
                               const std::vector<std::vector<Rational>>& rows, std::size_t k,
                               std::int64_t max_index, unsigned first_unknown) {
    PowerSumSolve out;
    out.sums.assign(first_unknown + rows.size(), BigInt(0));
    out.sums[0] = static_cast<long>(k);
    out.max_residual = 0;
    const Rational kk(static_cast<long>(k));
    for (std::size_t row = 0; row < rows.size(); ++row) {
        const unsigned target = first_unknown + static_cast<unsigned>(row);
        const auto& c = rows[row];
        if (c.size() <= target || sgn(c[target]) == 0)
            throw DegeneracyError("order " + std::to_string(target) + " has a vanishing leading coefficient");
        Rational rhs = kk * values[row];
        for (unsigned d = 0; d < target; ++d)
            if (d < c.size()) rhs -= c[d] * Rational(out.sums[d]);
        Rational solved = rhs / c[target];
        BigInt nearest = round_half_even(solved);
        Rational residual = abs(solved - Rational(nearest));
        out.residuals.push_back(residual);
        if (residual > out.max_residual) out.max_residual = residual;
        if (residual > Rational(1, 4))
            throw InconsistencyError("power sum m_" + std::to_string(target) + " = " + to_string(solved) +
                                     " is not within 1/4 of an integer (residual " + to_string(residual) + ")");
        BigInt limit = BigInt(static_cast<long>(k)) * pow(big(std::max<std::int64_t>(max_index, 0)), target);
        if (nearest < 0 || nearest > limit)
            throw InconsistencyError("power sum m_" + std::to_string(target) + " = " + to_string(nearest) +
                                     " is outside [0, " + to_string(limit) + "]");
        out.sums[target] = nearest;
    }
    return out;
}

} // namespace

PowerSumVector power_sums(const std::vector<std::int64_t>& multiset, unsigned T) {
    PowerSumVector m(T + 1, BigInt(0));
    for (std::int64_t a : multiset) {
        BigInt p = 1;
        for (unsigned l = 0; l <= T; ++l) {
            m[l] += p;
            p *= big(a);
        }
    }
    return m;
}

PowerSumSolve moments_to_power_sums(const std::vector<Rational>& moments, const ParameterGrid& grid,
                                    const SharedParams& shared, std::size_t k) {
    const Family family = grid.family();
    if (family != Family::BinomialP && family != Family::GeometricU)
        throw ContractError("moment inversion needs a binomial-p or geometric-u grid, got " +
                            std::string(family_name(family)));
    if (k < 1) throw DomainError("k must be at least 1");
    if (moments.empty() || moments[0] != 1) throw InconsistencyError("M_0 must equal 1");
    const unsigned T = static_cast<unsigned>(moments.size() - 1);
    if (family == Family::BinomialP && shared.trials && *shared.trials < static_cast<std::int64_t>(T))
        throw DegeneracyError("binomial moments of order " + std::to_string(T) + " need n >= " + std::to_string(T) +
                              " (n = " + std::to_string(*shared.trials) + ")");

    const Rational offset = family == Family::GeometricU ? Rational(1) : Rational(0);
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> values;
    for (unsigned l = 1; l <= T; ++l) {
        rows.push_back(moment_polynomial(family, shared, l).substitute_affine(offset, grid.step()));
        values.push_back(moments[l]);
    }
    return triangular_solve(values, rows, k, grid.max_index(), 1);
}

PowerSumSolve pmf_to_power_sums(const std::vector<Rational>& probs, const ParameterGrid& grid, std::size_t k) {
    if (grid.family() != Family::GeometricP)
        throw ContractError("point-mass inversion needs a geometric-p grid, got " +
                            std::string(family_name(grid.family())));
    if (k < 1) throw DomainError("k must be at least 1");
    std::vector<std::vector<Rational>> rows;
    for (unsigned l = 0; l < probs.size(); ++l)
        rows.push_back(geometric_pmf_polynomial(l).substitute_affine(Rational(0), grid.step()));
    return triangular_solve(probs, rows, k, grid.max_index(), 1);
}

std::vector<Rational> newton_to_elementary(const PowerSumVector& m, std::size_t k) {
    if (m.empty() || m[0] != static_cast<long>(k)) throw InconsistencyError("m_0 must equal k");
    if (m.size() < k + 1) throw ContractError("Newton's identities need m_1..m_k");
    std::vector<Rational> e(k + 1, Rational(0));
    e[0] = 1;
    for (std::size_t l = 1; l <= k; ++l) {
        Rational acc = 0;
        for (std::size_t i = 1; i <= l; ++i) {
            Rational term = e[l - i] * Rational(m[i]);
            if (i % 2) acc += term;
            else acc -= term;
        }
        e[l] = acc / Rational(static_cast<long>(l));
        if (!is_integer(e[l]))
            throw InconsistencyError("elementary symmetric value e_" + std::to_string(l) + " = " + to_string(e[l]) +
                                     " is not an integer");
    }
    return e;
}

std::vector<std::int64_t> reconstruct_by_roots(const PowerSumVector& m, std::int64_t lo, std::int64_t hi,
                                               std::size_t k) {
    auto e = newton_to_elementary(m, k);
    // coefficients of x^k - e_1 x^(k-1) + ..., highest degree first
    std::vector<BigInt> poly(k + 1);
    for (std::size_t j = 0; j <= k; ++j) {
        BigInt v = e[j].get_num();
        poly[j] = (j % 2) ? BigInt(-v) : v;
    }
    std::vector<std::int64_t> roots;
    for (std::int64_t x = lo; x <= hi && roots.size() < k; ++x) {
        const BigInt bx = big(x);
        for (;;) {
            if (poly.size() <= 1) break;
            // synthetic division by (x - bx)
            std::vector<BigInt> quotient(poly.size() - 1);
            BigInt acc = 0;
            for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
                acc = acc * bx + poly[i];
                quotient[i] = acc;
            }
            BigInt remainder = acc * bx + poly.back();
            if (remainder != 0) break;
            roots.push_back(x);
            poly = std::move(quotient);
        }
    }
    if (roots.size() != k)
        throw ReconstructionError("power sums " + format_sums(m) + " have no integer multiset in [" +
                                  std::to_string(lo) + ", " + std::to_string(hi) + "]");
    if (power_sums(roots, static_cast<unsigned>(m.size() - 1)) != m)
        throw ReconstructionError("multiset {" + format_indices(roots, ',') + "} does not match power sums " +
                                  format_sums(m));
    return roots;
}

namespace {

struct Search {
    const PowerSumVector& target;
    std::int64_t hi;
    unsigned T;
    std::vector<std::int64_t> current;
    std::vector<std::vector<std::int64_t>> found;

    void run(std::int64_t x, std::size_t left, PowerSumVector& remaining) {
        if (found.size() >= 2) return;
        if (left == 0) {
            for (unsigned l = 1; l <= T; ++l)
                if (remaining[l] != 0) return;
            found.push_back(current);
            return;
        }
        if (x > hi) return;
        // every remaining element lies in [x, hi]
        const BigInt c(static_cast<long>(left));
        BigInt px = 1, ph = 1;
        for (unsigned l = 1; l <= T; ++l) {
            px *= big(x);
            ph *= big(hi);
            if (remaining[l] < c * px || remaining[l] > c * ph) return;
        }
        // take x once more, or move past it
        BigInt p = 1;
        for (unsigned l = 1; l <= T; ++l) {
            p *= big(x);
            remaining[l] -= p;
        }
        current.push_back(x);
        run(x, left - 1, remaining);
        current.pop_back();
        p = 1;
        for (unsigned l = 1; l <= T; ++l) {
            p *= big(x);
            remaining[l] += p;
        }
        run(x + 1, left, remaining);
    }
};

} // namespace

std::vector<std::int64_t> reconstruct_by_search(const PowerSumVector& m, std::int64_t lo, std::int64_t hi,
                                                std::size_t k) {
    if (lo < 0) throw ContractError("search reconstruction needs a nonnegative domain");
    if (m.empty() || m[0] != static_cast<long>(k)) throw InconsistencyError("m_0 must equal k");
    Search s{m, hi, static_cast<unsigned>(m.size() - 1), {}, {}};
    PowerSumVector remaining = m;
    s.run(lo, k, remaining);
    if (s.found.empty())
        throw ReconstructionError("power sums " + format_sums(m) + " have no integer multiset in [" +
                                  std::to_string(lo) + ", " + std::to_string(hi) + "]");
    if (s.found.size() > 1)
        throw AmbiguityError("power sums " + format_sums(m) + " fit both {" + format_indices(s.found[0], ',') +
                             "} and {" + format_indices(s.found[1], ',') + "}");
    return s.found[0];
}

std::vector<std::int64_t> reconstruct_multiset(const PowerSumVector& m, std::int64_t lo, std::int64_t hi,
                                               std::size_t k) {
    if (m.empty() || m[0] != static_cast<long>(k)) throw InconsistencyError("m_0 must equal k");
    if (m.size() >= k + 1) {
        try {
            return reconstruct_by_roots(m, lo, hi, k);
        } catch (const InconsistencyError& e) {
            throw ReconstructionError(std::string("no integer multiset: ") + e.what());
        }
    }
    return reconstruct_by_search(m, lo, hi, k);
}

} // namespace mixlearn
