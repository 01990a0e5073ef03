#include "mixlearn/polynomial.hpp"

#include "mixlearn/error.hpp"

#include <utility>

namespace mixlearn {

IntegerPolynomial::IntegerPolynomial(std::vector<BigInt> coefficients) : coefficients_(std::move(coefficients)) {
    while (!coefficients_.empty() && coefficients_.back() == 0) coefficients_.pop_back();
}

Rational IntegerPolynomial::evaluate(const Rational& x) const {
    Rational acc = 0;
    for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * x + Rational(*it);
    return acc;
}

BigInt IntegerPolynomial::evaluate(const BigInt& x) const {
    BigInt acc = 0;
    for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::vector<Rational> IntegerPolynomial::substitute_affine(const Rational& offset, const Rational& scale) const {
    // Horner in the polynomial ring: acc <- acc * (offset + scale y) + c.
    std::vector<Rational> acc;
    for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) {
        std::vector<Rational> next(acc.size() + 1, Rational(0));
        for (std::size_t d = 0; d < acc.size(); ++d) {
            next[d] += acc[d] * offset;
            next[d + 1] += acc[d] * scale;
        }
        next[0] += Rational(*it);
        acc = std::move(next);
    }
    while (!acc.empty() && acc.back() == 0) acc.pop_back();
    return acc;
}

std::vector<std::vector<BigInt>> stirling2_table(unsigned max_order) {
    std::vector<std::vector<BigInt>> s(max_order + 1);
    for (unsigned l = 0; l <= max_order; ++l) {
        s[l].assign(l + 1, BigInt(0));
        if (l == 0) {
            s[0][0] = 1;
            continue;
        }
        for (unsigned j = 1; j <= l; ++j) {
            BigInt v = j <= l - 1 ? BigInt(j * s[l - 1][j]) : BigInt(0);
            v += s[l - 1][j - 1];
            s[l][j] = v;
        }
    }
    return s;
}

std::vector<std::vector<BigInt>> eulerian_table(unsigned max_order) {
    std::vector<std::vector<BigInt>> e(max_order + 1);
    e[0] = {BigInt(1)};
    for (unsigned l = 1; l <= max_order; ++l) {
        e[l].assign(l, BigInt(0));
        // <l, j> = (j+1) <l-1, j> + (l-j) <l-1, j-1>
        for (unsigned j = 0; j < l; ++j) {
            BigInt v = 0;
            if (l == 1) {
                v = 1;
            } else {
                if (j < l - 1) v += BigInt(j + 1) * e[l - 1][j];
                if (j >= 1) v += BigInt(l - j) * e[l - 1][j - 1];
            }
            e[l][j] = v;
        }
    }
    return e;
}

IntegerPolynomial binomial_moment_polynomial(std::int64_t n, unsigned order) {
    if (n < static_cast<std::int64_t>(order))
        throw DegeneracyError("binomial moment of order " + std::to_string(order) + " needs n >= order (n = " +
                              std::to_string(n) + ")");
    auto s = stirling2_table(order);
    std::vector<BigInt> c(order + 1, BigInt(0));
    for (unsigned j = 0; j <= order; ++j) c[j] = s[order][j] * falling_factorial(n, j);
    return IntegerPolynomial(std::move(c));
}

IntegerPolynomial geometric_moment_polynomial(unsigned order) {
    if (order == 0) return IntegerPolynomial({BigInt(1)});
    auto eul = eulerian_table(order);
    std::vector<BigInt> c(order + 1, BigInt(0));
    for (unsigned j = 0; j < order; ++j) {
        // u^j (u-1)^(l-j) = sum_i C(l-j, i) (-1)^(l-j-i) u^(j+i)
        unsigned m = order - j;
        for (unsigned i = 0; i <= m; ++i) {
            BigInt term = eul[order][j] * binomial(m, i);
            if ((m - i) % 2) term = -term;
            c[j + i] += term;
        }
    }
    return IntegerPolynomial(std::move(c));
}

IntegerPolynomial geometric_pmf_polynomial(unsigned order) {
    std::vector<BigInt> c(order + 2, BigInt(0));
    for (unsigned j = 0; j <= order; ++j) {
        BigInt term = binomial(order, j);
        c[j + 1] = (j % 2) ? BigInt(-term) : term;
    }
    return IntegerPolynomial(std::move(c));
}

IntegerPolynomial moment_polynomial(Family family, const SharedParams& shared, unsigned order) {
    switch (family) {
    case Family::BinomialP:
        if (!shared.trials) throw ContractError("binomial moment polynomial needs n");
        return binomial_moment_polynomial(*shared.trials, order);
    case Family::GeometricU:
        return geometric_moment_polynomial(order);
    case Family::GeometricP:
        return geometric_pmf_polynomial(order);
    default:
        throw ContractError("no moment polynomial for " + std::string(family_name(family)));
    }
}

namespace {

// Touchard: E X^l = lambda * sum_{j<l} C(l-1, j) E X^j.
std::vector<Rational> poisson_moments(const Rational& rate, unsigned order) {
    std::vector<Rational> m(order + 1);
    m[0] = 1;
    for (unsigned l = 1; l <= order; ++l) {
        Rational acc = 0;
        for (unsigned j = 0; j < l; ++j) acc += Rational(binomial(l - 1, j)) * m[j];
        m[l] = rate * acc;
    }
    return m;
}

} // namespace

Rational mixture_moment_exact(const MixtureSpec& spec, unsigned order) {
    Rational total = 0;
    switch (spec.family()) {
    case Family::BinomialP: {
        // Orders above n are still well defined; only the degree claim needs n >= l.
        auto s = stirling2_table(order);
        std::int64_t n = *spec.shared().trials;
        for (std::size_t i = 0; i < spec.k(); ++i) {
            Rational p = spec.parameter(i);
            Rational value = 0;
            for (unsigned j = 0; j <= order; ++j)
                value += Rational(s[order][j] * falling_factorial(n, j)) * pow(p, j);
            total += spec.weights()[i] * value;
        }
        return total;
    }
    case Family::GeometricU:
    case Family::GeometricP: {
        auto poly = geometric_moment_polynomial(order);
        for (std::size_t i = 0; i < spec.k(); ++i) {
            Rational u = spec.parameter(i);
            if (spec.family() == Family::GeometricP) {
                if (sgn(u) == 0) throw DomainError("geometric component with p = 0 has infinite moments");
                u = 1 / u;
            }
            total += spec.weights()[i] * poly.evaluate(u);
        }
        return total;
    }
    case Family::Poisson:
        for (std::size_t i = 0; i < spec.k(); ++i)
            total += spec.weights()[i] * poisson_moments(spec.parameter(i), order)[order];
        return total;
    default:
        throw ContractError("exact moments are not available for " + std::string(family_name(spec.family())));
    }
}

Rational mixture_pmf_exact(const MixtureSpec& spec, std::int64_t x) {
    if (x < 0) throw DomainError("pmf argument outside support");
    Rational total = 0;
    for (std::size_t i = 0; i < spec.k(); ++i) {
        Rational value;
        switch (spec.family()) {
        case Family::BinomialP: {
            std::int64_t n = *spec.shared().trials;
            if (x > n) {
                value = 0;
                break;
            }
            Rational p = spec.parameter(i);
            auto ux = static_cast<unsigned>(x);
            value = Rational(binomial(static_cast<unsigned>(n), ux)) * pow(p, ux) *
                    pow(Rational(1 - p), static_cast<unsigned>(n - x));
            break;
        }
        case Family::GeometricP:
        case Family::GeometricU: {
            Rational p = spec.parameter(i);
            if (spec.family() == Family::GeometricU) p = 1 / p;
            value = pow(Rational(1 - p), static_cast<unsigned>(x)) * p;
            break;
        }
        default:
            throw ContractError("exact pmf is not available for " + std::string(family_name(spec.family())));
        }
        total += spec.weights()[i] * value;
    }
    return total;
}

} // namespace mixlearn
