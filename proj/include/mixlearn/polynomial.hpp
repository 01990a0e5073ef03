#pragma once

#include "mixlearn/mixture.hpp"
#include "mixlearn/rational.hpp"

#include <cstdint>
#include <vector>

namespace mixlearn {

// Polynomial with arbitrary-precision integer coefficients; coefficients()[d]
// multiplies x^d. Trailing zero coefficients are trimmed, so the zero
// polynomial has no coefficients and degree -1.
class IntegerPolynomial {
public:
    IntegerPolynomial() = default;
    explicit IntegerPolynomial(std::vector<BigInt> coefficients);

    const std::vector<BigInt>& coefficients() const noexcept { return coefficients_; }
    int degree() const noexcept { return static_cast<int>(coefficients_.size()) - 1; }
    bool is_zero() const noexcept { return coefficients_.empty(); }
    BigInt leading() const { return is_zero() ? BigInt(0) : coefficients_.back(); }
    BigInt coefficient(int d) const {
        return d >= 0 && d < static_cast<int>(coefficients_.size()) ? coefficients_[d] : BigInt(0);
    }

    Rational evaluate(const Rational& x) const;
    BigInt evaluate(const BigInt& x) const;

    // Coefficients of q(y) = p(offset + scale * y).
    std::vector<Rational> substitute_affine(const Rational& offset, const Rational& scale) const;

    bool operator==(const IntegerPolynomial&) const = default;

private:
    std::vector<BigInt> coefficients_;
};

// S(l, j) for 0 <= j <= l <= max_order.
std::vector<std::vector<BigInt>> stirling2_table(unsigned max_order);

// Eulerian numbers <l, j> for 0 <= j < l (row 0 is {1}).
std::vector<std::vector<BigInt>> eulerian_table(unsigned max_order);

// E X^l for X ~ Bin(n, p) as a polynomial in p: sum_j S(l,j) (n)_j p^j.
// DegeneracyError when n < l (the leading coefficient (n)_l vanishes).
IntegerPolynomial binomial_moment_polynomial(std::int64_t n, unsigned order);

// E X^l for X ~ Geo(p) as a polynomial in u = 1/p:
// sum_j <l,j> u^j (u-1)^(l-j); degree l, leading coefficient l!.
IntegerPolynomial geometric_moment_polynomial(unsigned order);

// Pr(X = l) for X ~ Geo(p) as a polynomial in p:
// sum_j C(l,j) (-1)^j p^(j+1); degree l + 1.
IntegerPolynomial geometric_pmf_polynomial(unsigned order);

// Dispatch: BinomialP -> moments in p, GeometricU -> moments in u,
// GeometricP -> point masses in p. Other families: ContractError.
IntegerPolynomial moment_polynomial(Family family, const SharedParams& shared, unsigned order);

// Exact E X^l of a mixture. Supports BinomialP, GeometricU, GeometricP (all
// p > 0) and Poisson (Touchard recurrence). ContractError otherwise.
Rational mixture_moment_exact(const MixtureSpec& spec, unsigned order);

// Exact Pr(X = x) for BinomialP, GeometricP and GeometricU mixtures.
Rational mixture_pmf_exact(const MixtureSpec& spec, std::int64_t x);

} // namespace mixlearn
