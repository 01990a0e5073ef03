#pragma once

#include "mixlearn/rational.hpp"

#include <cstdint>
#include <string>
#include <string_view>

namespace mixlearn {

enum class Family {
    Gaussian,
    Poisson,
    BinomialP,   // Bin(n, p), p = index * eps
    GeometricP,  // Pr(X = x) = (1-p)^x p, p = index * eps
    GeometricU,  // same pmf, parameterised by u = 1/p = 1 + index * eps
    ChiSquared,  // degrees of freedom = index
    NegBinomial, // C(x+r-1, x) (1-p)^r p^x, r = index, p shared
};

std::string_view family_name(Family family);
Family parse_family(std::string_view name);

bool is_discrete(Family family);

// Families learned through the characteristic-function route; their
// component parameters must be distinct.
bool is_analytic(Family family);

// Maps integer indices to component parameter values.
class ParameterGrid {
public:
    ParameterGrid(Family family, Rational step, std::int64_t min_index, std::int64_t max_index);

    // {0, eps, ..., 1}; requires 1/eps integral.
    static ParameterGrid binomial_p(const Rational& eps);
    static ParameterGrid geometric_p(const Rational& eps);
    // u = 1/p in {1, 1+eps, ..., 1+n*eps}.
    static ParameterGrid geometric_u(const Rational& eps, std::int64_t n);
    static ParameterGrid poisson(std::int64_t max_rate);
    static ParameterGrid chi_squared(std::int64_t max_dof);
    static ParameterGrid neg_binomial(std::int64_t max_r);
    static ParameterGrid gaussian(const Rational& eps, std::int64_t min_index, std::int64_t max_index);

    Family family() const noexcept { return family_; }
    const Rational& step() const noexcept { return step_; }
    std::int64_t min_index() const noexcept { return min_index_; }
    std::int64_t max_index() const noexcept { return max_index_; }
    std::int64_t size() const noexcept { return max_index_ - min_index_ + 1; }
    bool inverse_step_integral() const noexcept { return inverse_step_integral_; }
    bool contains(std::int64_t index) const noexcept { return index >= min_index_ && index <= max_index_; }

    // Exact parameter value at an index: p, u, mean, rate, dof or r.
    Rational value(std::int64_t index) const;
    double value_d(std::int64_t index) const { return to_double(value(index)); }

    bool operator==(const ParameterGrid&) const = default;

private:
    Family family_;
    Rational step_;
    std::int64_t min_index_;
    std::int64_t max_index_;
    bool inverse_step_integral_;
};

} // namespace mixlearn
