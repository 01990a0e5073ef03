#include "mixlearn/grid.hpp"

#include "mixlearn/error.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <utility>

namespace mixlearn {

namespace {

constexpr std::array<std::pair<Family, std::string_view>, 7> kFamilyNames{{
    {Family::Gaussian, "gaussian"},
    {Family::Poisson, "poisson"},
    {Family::BinomialP, "binomial"},
    {Family::GeometricP, "geometric-p"},
    {Family::GeometricU, "geometric-u"},
    {Family::ChiSquared, "chi-squared"},
    {Family::NegBinomial, "negative-binomial"},
}};

} // namespace

std::string_view family_name(Family family) {
    for (const auto& [f, name] : kFamilyNames)
        if (f == family) return name;
    return "unknown";
}

Family parse_family(std::string_view name) {
    std::string lowered(name);
    std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    for (const auto& [f, canonical] : kFamilyNames)
        if (lowered == canonical) return f;
    // Short aliases accepted on the command line.
    if (lowered == "normal") return Family::Gaussian;
    if (lowered == "binomial-p") return Family::BinomialP;
    if (lowered == "geometric") return Family::GeometricP;
    if (lowered == "chisquared" || lowered == "chi2") return Family::ChiSquared;
    if (lowered == "negbinomial" || lowered == "nb") return Family::NegBinomial;
    throw ParseError("unknown family '" + std::string(name) + "'");
}

bool is_discrete(Family family) { return family != Family::Gaussian && family != Family::ChiSquared; }

bool is_analytic(Family family) {
    return family == Family::Gaussian || family == Family::Poisson || family == Family::ChiSquared ||
           family == Family::NegBinomial;
}

ParameterGrid::ParameterGrid(Family family, Rational step, std::int64_t min_index, std::int64_t max_index)
    : family_(family), step_(std::move(step)), min_index_(min_index), max_index_(max_index) {
    step_.canonicalize();
    if (sgn(step_) <= 0) throw DomainError("grid step must be positive");
    if (min_index_ > max_index_) throw DomainError("grid min_index exceeds max_index");
    inverse_step_integral_ = step_.get_num() == 1;

    switch (family_) {
    case Family::BinomialP:
    case Family::GeometricP:
        if (min_index_ < 0) throw DomainError("probability grid indices must be nonnegative");
        if (value(max_index_) > 1) throw DomainError("probability grid exceeds 1");
        break;
    case Family::GeometricU:
        if (min_index_ < 0) throw DomainError("geometric u-grid indices must be nonnegative");
        break;
    case Family::Poisson:
        if (step_ != 1 || min_index_ < 0) throw DomainError("Poisson grid is {0,1,...,N} with unit step");
        break;
    case Family::ChiSquared:
    case Family::NegBinomial:
        if (step_ != 1 || min_index_ < 1) throw DomainError(std::string(family_name(family_)) +
                                                            " grid is {1,...,N} with unit step");
        break;
    case Family::Gaussian:
        break;
    }
}

ParameterGrid ParameterGrid::binomial_p(const Rational& eps) {
    Rational inv = 1 / eps;
    if (!is_integer(inv)) throw DomainError("1/eps must be an integer for a {0,eps,...,1} grid");
    return ParameterGrid(Family::BinomialP, eps, 0, to_int64(inv.get_num()));
}

ParameterGrid ParameterGrid::geometric_p(const Rational& eps) {
    Rational inv = 1 / eps;
    if (!is_integer(inv)) throw DomainError("1/eps must be an integer for a {0,eps,...,1} grid");
    return ParameterGrid(Family::GeometricP, eps, 0, to_int64(inv.get_num()));
}

ParameterGrid ParameterGrid::geometric_u(const Rational& eps, std::int64_t n) {
    return ParameterGrid(Family::GeometricU, eps, 0, n);
}

ParameterGrid ParameterGrid::poisson(std::int64_t max_rate) { return ParameterGrid(Family::Poisson, 1, 0, max_rate); }

ParameterGrid ParameterGrid::chi_squared(std::int64_t max_dof) {
    return ParameterGrid(Family::ChiSquared, 1, 1, max_dof);
}

ParameterGrid ParameterGrid::neg_binomial(std::int64_t max_r) { return ParameterGrid(Family::NegBinomial, 1, 1, max_r); }

ParameterGrid ParameterGrid::gaussian(const Rational& eps, std::int64_t min_index, std::int64_t max_index) {
    return ParameterGrid(Family::Gaussian, eps, min_index, max_index);
}

Rational ParameterGrid::value(std::int64_t index) const {
    Rational idx{BigInt(static_cast<long>(index))};
    if (family_ == Family::GeometricU) return 1 + idx * step_;
    return idx * step_;
}

} // namespace mixlearn
