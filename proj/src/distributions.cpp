#include "mixlearn/distributions.hpp"

#include "mixlearn/error.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <limits>
#include <numbers>

namespace mixlearn {

namespace {

double log_binomial_coefficient(double n, double k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double poisson_pmf(double rate, double x) {
    if (rate == 0.0) return x == 0.0 ? 1.0 : 0.0;
    return std::exp(x * std::log(rate) - rate - std::lgamma(x + 1.0));
}

double binomial_pmf(std::int64_t n, double p, double x) {
    if (x > static_cast<double>(n)) return 0.0;
    if (p == 0.0) return x == 0.0 ? 1.0 : 0.0;
    if (p == 1.0) return x == static_cast<double>(n) ? 1.0 : 0.0;
    double nn = static_cast<double>(n);
    return std::exp(log_binomial_coefficient(nn, x) + x * std::log(p) + (nn - x) * std::log1p(-p));
}

// Pr(X = x) = (1-p)^x p; p = 0 never succeeds and has no mass on the integers.
double geometric_pmf(double p, double x) {
    if (p == 0.0) return 0.0;
    if (p == 1.0) return x == 0.0 ? 1.0 : 0.0;
    return std::exp(x * std::log1p(-p)) * p;
}

double neg_binomial_pmf(double r, double p, double x) {
    return std::exp(std::lgamma(x + r) - std::lgamma(r) - std::lgamma(x + 1.0) + r * std::log1p(-p) + x * std::log(p));
}

double gaussian_pdf(double mean, double sigma, double x) {
    double z = (x - mean) / sigma;
    return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * std::numbers::pi));
}

double chi_squared_pdf(double dof, double x) {
    if (x < 0.0) return 0.0;
    if (x == 0.0) {
        if (dof < 2.0) return std::numeric_limits<double>::infinity();
        return dof == 2.0 ? 0.5 : 0.0;
    }
    double half = dof / 2.0;
    return std::exp((half - 1.0) * std::log(x) - x / 2.0 - half * std::numbers::ln2 - std::lgamma(half));
}

bool is_nonnegative_integer(double x) { return x >= 0.0 && std::floor(x) == x && std::isfinite(x); }

} // namespace

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double component_density(Family family, const SharedParams& shared, double param, double x) {
    switch (family) {
    case Family::Gaussian:
        return gaussian_pdf(param, *shared.sigma, x);
    case Family::ChiSquared:
        return chi_squared_pdf(param, x);
    case Family::Poisson:
        return poisson_pmf(param, x);
    case Family::BinomialP:
        return binomial_pmf(*shared.trials, param, x);
    case Family::GeometricP:
        return geometric_pmf(param, x);
    case Family::GeometricU:
        return geometric_pmf(1.0 / param, x);
    case Family::NegBinomial:
        return neg_binomial_pmf(param, to_double(*shared.nb_p), x);
    }
    throw ContractError("unknown family");
}

double pmf(const MixtureSpec& spec, std::int64_t x) {
    if (!is_discrete(spec.family()))
        throw DomainError(std::string(family_name(spec.family())) + " is continuous; use pdf");
    if (x < 0) throw DomainError("pmf argument " + std::to_string(x) + " outside support {0,1,...}");
    double total = 0.0;
    for (std::size_t i = 0; i < spec.k(); ++i)
        total += spec.weight_d(i) *
                 component_density(spec.family(), spec.shared(), spec.parameter_d(i), static_cast<double>(x));
    return total;
}

double pdf(const MixtureSpec& spec, double x) {
    if (is_discrete(spec.family()))
        throw DomainError(std::string(family_name(spec.family())) + " is discrete; use pmf");
    if (spec.family() == Family::ChiSquared && x < 0.0) throw DomainError("chi-squared density needs x >= 0");
    if (!std::isfinite(x)) throw DomainError("density argument must be finite");
    double total = 0.0;
    for (std::size_t i = 0; i < spec.k(); ++i)
        total += spec.weight_d(i) * component_density(spec.family(), spec.shared(), spec.parameter_d(i), x);
    return total;
}

double pmf_or_pdf(const MixtureSpec& spec, double x) {
    if (is_discrete(spec.family())) {
        if (!is_nonnegative_integer(x)) throw DomainError("discrete support is the nonnegative integers");
        return pmf(spec, static_cast<std::int64_t>(x));
    }
    return pdf(spec, x);
}

double component_cdf(Family family, const SharedParams& shared, double param, double x) {
    switch (family) {
    case Family::Gaussian:
        if (x == std::numeric_limits<double>::infinity()) return 1.0;
        if (x == -std::numeric_limits<double>::infinity()) return 0.0;
        return normal_cdf((x - param) / *shared.sigma);
    case Family::ChiSquared:
        if (x <= 0.0) return 0.0;
        if (x == std::numeric_limits<double>::infinity()) return 1.0;
        return boost::math::gamma_p(param / 2.0, x / 2.0);
    default:
        throw ContractError("cdf is provided for Gaussian and chi-squared families only");
    }
}

double cdf(const MixtureSpec& spec, double x) {
    if (spec.family() != Family::Gaussian && spec.family() != Family::ChiSquared)
        throw ContractError("cdf is provided for Gaussian and chi-squared families only");
    double total = 0.0;
    for (std::size_t i = 0; i < spec.k(); ++i)
        total += spec.weight_d(i) * component_cdf(spec.family(), spec.shared(), spec.parameter_d(i), x);
    return std::min(1.0, std::max(0.0, total));
}

double interval_probability(const MixtureSpec& spec, double lo, double hi) {
    if (hi < lo) return 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < spec.k(); ++i) {
        double param = spec.parameter_d(i);
        double p = 0.0;
        if (spec.family() == Family::Gaussian) {
            // Use the upper tail on the right of the mean to avoid cancellation.
            double sigma = *spec.shared().sigma;
            if (lo >= param)
                p = normal_cdf(-(lo - param) / sigma) - (std::isinf(hi) ? 0.0 : normal_cdf(-(hi - param) / sigma));
            else
                p = component_cdf(spec.family(), spec.shared(), param, hi) -
                    component_cdf(spec.family(), spec.shared(), param, lo);
        } else if (spec.family() == Family::ChiSquared) {
            double a = std::max(lo, 0.0);
            if (hi <= 0.0) {
                p = 0.0;
            } else {
                double upper_lo = a <= 0.0 ? 1.0 : boost::math::gamma_q(param / 2.0, a / 2.0);
                double upper_hi = std::isinf(hi) ? 0.0 : boost::math::gamma_q(param / 2.0, hi / 2.0);
                p = upper_lo - upper_hi;
            }
        } else {
            throw ContractError("interval probabilities are defined for continuous families");
        }
        total += spec.weight_d(i) * std::max(0.0, p);
    }
    return total;
}

} // namespace mixlearn
