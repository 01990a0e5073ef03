#include "mixlearn/gtransform.hpp"

#include "mixlearn/distributions.hpp"
#include "mixlearn/error.hpp"
#include "mixlearn/tv.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace mixlearn {

namespace {

using cd = std::complex<double>;

double nb_success(const SharedParams& shared) { return to_double(*shared.nb_p); }

} // namespace

GTransform::GTransform(Family family, SharedParams shared, double t) : family_(family), shared_(std::move(shared)), t_(t) {
    if (!is_analytic(family))
        throw ContractError("no G-transform for " + std::string(family_name(family)));
    validate_shared(family, shared_);
}

cd GTransform::operator()(double x) const {
    const cd i(0.0, 1.0);
    switch (family_) {
    case Family::Gaussian:
        return std::exp(i * t_ * x);
    case Family::Poisson:
        return std::pow(cd(1.0, t_), x);
    case Family::ChiSquared:
        return std::exp(x / 2.0 - x * std::exp(-2.0 * i * t_) / 2.0);
    default: {
        double p = nb_success(shared_);
        cd w = 1.0 / p - (1.0 / p - 1.0) * std::exp(-i * t_);
        return std::pow(w, x);
    }
    }
}

double GTransform::growth_base() const {
    switch (family_) {
    case Family::Gaussian:
        return 1.0;
    case Family::Poisson:
        return std::sqrt(1.0 + t_ * t_);
    case Family::ChiSquared:
        return std::exp((1.0 - std::cos(2.0 * t_)) / 2.0);
    default: {
        double p = nb_success(shared_);
        double s = std::sin(t_ / 2.0);
        return std::sqrt(p * p + 4.0 * (1.0 - p) * s * s) / p;
    }
    }
}

double GTransform::modulus(double x) const { return std::pow(growth_base(), x); }

cd GTransform::expectation(double theta) const {
    cd z_theta = std::exp(cd(0.0, t_ * theta));
    if (family_ == Family::Gaussian) {
        double sigma = *shared_.sigma;
        return std::exp(-sigma * sigma * t_ * t_ / 2.0) * z_theta;
    }
    return z_theta;
}

cd GTransform::expectation_numeric(double theta, double tol) const {
    const cd i(0.0, 1.0);
    switch (family_) {
    case Family::Gaussian: {
        double sigma = *shared_.sigma;
        auto part = [&](bool imag) {
            auto f = [&](double x) {
                double d = component_density(family_, shared_, theta, x);
                return d * (imag ? std::sin(t_ * x) : std::cos(t_ * x));
            };
            return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, theta - 40.0 * sigma,
                                                                                 theta + 40.0 * sigma, 20, 1e-14);
        };
        return {part(false), part(true)};
    }
    case Family::ChiSquared: {
        double c2 = std::cos(2.0 * t_);
        if (c2 <= 0.0) throw DomainError("chi-squared G-transform diverges for |t| >= pi/4");
        double half = theta / 2.0;
        double log_norm = half * std::numbers::ln2 + std::lgamma(half);
        double s2 = std::sin(2.0 * t_);
        // density times G_t: x^(l/2-1) exp(-x e^{-2it}/2) / (2^(l/2) Gamma(l/2))
        auto part = [&](bool imag) {
            auto f = [&](double x) {
                double mag = std::exp((half - 1.0) * std::log(x) - x * c2 / 2.0 - log_norm);
                double phase = x * s2 / 2.0;
                return mag * (imag ? std::sin(phase) : std::cos(phase));
            };
            boost::math::quadrature::exp_sinh<double> integrator;
            return integrator.integrate(f, 0.0, std::numeric_limits<double>::infinity(), 1e-13);
        };
        return {part(false), part(true)};
    }
    case Family::Poisson:
    case Family::NegBinomial: {
        const double rho = growth_base();
        const bool nb = family_ == Family::NegBinomial;
        const double p = nb ? nb_success(shared_) : 0.0;
        if (nb && p * rho >= 1.0) throw DomainError("negative-binomial G-transform diverges at this t");
        // Certificate base: must dominate |G_t| and keep E[a^(2X)] finite.
        double a = rho > 1.0 ? rho : (nb ? std::min(1.5, std::sqrt((1.0 + 1.0 / p) / 2.0)) : 1.5);
        const bool certified = !nb || p * a * a < 1.0;
        const cd w = nb ? cd(1.0 / p) - (1.0 / p - 1.0) * std::exp(-i * t_) : cd(1.0, t_);
        cd sum = 0.0;
        for (std::int64_t x = 0;; ++x) {
            double xd = static_cast<double>(x);
            double mass = component_density(family_, shared_, theta, xd);
            sum += std::pow(w, xd) * mass;
            double tail;
            if (certified) {
                tail = tail_certificate(family_, shared_, theta, a, xd + 1.0);
            } else {
                // successive term ratios p|w|(x+r)/(x+1) decrease, so the rest
                // is dominated by a geometric series
                double q = p * rho * (xd + theta) / (xd + 1.0);
                tail = q < 1.0 ? mass * std::pow(rho, xd) * q / (1.0 - q) : INFINITY;
            }
            if (x > 1 && tail <= tol) break;
            if (x > 10000000) throw DomainError("G-transform sum did not converge");
        }
        return sum;
    }
    default:
        throw ContractError("no G-transform for " + std::string(family_name(family_)));
    }
}

} // namespace mixlearn
