#pragma once

#include "mixlearn/mixture.hpp"

#include <complex>

namespace mixlearn {

// G_t with E[G_t(X)] = (family factor) * z^theta, z = exp(it):
//   Gaussian            exp(itx),                     factor exp(-sigma^2 t^2 / 2)
//   Poisson             (1 + it)^x
//   chi-squared         exp(x/2 - x exp(-2it)/2)      (needs |t| < pi/4)
//   negative binomial   (1/p - (1/p - 1) exp(-it))^x  (needs p |w| < 1)
// Factors other than the Gaussian one are 1.
class GTransform {
public:
    // ContractError for families without a transform.
    GTransform(Family family, SharedParams shared, double t);

    Family family() const noexcept { return family_; }
    double t() const noexcept { return t_; }

    std::complex<double> operator()(double x) const;

    // Exact |G_t(x)|: 1, (1+t^2)^(x/2), exp(x (1 - cos 2t) / 2), |w|^x with
    // |w|^2 = (p^2 + 4 (1-p) sin^2(t/2)) / p^2.
    double modulus(double x) const;

    // |G_t(x)| = base^x for the count families and chi-squared; 1 for Gaussian.
    double growth_base() const;

    // Closed form of E[G_t(X)] for one component with parameter theta.
    std::complex<double> expectation(double theta) const;

    // The same expectation by a truncated sum (tail cut by the tail
    // certificate at `tol`) or by quadrature for the continuous families.
    // DomainError where the expectation diverges.
    std::complex<double> expectation_numeric(double theta, double tol = 1e-12) const;

private:
    Family family_;
    SharedParams shared_;
    double t_;
};

} // namespace mixlearn
