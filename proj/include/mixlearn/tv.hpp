#pragma once

#include "mixlearn/mixture.hpp"

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace mixlearn {

// Two-sided enclosure of a total-variation distance.
struct TvInterval {
    double lo = 0.0;
    double hi = 0.0;
    // Discrete families: sum runs over [0, x_max]; continuous: -1.
    std::int64_t x_max = -1;
    // Mass bound on the omitted range (discrete) or the numerical error
    // budget (continuous).
    double tail_bound = 0.0;
};

struct TvCertificate {
    std::string method; // "charfn" or "g-transform"
    double witness_t = 0.0;
    double value = 0.0; // proven lower bound on TV
    double tail_term = 0.0;
    double L = 1.0;
};

// E[a^(2X)] / a^(r-1), an upper bound on sum_{x >= r} a^x f(x), for one
// discrete component. ContractError for continuous families,
// CertificateUnavailableError when E[a^(2X)] diverges.
double tail_certificate(Family family, const SharedParams& shared, double param, double a, double r);

// Weighted sum of the component certificates.
double tail_certificate(const MixtureSpec& spec, double a, double r);

// Smallest x_max such that the certified mass above x_max is at most
// `mass_tol`. Binomial mixtures return n. The bound used is written to
// `tail_mass` when given.
std::int64_t truncation_point(const MixtureSpec& spec, double mass_tol, double* tail_mass = nullptr);

// Closed-form characteristic function E[exp(itX)] of a mixture.
std::complex<double> characteristic_function(const MixtureSpec& spec, double t);

// Sign structure of a(x) - b(x) for continuous mixtures: region i spans
// [cuts[i-1], cuts[i]] (with the support ends outside) and has sign
// signs[i] in {-1, 0, 1}. Sign changes are found by a scan with step
// sigma/100 (1/100 for chi-squared, log-spaced near 0) and bisected to
// `tol`.
struct SignRegions {
    double support_lo = 0.0;
    std::vector<double> cuts;
    std::vector<int> signs;
};
SignRegions density_sign_regions(const MixtureSpec& a, const MixtureSpec& b, double tol);

// TV interval of width at most `tol`. FamilyMismatchError for incompatible
// specs; DomainError for tol <= 0.
TvInterval tv_exact(const MixtureSpec& a, const MixtureSpec& b, double tol);

// (1/2) max |C_a(t) - C_b(t)| over a uniform grid of t in [-pi/L, pi/L].
TvCertificate tv_lower_bound_charfn(const MixtureSpec& a, const MixtureSpec& b, double L, int grid_points);

// TV >= (|E_a G_t - E_b G_t| - Omega') / (2 max_{x<r} |G_t(x)|), maximised
// over a t grid in [-pi/L, pi/L] and the cut r; Omega' bounds the mass of
// |G_t| beyond r through tail certificates. Gaussian, Poisson and negative
// binomial; other families raise CertificateUnavailableError.
TvCertificate tv_lower_bound_gtransform(const MixtureSpec& a, const MixtureSpec& b, double L, int grid_points);

std::string format_certificate(const TvCertificate& cert);
std::string format_interval(const TvInterval& tv);

} // namespace mixlearn
