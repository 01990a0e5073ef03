#pragma once

#include "mixlearn/mixture.hpp"

#include <cstdint>

namespace mixlearn {

// Density (continuous families) or mass (discrete families) of a single
// component with parameter value `param` (p, u, mean, rate, dof or r).
double component_density(Family family, const SharedParams& shared, double param, double x);

// Mixture mass at a nonnegative integer; DomainError for negative x or a
// continuous family. BinomialP values above n have mass 0.
double pmf(const MixtureSpec& spec, std::int64_t x);

// Mixture density; DomainError for discrete families or x outside support.
double pdf(const MixtureSpec& spec, double x);

// Dispatches to pmf or pdf. For discrete families x must be a nonnegative
// integer value.
double pmf_or_pdf(const MixtureSpec& spec, double x);

// Mixture CDF for Gaussian and ChiSquared families (absolute error ~1e-15
// from std::erfc / Boost.Math's regularized incomplete gamma).
double cdf(const MixtureSpec& spec, double x);
double component_cdf(Family family, const SharedParams& shared, double param, double x);

// Probability that a continuous mixture lands in [lo, hi]; accepts infinities.
double interval_probability(const MixtureSpec& spec, double lo, double hi);

// Standard normal CDF.
double normal_cdf(double z);

} // namespace mixlearn
