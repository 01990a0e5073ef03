#include "mixlearn/sampler.hpp"

#include "mixlearn/error.hpp"
#include "mixlearn/parallel.hpp"
#include "mixlearn/random.hpp"

#include <cmath>
#include <limits>

namespace mixlearn {

namespace {

constexpr double kPoissonInversionLimit = 30.0;

std::int64_t poisson_by_inversion(Rng& rng, double rate) {
    if (rate == 0.0) return 0;
    double u = rng.uniform();
    double p = std::exp(-rate);
    double cumulative = p;
    std::int64_t x = 0;
    // The loop bound guards against u landing in the unrepresentable tail.
    while (u >= cumulative && x < 100000) {
        ++x;
        p *= rate / static_cast<double>(x);
        cumulative += p;
        if (p == 0.0 && cumulative <= u) break;
    }
    return x;
}

std::int64_t draw_poisson(Rng& rng, double rate) {
    std::int64_t total = 0;
    while (rate > kPoissonInversionLimit) {
        total += poisson_by_inversion(rng, kPoissonInversionLimit);
        rate -= kPoissonInversionLimit;
    }
    return total + poisson_by_inversion(rng, rate);
}

// Number of failures before the first success, success probability p.
std::int64_t draw_geometric(Rng& rng, double p) {
    if (p >= 1.0) return 0;
    double u = rng.uniform_open_low();
    double x = std::floor(std::log(u) / std::log1p(-p));
    if (x > static_cast<double>(std::numeric_limits<std::int64_t>::max() / 2))
        throw DomainError("geometric draw overflow");
    return static_cast<std::int64_t>(x);
}

std::int64_t draw_binomial(Rng& rng, std::int64_t n, double p) {
    if (p <= 0.0) return 0;
    if (p >= 1.0) return n;
    std::int64_t successes = 0;
    for (std::int64_t i = 0; i < n; ++i)
        if (rng.uniform() < p) ++successes;
    return successes;
}

} // namespace

SampleDataset sample(const MixtureSpec& spec, std::size_t count, std::uint64_t seed) {
    if (count == 0) throw DomainError("sample count must be at least 1");
    const Family family = spec.family();
    for (std::size_t i = 0; i < spec.k(); ++i) {
        if (family == Family::GeometricP && spec.parameter(i) == 0)
            throw DomainError("geometric component with p = 0 has no finite draws");
    }

    std::vector<double> cumulative(spec.k());
    double acc = 0.0;
    for (std::size_t i = 0; i < spec.k(); ++i) {
        acc += spec.weight_d(i);
        cumulative[i] = acc;
    }
    cumulative.back() = 1.0;

    std::vector<double> params(spec.k());
    for (std::size_t i = 0; i < spec.k(); ++i) params[i] = spec.parameter_d(i);
    const double nb_p = family == Family::NegBinomial ? to_double(*spec.shared().nb_p) : 0.0;
    const double sigma = family == Family::Gaussian ? *spec.shared().sigma : 0.0;
    const std::int64_t trials = family == Family::BinomialP ? *spec.shared().trials : 0;

    SampleDataset out;
    out.family = family;
    out.seed = seed;
    const bool discrete = is_discrete(family);
    if (discrete)
        out.integers.resize(count);
    else
        out.reals.resize(count);

    const std::size_t chunks = (count + kSampleChunk - 1) / kSampleChunk;
    parallel_for(chunks, [&](std::size_t chunk) {
        Rng rng(derive_seed(seed, chunk));
        const std::size_t begin = chunk * kSampleChunk;
        const std::size_t end = std::min(count, begin + kSampleChunk);
        for (std::size_t j = begin; j < end; ++j) {
            std::size_t c = spec.k() == 1 ? 0 : rng.categorical(cumulative.data(), cumulative.size());
            double param = params[c];
            switch (family) {
            case Family::BinomialP:
                out.integers[j] = draw_binomial(rng, trials, param);
                break;
            case Family::Poisson:
                out.integers[j] = draw_poisson(rng, param);
                break;
            case Family::GeometricP:
                out.integers[j] = draw_geometric(rng, param);
                break;
            case Family::GeometricU:
                out.integers[j] = draw_geometric(rng, 1.0 / param);
                break;
            case Family::NegBinomial: {
                // Successes (probability nb_p each) before r failures.
                std::int64_t total = 0;
                auto r = static_cast<std::int64_t>(param);
                for (std::int64_t i = 0; i < r; ++i) total += draw_geometric(rng, 1.0 - nb_p);
                out.integers[j] = total;
                break;
            }
            case Family::Gaussian:
                out.reals[j] = param + sigma * rng.normal();
                break;
            case Family::ChiSquared: {
                double total = 0.0;
                auto dof = static_cast<std::int64_t>(param);
                for (std::int64_t i = 0; i < dof; ++i) {
                    double z = rng.normal();
                    total += z * z;
                }
                out.reals[j] = total;
                break;
            }
            }
        }
    });
    return out;
}

} // namespace mixlearn
