#include "mixlearn/sample_plan.hpp"

#include "mixlearn/error.hpp"

#include <mpfr.h>

#include <sstream>

namespace mixlearn {

namespace {

// ceil(factor * ln(arg)) for rational factor > 0 and arg > 1. ln(arg) is
// irrational, so the product is never an integer and 512 bits suffice to
// place it between consecutive integers at any desk-scale magnitude.
BigInt ceil_times_log(const Rational& factor, const Rational& arg) {
    mpfr_t x, f;
    mpfr_init2(x, 512);
    mpfr_init2(f, 512);
    mpfr_set_q(x, arg.get_mpq_t(), MPFR_RNDN);
    mpfr_log(x, x, MPFR_RNDN);
    mpfr_set_q(f, factor.get_mpq_t(), MPFR_RNDN);
    mpfr_mul(x, x, f, MPFR_RNDN);
    BigInt out;
    mpfr_get_z(out.get_mpz_t(), x, MPFR_RNDU);
    mpfr_clear(x);
    mpfr_clear(f);
    return out;
}

} // namespace

std::string_view scheme_name(PlanScheme scheme) {
    return scheme == PlanScheme::Chebyshev ? "chebyshev" : "chernoff";
}

PlanScheme parse_scheme(std::string_view name) {
    if (name == "chebyshev") return PlanScheme::Chebyshev;
    if (name == "chernoff") return PlanScheme::Chernoff;
    throw ParseError("unknown scheme '" + std::string(name) + "'");
}

SamplePlan plan_samples(Family family, std::size_t k, const ParameterGrid& grid, const SharedParams& shared,
                        unsigned T, PlanScheme scheme, std::optional<Rational> uniform_delta) {
    if (T < 1) throw DomainError("plan needs T >= 1");
    if (k < 1) throw DomainError("plan needs k >= 1");
    if (grid.family() != family)
        throw FamilyMismatchError("grid is " + std::string(family_name(grid.family())) + ", plan asks for " +
                                  std::string(family_name(family)));
    const bool chebyshev_ok = family == Family::BinomialP || family == Family::GeometricU;
    const bool chernoff_ok = family == Family::GeometricP;
    if ((scheme == PlanScheme::Chebyshev && !chebyshev_ok) || (scheme == PlanScheme::Chernoff && !chernoff_ok))
        throw ContractError("no " + std::string(scheme_name(scheme)) + " plan for " + std::string(family_name(family)));
    if (uniform_delta && (sgn(*uniform_delta) <= 0 || *uniform_delta >= 1))
        throw DomainError("delta must lie in (0, 1)");

    std::optional<std::int64_t> n;
    if (family == Family::BinomialP) {
        if (!shared.trials) throw ContractError("binomial plan needs n");
        n = *shared.trials;
    }

    const Rational eps = grid.step();
    const Rational kk(static_cast<long>(k));
    SamplePlan plan;
    plan.family = family;
    plan.scheme = scheme;
    plan.T = T;
    plan.total = 0;
    plan.total_failure = 0;

    const unsigned first = family == Family::GeometricP ? 0 : 1;
    for (unsigned l = first; l <= T; ++l) {
        MomentPlan mp;
        mp.order = l;
        mp.spacing = (family == Family::GeometricP ? pow(eps, l + 1) : pow(eps, l)) / kk;
        mp.gamma = mp.spacing / 2;
        mp.failure_prob = uniform_delta ? *uniform_delta : Rational(1) / Rational(pow(BigInt(9), 1 + T - l));
        const Rational inv_gamma2 = 1 / (mp.gamma * mp.gamma);
        const Rational inv_delta = 1 / mp.failure_prob;
        switch (family) {
        case Family::BinomialP:
            mp.samples = ceil(Rational(inv_gamma2 * Rational(pow(BigInt(*n), 2 * l)) * inv_delta));
            break;
        case Family::GeometricU: {
            // p_min = 1 / (1 + max_index * eps), so 4l / p_min = 4l (1 + max_index * eps).
            Rational base = Rational(4 * static_cast<long>(l)) * grid.value(grid.max_index());
            mp.samples = ceil(Rational(2 * inv_gamma2 * pow(base, 2 * l + 1) * inv_delta));
            break;
        }
        default:
            mp.samples = ceil_times_log(Rational(3 * inv_gamma2), Rational(2 * inv_delta));
            break;
        }
        if (mp.samples > plan.total) plan.total = mp.samples;
        plan.total_failure += mp.failure_prob;
        plan.per_moment.push_back(mp);
    }
    return plan;
}

std::string format_plan(const SamplePlan& plan) {
    std::ostringstream os;
    os << "family=" << family_name(plan.family) << '\n'
       << "scheme=" << scheme_name(plan.scheme) << '\n'
       << "T=" << plan.T << '\n';
    for (const auto& mp : plan.per_moment)
        os << "order=" << mp.order << " gamma=" << to_string(mp.gamma) << " delta=" << to_string(mp.failure_prob)
           << " samples=" << to_string(mp.samples) << '\n';
    os << "total_samples=" << to_string(plan.total) << '\n'
       << "total_failure=" << to_string(plan.total_failure) << '\n';
    return os.str();
}

} // namespace mixlearn
