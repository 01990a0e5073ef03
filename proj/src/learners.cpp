#include "mixlearn/learners.hpp"

#include "mixlearn/error.hpp"
#include "mixlearn/identifiability.hpp"
#include "mixlearn/moments.hpp"
#include "mixlearn/polynomial.hpp"
#include "mixlearn/power_sums.hpp"
#include "mixlearn/scheffe.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace mixlearn {

namespace {

void check_observation(const Observation& obs, Family family) {
    if (obs.oracle()) {
        if (obs.truth().family() != family)
            throw FamilyMismatchError("truth is " + std::string(family_name(obs.truth().family())) + ", learner expects " +
                                      std::string(family_name(family)));
        return;
    }
    if (obs.data().empty()) throw DomainError("dataset is empty");
    if (obs.data().family != family)
        throw FamilyMismatchError("data is " + std::string(family_name(obs.data().family)) + ", learner expects " +
                                  std::string(family_name(family)));
}

// Observed moments or point masses for orders 0..T plus their standard errors.
struct Observed {
    std::vector<Rational> values;
    std::vector<double> se;
    std::size_t samples = 0;
};

Observed observe(const Observation& obs, unsigned T, bool point_masses) {
    Observed out;
    if (obs.oracle()) {
        for (unsigned l = 0; l <= T; ++l)
            out.values.push_back(point_masses ? mixture_pmf_exact(obs.truth(), l) : mixture_moment_exact(obs.truth(), l));
        out.se.assign(T + 1, 0.0);
        return out;
    }
    ValueHistogram hist = histogram(obs.data());
    out.samples = obs.data().size();
    if (point_masses) {
        out.values = estimate_pmf(hist, T);
        out.se = pmf_standard_errors(hist, T);
    } else {
        out.values = estimate_moments(hist, T).values;
        out.se = moment_standard_errors(hist, T);
    }
    return out;
}

// Rows up to always_through are always kept; later rows while the standard
// error of the power sum they introduce (leading(l) is the magnitude of its
// coefficient) stays within se_limit. Returns the last row kept.
unsigned noise_cutoff(const Observed& obs, unsigned always_through, unsigned T, std::size_t k, double se_limit,
                      const std::function<double(unsigned)>& leading) {
    unsigned last = always_through;
    for (unsigned l = always_through + 1; l <= T; ++l) {
        double se_m = static_cast<double>(k) * obs.se[l] / leading(l);
        if (!(se_m <= se_limit)) break;
        last = l;
    }
    return last;
}

void note_residual(LearnResult& r, const Rational& residual) {
    double v = to_double(residual);
    r.residuals.push_back(v);
    r.max_residual = std::max(r.max_residual, v);
}

LearnResult finish(LearnResult r, const Observation& obs) {
    std::sort(r.recovered.begin(), r.recovered.end());
    if (obs.oracle()) r.exact_match = r.recovered == obs.truth().indices();
    return r;
}

} // namespace

std::string_view method_name(LearnMethod method) {
    switch (method) {
    case LearnMethod::Moments:
        return "moments";
    case LearnMethod::Pmf:
        return "pmf";
    case LearnMethod::Mde:
        return "mde";
    }
    return "unknown";
}

LearnMethod parse_method(std::string_view name) {
    if (name == "moments") return LearnMethod::Moments;
    if (name == "pmf") return LearnMethod::Pmf;
    if (name == "mde") return LearnMethod::Mde;
    throw ParseError("unknown method '" + std::string(name) + "'");
}

unsigned moment_order_for_step(const Rational& eps) {
    if (sgn(eps) <= 0) throw DomainError("eps must be positive");
    unsigned T = 1;
    while (Rational(T * T) * eps < 16) ++T;
    return T;
}

LearnResult learn_binomial_moments(const Observation& obs, std::int64_t n, const Rational& eps, std::size_t k,
                                   const MomentOptions& options) {
    check_observation(obs, Family::BinomialP);
    if (k < 1) throw DomainError("k must be at least 1");
    if (static_cast<std::int64_t>(k) > n)
        throw DegeneracyError("k = " + std::to_string(k) + " components need n >= k (n = " + std::to_string(n) + ")");
    Rational inv = 1 / eps;
    ParameterGrid grid = is_integer(inv) ? ParameterGrid::binomial_p(eps)
                                         : ParameterGrid(Family::BinomialP, eps, 0, to_int64(floor(inv)));
    SharedParams shared;
    shared.trials = n;

    LearnResult r;
    r.method = LearnMethod::Moments;
    unsigned T = options.T.value_or(std::max<unsigned>(static_cast<unsigned>(k), moment_order_for_step(eps)));
    T = static_cast<unsigned>(std::min<std::int64_t>(T, n));
    r.T_requested = T;

    Observed o = observe(obs, T, false);
    r.samples = o.samples;
    const double eps_d = to_double(eps);
    unsigned used = noise_cutoff(o, std::min<unsigned>(static_cast<unsigned>(k), T), T, k, options.se_limit,
                                 [&](unsigned l) { return to_double(falling_factorial(n, l)) * std::pow(eps_d, l); });
    r.T_used = used;

    std::vector<Rational> moments(o.values.begin(), o.values.begin() + used + 1);
    if (grid.inverse_step_integral()) {
        for (unsigned l = 1; l <= used; ++l) {
            LatticeRounding lr = round_to_lattice(moments[l], pow(eps, l) / Rational(static_cast<long>(k)));
            moments[l] = lr.rounded;
            note_residual(r, lr.residual);
            if (lr.warning) ++r.warnings;
        }
    }
    PowerSumSolve solve = moments_to_power_sums(moments, grid, shared, k);
    for (const auto& res : solve.residuals) note_residual(r, res);
    r.recovered = reconstruct_multiset(solve.sums, grid.min_index(), grid.max_index(), k);
    return finish(std::move(r), obs);
}

LearnResult learn_geometric(const Observation& obs, const ParameterGrid& grid, std::size_t k, LearnMethod variant,
                            const MomentOptions& options) {
    if (k < 1) throw DomainError("k must be at least 1");
    const Rational eps = grid.step();
    const double eps_d = to_double(eps);
    LearnResult r;
    r.method = variant;
    if (variant == LearnMethod::Moments) {
        if (grid.family() != Family::GeometricU)
            throw ContractError("the moments variant needs a geometric-u grid");
        check_observation(obs, Family::GeometricU);
        unsigned bound = grid.max_index() >= 1 ? log_of_theorem_bound(grid.max_index(), 2, IdentMode::Sets) : 1;
        unsigned T = options.T.value_or(std::max<unsigned>(static_cast<unsigned>(k), bound));
        r.T_requested = T;
        Observed o = observe(obs, T, false);
        r.samples = o.samples;
        unsigned used = noise_cutoff(o, std::min<unsigned>(static_cast<unsigned>(k), T), T, k, options.se_limit,
                                     [&](unsigned l) { return to_double(factorial(l)) * std::pow(eps_d, l); });
        r.T_used = used;
        std::vector<Rational> moments(o.values.begin(), o.values.begin() + used + 1);
        if (grid.inverse_step_integral()) {
            for (unsigned l = 1; l <= used; ++l) {
                LatticeRounding lr = round_to_lattice(moments[l], pow(eps, l) / Rational(static_cast<long>(k)));
                moments[l] = lr.rounded;
                note_residual(r, lr.residual);
                if (lr.warning) ++r.warnings;
            }
        }
        PowerSumSolve solve = moments_to_power_sums(moments, grid, {}, k);
        for (const auto& res : solve.residuals) note_residual(r, res);
        r.recovered = reconstruct_multiset(solve.sums, grid.min_index(), grid.max_index(), k);
        return finish(std::move(r), obs);
    }
    if (variant != LearnMethod::Pmf) throw ContractError("geometric learners use the moments or pmf variant");
    if (grid.family() != Family::GeometricP) throw ContractError("the pmf variant needs a geometric-p grid");
    check_observation(obs, Family::GeometricP);
    unsigned T = options.T.value_or(std::max<unsigned>(static_cast<unsigned>(k), moment_order_for_step(eps)));
    r.T_requested = T;
    // P_0..P_(T-1) determine m_1..m_T
    Observed o = observe(obs, T - 1, true);
    r.samples = o.samples;
    const unsigned always = std::min<unsigned>(static_cast<unsigned>(k), T) - 1;
    unsigned last = noise_cutoff(o, always, T - 1, k, options.se_limit,
                                 [&](unsigned l) { return std::pow(eps_d, l + 1); });
    r.T_used = last + 1;
    std::vector<Rational> probs(o.values.begin(), o.values.begin() + last + 1);
    if (grid.inverse_step_integral()) {
        for (unsigned l = 0; l <= last; ++l) {
            LatticeRounding lr = round_to_lattice(probs[l], pow(eps, l + 1) / Rational(static_cast<long>(k)));
            probs[l] = lr.rounded;
            note_residual(r, lr.residual);
            if (lr.warning) ++r.warnings;
        }
    }
    PowerSumSolve solve = pmf_to_power_sums(probs, grid, k);
    for (const auto& res : solve.residuals) note_residual(r, res);
    r.recovered = reconstruct_multiset(solve.sums, grid.min_index(), grid.max_index(), k);
    return finish(std::move(r), obs);
}

LearnResult learn_mde(const Observation& obs, const ParameterGrid& grid, std::size_t k, const SharedParams& shared,
                      std::size_t cap) {
    check_observation(obs, grid.family());
    auto candidates = candidate_family(grid, k, true, shared, cap);
    MdeResult mde = obs.oracle() ? mde_select(candidates, obs.truth()) : mde_select(candidates, obs.data());
    LearnResult r;
    r.method = LearnMethod::Mde;
    r.recovered = candidates[mde.winner].indices();
    r.delta = mde.delta;
    r.samples = obs.oracle() ? 0 : obs.data().size();
    return finish(std::move(r), obs);
}

LearnResult learn(const Observation& obs, LearnMethod method, const ParameterGrid& grid, std::size_t k,
                  const SharedParams& shared, const MomentOptions& options, std::size_t cap) {
    const Family family = grid.family();
    switch (method) {
    case LearnMethod::Moments:
        if (family == Family::BinomialP) {
            if (!shared.trials) throw ContractError("binomial learner needs n");
            if (grid.min_index() != 0) throw ContractError("binomial moments learner needs a grid starting at 0");
            return learn_binomial_moments(obs, *shared.trials, grid.step(), k, options);
        }
        if (family == Family::GeometricU) return learn_geometric(obs, grid, k, method, options);
        break;
    case LearnMethod::Pmf:
        if (family == Family::GeometricP) return learn_geometric(obs, grid, k, method, options);
        break;
    case LearnMethod::Mde:
        return learn_mde(obs, grid, k, shared, cap);
    }
    throw ContractError("method " + std::string(method_name(method)) + " does not apply to " +
                        std::string(family_name(family)));
}

std::size_t mde_sample_size(std::size_t candidates, double delta, double C) {
    if (candidates == 0) throw DomainError("no candidates");
    if (!(delta > 0.0) || !(C > 0.0)) throw DomainError("delta and C must be positive");
    double m = C * std::log(static_cast<double>(std::max<std::size_t>(candidates, 2))) / (delta * delta);
    return static_cast<std::size_t>(std::ceil(m));
}

ParameterGrid gaussian_grid_from_data(const SampleDataset& data, const Rational& eps, double sigma) {
    if (data.reals.empty()) throw DomainError("dataset is empty");
    if (!(sigma > 0.0)) throw DomainError("sigma must be positive");
    auto [lo_it, hi_it] = std::minmax_element(data.reals.begin(), data.reals.end());
    const double e = to_double(eps);
    auto lo = static_cast<std::int64_t>(std::floor((*lo_it - 4.0 * sigma) / e));
    auto hi = static_cast<std::int64_t>(std::ceil((*hi_it + 4.0 * sigma) / e));
    return ParameterGrid::gaussian(eps, lo, hi);
}

std::string format_learn(const LearnResult& r, const ParameterGrid& grid) {
    std::ostringstream os;
    os.precision(17);
    os << "method=" << method_name(r.method) << '\n' << "recovered=" << format_indices(r.recovered, ',') << '\n';
    os << "parameters=";
    for (std::size_t i = 0; i < r.recovered.size(); ++i) os << (i ? "," : "") << to_string(grid.value(r.recovered[i]));
    os << '\n';
    if (r.method == LearnMethod::Mde) {
        os << "delta=" << r.delta << '\n';
    } else {
        os << "T_requested=" << r.T_requested << '\n'
           << "T_used=" << r.T_used << '\n'
           << "max_residual=" << r.max_residual << '\n'
           << "lattice_warnings=" << r.warnings << '\n';
    }
    os << "samples=" << r.samples << '\n';
    if (r.exact_match) os << "exact_match=" << (*r.exact_match ? "true" : "false") << '\n';
    return os.str();
}

} // namespace mixlearn
