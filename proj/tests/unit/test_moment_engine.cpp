#include <doctest.h>

#include "mixlearn/error.hpp"
#include "mixlearn/moments.hpp"
#include "mixlearn/polynomial.hpp"
#include "mixlearn/random.hpp"
#include "mixlearn/sample_plan.hpp"
#include "mixlearn/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace mixlearn;

namespace {

SampleDataset ints(std::vector<std::int64_t> v) {
    SampleDataset d;
    d.family = Family::Poisson;
    d.integers = std::move(v);
    return d;
}

SharedParams trials(std::int64_t n) {
    SharedParams s;
    s.trials = n;
    return s;
}

// ceil(q) for a positive rational, computed independently of the library.
BigInt ceil_pos(const Rational& q) {
    BigInt n = q.get_num(), d = q.get_den();
    return (n + d - 1) / d;
}

} // namespace

TEST_SUITE("moment-engine") {

TEST_CASE("estimate_moments examples") {
    auto m = estimate_moments(ints({0, 1, 2}), 2);
    CHECK(m.values[0] == 1);
    CHECK(m.values[2] == Rational(5, 3));
    CHECK(m.t == 3);
    CHECK(estimate_moments(ints({3, 3, 3, 3}), 5).values[5] == 243);
    CHECK_THROWS_AS(estimate_moments(ints({}), 2), DomainError);
    SampleDataset reals;
    reals.family = Family::Gaussian;
    reals.reals = {0.5};
    CHECK_THROWS(estimate_moments(reals, 2));
    CHECK_THROWS(estimate_moments(ints({1, -2}), 2));
}

TEST_CASE("estimate_moments is order independent") {
    Rng rng(9);
    std::vector<std::int64_t> v(5000);
    for (auto& x : v) x = static_cast<std::int64_t>(rng.next_u64() % 1000);
    auto a = estimate_moments(ints(v), 8);
    for (int r = 0; r < 3; ++r) {
        for (std::size_t i = v.size() - 1; i > 0; --i) std::swap(v[i], v[rng.next_u64() % (i + 1)]);
        CHECK(estimate_moments(ints(v), 8).values == a.values);
    }
    // Independent accumulation.
    BigInt s7 = 0;
    for (auto x : v) s7 += pow(BigInt(x), 7);
    CHECK(a.values[7] == Rational(s7, BigInt(static_cast<long>(v.size()))));
}

TEST_CASE("estimate_pmf examples") {
    auto p = estimate_pmf(ints({0, 0, 1}), 3);
    CHECK(p[0] == Rational(2, 3));
    CHECK(p[1] == Rational(1, 3));
    CHECK(p[2] == 0);
    CHECK(estimate_pmf(ints({5, 5, 5}), 6)[5] == 1);
    CHECK_THROWS_AS(estimate_pmf(ints({}), 1), DomainError);
}

TEST_CASE("round_to_lattice examples") {
    auto r = round_to_lattice(Rational(1543, 10000), Rational(1, 200));
    CHECK(r.rounded == Rational(31, 200));
    CHECK(r.residual == Rational(7, 50));
    CHECK_FALSE(r.warning);
    auto on = round_to_lattice(Rational(7, 20), Rational(1, 20));
    CHECK(on.rounded == Rational(7, 20));
    CHECK(on.residual == 0);
    auto tie = round_to_lattice(Rational(3, 40), Rational(1, 20));
    CHECK(tie.rounded == Rational(1, 10));
    CHECK(tie.residual == Rational(1, 2));
    CHECK(tie.warning);
    CHECK_THROWS(round_to_lattice(1, 0));
}

TEST_CASE("round_to_lattice absorbs perturbations below half a spacing") {
    Rng rng(17);
    for (int i = 0; i < 2000; ++i) {
        Rational s(1, static_cast<long>(1 + rng.next_u64() % 500));
        Rational x = s * Rational(static_cast<long>(rng.next_u64() % 10000) - 5000);
        // |delta| < s/2
        Rational delta = s * Rational(static_cast<long>(rng.next_u64() % 999) - 499, 1000);
        CHECK(round_to_lattice(x + delta, s).rounded == x);
    }
}

TEST_CASE("plan: binomial instances") {
    auto grid = ParameterGrid::binomial_p(Rational(1, 2));
    auto plan = plan_samples(Family::BinomialP, 2, grid, trials(10), 2, PlanScheme::Chebyshev);
    REQUIRE(plan.per_moment.size() == 2);
    CHECK(plan.per_moment[0].gamma == Rational(1, 8));
    CHECK(plan.per_moment[0].samples == 518400);
    // Formula: ceil(gamma^-2 n^(2l) 9^(1+T-l)), gamma = eps^l / (2k).
    auto expect = [](Rational eps, std::int64_t n, std::size_t k, unsigned T, unsigned l) {
        Rational gamma = pow(eps, l) / Rational(static_cast<long>(2 * k));
        return ceil_pos(pow(BigInt(n), 2 * l) * pow(BigInt(9), 1 + T - l) / (gamma * gamma));
    };
    CHECK(plan.per_moment[1].samples == expect(Rational(1, 2), 10, 2, 2, 2));
    CHECK(plan.total == plan.per_moment[1].samples);

    auto g4 = ParameterGrid::binomial_p(Rational(1, 4));
    auto p3 = plan_samples(Family::BinomialP, 3, g4, trials(9), 4, PlanScheme::Chebyshev);
    for (const auto& mp : p3.per_moment) CHECK(mp.samples == expect(Rational(1, 4), 9, 3, 4, mp.order));
    CHECK_THROWS_AS(plan_samples(Family::BinomialP, 2, grid, trials(10), 2, PlanScheme::Chernoff), ContractError);
}

TEST_CASE("plan: geometric moment instances") {
    // t = ceil(2 gamma^-2 (4l/p_min)^(2l+1) 9^(1+T-l)), p_min = 1/(1 + N eps).
    auto expect = [](Rational eps, std::int64_t N, std::size_t k, unsigned T, unsigned l) {
        Rational gamma = pow(eps, l) / Rational(static_cast<long>(2 * k));
        Rational inv_pmin = 1 + Rational(N) * eps;
        Rational base = Rational(4 * l) * inv_pmin;
        return ceil_pos(2 * pow(base, 2 * l + 1) * Rational(pow(BigInt(9), 1 + T - l)) / (gamma * gamma));
    };
    struct Case {
        Rational eps;
        std::int64_t N;
        std::size_t k;
        unsigned T;
    };
    for (const auto& c : {Case{1, 4, 2, 8}, Case{Rational(1, 2), 3, 1, 3}, Case{Rational(1, 3), 6, 3, 5}}) {
        auto plan = plan_samples(Family::GeometricU, c.k, ParameterGrid::geometric_u(c.eps, c.N), {}, c.T,
                                 PlanScheme::Chebyshev);
        REQUIRE(plan.per_moment.size() == c.T);
        for (const auto& mp : plan.per_moment) CHECK(mp.samples == expect(c.eps, c.N, c.k, c.T, mp.order));
    }
    // eps=1, N=4, k=2, T=8, l=1: gamma=1/4, 2*16*20^3*9^8 = 11019960576000
    auto p = plan_samples(Family::GeometricU, 2, ParameterGrid::geometric_u(1, 4), {}, 8, PlanScheme::Chebyshev);
    CHECK(p.per_moment[0].samples == BigInt("11019960576000"));
}

TEST_CASE("plan: geometric pmf instances") {
    auto grid = ParameterGrid::geometric_p(Rational(1, 2));
    auto plan = plan_samples(Family::GeometricP, 1, grid, {}, 1, PlanScheme::Chernoff);
    REQUIRE(plan.per_moment.size() == 2);
    CHECK(plan.per_moment[0].order == 0);
    CHECK(plan.per_moment[0].gamma == Rational(1, 4));
    CHECK(plan.per_moment[0].samples == 245);
    // ceil(3 gamma^-2 ln(2 * 9^(1+T-l))) in long double; none of these lie
    // near an integer.
    auto expect = [](long double eps, std::size_t k, unsigned T, unsigned l) {
        long double gamma = std::pow(eps, l + 1) / (2.0L * k);
        return static_cast<long>(std::ceil(3.0L / (gamma * gamma) * std::log(2.0L * std::pow(9.0L, 1 + T - l))));
    };
    CHECK(plan.per_moment[1].samples == expect(0.5L, 1, 1, 1));
    auto p2 = plan_samples(Family::GeometricP, 2, ParameterGrid::geometric_p(Rational(1, 4)), {}, 3,
                           PlanScheme::Chernoff);
    for (const auto& mp : p2.per_moment) CHECK(mp.samples == expect(0.25L, 2, 3, mp.order));
    CHECK_THROWS_AS(plan_samples(Family::GeometricP, 1, grid, {}, 1, PlanScheme::Chebyshev), ContractError);
}

TEST_CASE("plan invariants") {
    auto check = [](const SamplePlan& plan, std::size_t k, const Rational& eps, bool pmf) {
        Rational total = 0;
        for (const auto& mp : plan.per_moment) {
            Rational spacing = pow(eps, pmf ? mp.order + 1 : mp.order) / Rational(static_cast<long>(k));
            CHECK(mp.spacing == spacing);
            CHECK(mp.gamma <= spacing / 2);
            total += mp.failure_prob;
        }
        CHECK(total == plan.total_failure);
        CHECK(total < Rational(1, 8));
    };
    for (unsigned T = 1; T <= 6; ++T) {
        check(plan_samples(Family::BinomialP, 2, ParameterGrid::binomial_p(Rational(1, 4)), trials(10), T,
                           PlanScheme::Chebyshev), 2, Rational(1, 4), false);
        check(plan_samples(Family::GeometricP, 3, ParameterGrid::geometric_p(Rational(1, 5)), {}, T,
                           PlanScheme::Chernoff), 3, Rational(1, 5), true);
    }
    auto uniform = plan_samples(Family::BinomialP, 2, ParameterGrid::binomial_p(Rational(1, 2)), trials(10), 2,
                                PlanScheme::Chebyshev, Rational(1, 10));
    CHECK(uniform.per_moment[0].failure_prob == Rational(1, 10));
    CHECK(uniform.per_moment[0].samples == 64 * 100 * 10);
}

TEST_CASE("chebyshev guarantee at the planned sample size") {
    // k=2, n=10, eps=1/2, T=1: t_1 = 57600 samples, gamma_1 = 1/8.
    auto grid = ParameterGrid::binomial_p(Rational(1, 2));
    auto plan = plan_samples(Family::BinomialP, 2, grid, trials(10), 1, PlanScheme::Chebyshev);
    const auto& mp = plan.per_moment[0];
    MixtureSpec truth(grid, {1, 2}, trials(10));
    Rational exact = mixture_moment_exact(truth, 1);
    auto t = static_cast<std::size_t>(mp.samples.get_ui());
    int within = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto m = estimate_moments(sample(truth, t, 5000 + seed), 1);
        Rational err = m.values[1] - exact;
        if (abs(err) <= mp.gamma) ++within;
    }
    CHECK(within >= 95);
}

TEST_CASE("plan report") {
    auto plan = plan_samples(Family::BinomialP, 2, ParameterGrid::binomial_p(Rational(1, 2)), trials(10), 2,
                             PlanScheme::Chebyshev);
    std::string text = format_plan(plan);
    CHECK(text.find("order=1 gamma=1/8 delta=1/81 samples=518400") != std::string::npos);
    CHECK(text.find("total_samples=23040000") != std::string::npos);
}

} // TEST_SUITE
