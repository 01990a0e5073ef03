#include <doctest.h>

#include "mixlearn/distributions.hpp"
#include "mixlearn/error.hpp"
#include "mixlearn/moments.hpp"
#include "mixlearn/polynomial.hpp"
#include "mixlearn/sampler.hpp"
#include "mixlearn/tv.hpp"

#include <cmath>

using namespace mixlearn;

namespace {

SharedParams trials(std::int64_t n) {
    SharedParams s;
    s.trials = n;
    return s;
}

SharedParams sigma(double v) {
    SharedParams s;
    s.sigma = v;
    return s;
}

} // namespace

TEST_SUITE("mixture-core") {

TEST_CASE("grid index maps") {
    auto bin = ParameterGrid::binomial_p(Rational(1, 4));
    CHECK(bin.size() == 5);
    CHECK(bin.value(3) == Rational(3, 4));
    CHECK(bin.inverse_step_integral());
    auto geo = ParameterGrid::geometric_u(Rational(1, 2), 4);
    CHECK(geo.value(0) == 1);
    CHECK(geo.value(4) == 3);
    CHECK(ParameterGrid::poisson(5).value(5) == 5);
    CHECK(ParameterGrid::chi_squared(4).min_index() == 1);
    CHECK(ParameterGrid::gaussian(Rational(1, 2), -2, 2).value(-2) == -1);
    CHECK_THROWS_AS(ParameterGrid(Family::BinomialP, Rational(1, 3), 0, 4), DomainError);
    CHECK_THROWS_AS(ParameterGrid(Family::Poisson, 1, 3, 2), DomainError);
    CHECK_THROWS_AS(ParameterGrid::binomial_p(Rational(2, 5)), DomainError);
}

TEST_CASE("mixture spec validation") {
    auto grid = ParameterGrid::poisson(5);
    MixtureSpec spec(grid, {4, 1});
    CHECK(spec.indices() == std::vector<std::int64_t>{1, 4});
    CHECK(spec.weights()[0] == Rational(1, 2));
    CHECK_THROWS_AS(MixtureSpec(grid, {1, 1}), DomainError);
    CHECK_THROWS_AS(MixtureSpec(grid, {1, 9}), DomainError);
    CHECK_THROWS_AS(MixtureSpec(grid, {1, 2}, {Rational(1, 3), Rational(1, 3)}, {}), DomainError);
    CHECK_NOTHROW(MixtureSpec(grid, {1, 2}, {Rational(1, 3), Rational(2, 3)}, {}));
    // Moment families allow repeated indices.
    CHECK_NOTHROW(MixtureSpec(ParameterGrid::binomial_p(Rational(1, 2)), {1, 1}, trials(4)));
    CHECK_THROWS_AS(MixtureSpec(ParameterGrid::binomial_p(Rational(1, 2)), {1}), DomainError);
}

TEST_CASE("pmf examples") {
    CHECK(pmf(MixtureSpec(ParameterGrid::poisson(3), {0}), 0) == doctest::Approx(1.0));
    MixtureSpec bin(ParameterGrid::binomial_p(Rational(1, 2)), {1}, trials(2));
    CHECK(pmf(bin, 1) == doctest::Approx(0.5));
    CHECK(mixture_pmf_exact(bin, 1) == Rational(1, 2));
    MixtureSpec geo(ParameterGrid::geometric_p(Rational(1, 2)), {1});
    CHECK(pmf(geo, 2) == doctest::Approx(0.125));
    CHECK(mixture_pmf_exact(geo, 2) == Rational(1, 8));
    CHECK_THROWS_AS(pmf(bin, -1), DomainError);
}

TEST_CASE("pmf sums to one with certified remainder") {
    std::vector<MixtureSpec> specs = {
        MixtureSpec(ParameterGrid::poisson(5), {1, 4}),
        MixtureSpec(ParameterGrid::geometric_p(Rational(1, 4)), {1, 3}),
        MixtureSpec(ParameterGrid::geometric_u(Rational(1), 4), {0, 4}),
        MixtureSpec(ParameterGrid::binomial_p(Rational(1, 2)), {1, 2}, trials(10)),
    };
    SharedParams nb;
    nb.nb_p = Rational(1, 3);
    specs.emplace_back(ParameterGrid::neg_binomial(4), std::vector<std::int64_t>{2, 4}, nb);
    for (const auto& spec : specs) {
        double tail = 0.0;
        std::int64_t x_max = truncation_point(spec, 1e-10, &tail);
        double partial = 0.0;
        for (std::int64_t x = 0; x <= x_max; ++x) partial += pmf(spec, x);
        CHECK(tail <= 1e-10);
        CHECK(1.0 - partial <= tail + 1e-12);
        CHECK(partial <= 1.0 + 1e-12);
    }
}

TEST_CASE("cdf examples") {
    auto g = ParameterGrid::gaussian(1, -5, 5);
    CHECK(cdf(MixtureSpec(g, {0}, sigma(1.0)), 0.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(cdf(MixtureSpec(g, {0, 1}, sigma(1.0)), 1e6) == doctest::Approx(1.0));
    double chi = cdf(MixtureSpec(ParameterGrid::chi_squared(4), {2}), 2.0);
    CHECK(std::abs(chi - (1.0 - std::exp(-1.0))) <= 1e-12);
    CHECK_THROWS_AS(cdf(MixtureSpec(ParameterGrid::poisson(2), {1}), 1.0), ContractError);

    MixtureSpec mix(ParameterGrid::chi_squared(6), {1, 3, 6});
    double prev = 0.0;
    for (double x = 0.0; x < 40.0; x += 0.37) {
        double c = cdf(mix, x);
        CHECK(c >= prev);
        prev = c;
    }
    // Chi-squared with 4 dof: 1 - e^{-x/2}(1 + x/2).
    double x = 3.3;
    double expected = 1.0 - std::exp(-x / 2) * (1 + x / 2);
    CHECK(std::abs(cdf(MixtureSpec(ParameterGrid::chi_squared(4), {4}), x) - expected) <= 1e-12);
}

TEST_CASE("sampler") {
    auto zeros = sample(MixtureSpec(ParameterGrid::poisson(3), {0}), 1000, 5);
    for (auto v : zeros.integers) CHECK(v == 0);

    MixtureSpec spec(ParameterGrid::poisson(5), {1, 4});
    auto a = sample(spec, 200000, 42);
    auto b = sample(spec, 200000, 42);
    CHECK(a.integers == b.integers);
    auto c = sample(spec, 200000, 43);
    CHECK(a.integers != c.integers);

    auto p3 = sample(MixtureSpec(ParameterGrid::poisson(3), {3}), 1000000, 1);
    double mean = 0.0;
    for (auto v : p3.integers) mean += static_cast<double>(v);
    mean /= 1e6;
    CHECK(std::abs(mean - 3.0) <= 0.01);

    auto bin = sample(MixtureSpec(ParameterGrid::binomial_p(Rational(1, 2)), {1}, trials(6)), 10000, 3);
    for (auto v : bin.integers) CHECK((v >= 0 && v <= 6));

    CHECK_THROWS_AS(sample(MixtureSpec(ParameterGrid::geometric_p(Rational(1, 2)), {0}), 10, 1), DomainError);
    CHECK_THROWS_AS(sample(spec, 0, 1), DomainError);
}

TEST_CASE("moment polynomial examples") {
    auto b1 = binomial_moment_polynomial(7, 1);
    CHECK(b1.coefficients() == std::vector<BigInt>{0, 7});
    auto b2 = binomial_moment_polynomial(2, 2);
    CHECK(b2.coefficients() == std::vector<BigInt>{0, 2, 2});
    CHECK(geometric_moment_polynomial(2).coefficients() == std::vector<BigInt>{1, -3, 2});
    CHECK(geometric_moment_polynomial(0).coefficients() == std::vector<BigInt>{1});
    CHECK(geometric_pmf_polynomial(1).coefficients() == std::vector<BigInt>{0, 1, -1});
    CHECK_THROWS_AS(binomial_moment_polynomial(2, 3), DegeneracyError);
    CHECK_THROWS_AS(moment_polynomial(Family::Poisson, {}, 2), ContractError);
}

TEST_CASE("stirling and eulerian tables") {
    auto s = stirling2_table(15);
    for (unsigned l = 1; l <= 15; ++l)
        for (unsigned j = 1; j < l; ++j) CHECK(s[l][j] == BigInt(j) * s[l - 1][j] + s[l - 1][j - 1]);
    CHECK(s[5][2] == 15);
    auto e = eulerian_table(12);
    for (unsigned l = 1; l <= 12; ++l) {
        BigInt sum = 0;
        for (const auto& v : e[l]) sum += v;
        CHECK(sum == factorial(l));
    }
    CHECK(e[4] == std::vector<BigInt>{1, 11, 11, 1});
}

TEST_CASE("binomial moment polynomial degree and leading coefficient") {
    for (std::int64_t n = 0; n <= 12; ++n) {
        for (unsigned l = 0; l <= n; ++l) {
            auto p = binomial_moment_polynomial(n, l);
            CHECK(p.degree() == static_cast<int>(l));
            CHECK(p.leading() == falling_factorial(n, l));
        }
    }
}

TEST_CASE("geometric moment polynomial against direct series") {
    // E X^l for Pr(X=x) = (1-p)^x p, summed directly.
    for (double p : {0.3, 0.5, 0.9}) {
        for (unsigned l = 0; l <= 6; ++l) {
            double direct = 0.0;
            for (int x = 0; x < 4000; ++x) direct += std::pow(x, l) * std::pow(1 - p, x) * p;
            double poly = to_double(geometric_moment_polynomial(l).evaluate(Rational(1.0 / p)));
            CHECK(poly == doctest::Approx(direct).epsilon(1e-9));
        }
    }
}

TEST_CASE("exact mixture moments") {
    MixtureSpec bin(ParameterGrid::binomial_p(Rational(1, 2)), {1}, trials(2));
    CHECK(mixture_moment_exact(bin, 0) == 1);
    CHECK(mixture_moment_exact(bin, 2) == Rational(3, 2));
    CHECK(mixture_moment_exact(MixtureSpec(ParameterGrid::poisson(3), {1}), 2) == 2);
    CHECK(mixture_moment_exact(MixtureSpec(ParameterGrid::poisson(3), {2}), 3) == 22);
    CHECK(mixture_moment_exact(MixtureSpec(ParameterGrid::geometric_u(Rational(1), 3), {1}), 1) == 1);
    CHECK_THROWS_AS(mixture_moment_exact(MixtureSpec(ParameterGrid::gaussian(1, 0, 3), {1}, sigma(1.0)), 1),
                    ContractError);
}

TEST_CASE("exact moments agree with sampled moments") {
    SharedParams none;
    std::vector<MixtureSpec> specs = {
        MixtureSpec(ParameterGrid::binomial_p(Rational(1, 4)), {1, 2, 4}, trials(8)),
        MixtureSpec(ParameterGrid::geometric_u(Rational(1, 2), 4), {0, 3}),
        MixtureSpec(ParameterGrid::geometric_p(Rational(1, 4)), {2, 4}),
        MixtureSpec(ParameterGrid::poisson(5), {1, 3, 5}),
    };
    std::uint64_t seed = 100;
    for (const auto& spec : specs) {
        auto data = sample(spec, 1000000, seed++);
        auto hist = histogram(data);
        auto emp = estimate_moments(hist, 4);
        auto se = moment_standard_errors(hist, 4);
        for (unsigned l = 1; l <= 4; ++l) {
            double diff = std::abs(to_double(emp.values[l]) - to_double(mixture_moment_exact(spec, l)));
            CHECK(diff <= 5.0 * se[l]);
        }
    }
}

} // TEST_SUITE
