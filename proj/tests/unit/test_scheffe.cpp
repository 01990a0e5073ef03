#include <doctest.h>

#include "mixlearn/distributions.hpp"
#include "mixlearn/error.hpp"
#include "mixlearn/sampler.hpp"
#include "mixlearn/scheffe.hpp"
#include "mixlearn/tv.hpp"

#include <algorithm>
#include <cmath>

using namespace mixlearn;

namespace {

SharedParams sigma(double v) {
    SharedParams s;
    s.sigma = v;
    return s;
}

SampleDataset ints(std::vector<std::int64_t> v) {
    SampleDataset d;
    d.family = Family::Poisson;
    d.integers = std::move(v);
    return d;
}

} // namespace

TEST_SUITE("scheffe-mde") {

TEST_CASE("scheffe_set examples") {
    auto g = ParameterGrid::poisson(5);
    MixtureSpec p1(g, {1}), p2(g, {2});
    CHECK(scheffe_set(p1, p1).full);
    auto s = scheffe_set(p1, p2);
    CHECK(s.kind == ScheffeSet::Kind::Discrete);
    CHECK(s.points == std::vector<std::int64_t>{0, 1});
    // e^-1 >= e^-2 2^x  <=>  2^x <= e
    for (std::int64_t x = 0; x <= s.x_max; ++x)
        CHECK(s.contains(x) == (std::pow(2.0, static_cast<double>(x)) <= std::exp(1.0)));

    auto gg = ParameterGrid::gaussian(1, -2, 2);
    MixtureSpec n0(gg, {0}, sigma(1.0)), n1(gg, {1}, sigma(1.0));
    auto c = scheffe_set(n0, n1);
    REQUIRE(c.intervals.size() == 1);
    CHECK(std::isinf(c.intervals[0].lo));
    CHECK(c.intervals[0].hi == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(c.contains(0.49));
    CHECK_FALSE(c.contains(0.51));
}

TEST_CASE("empirical measure") {
    auto g = ParameterGrid::poisson(5);
    MixtureSpec p1(g, {1}), p2(g, {2});
    auto data = ints({0, 1, 5});
    CHECK(empirical_measure(data, scheffe_set(p1, p1)) == 1);
    CHECK(empirical_measure(data, scheffe_set(p1, p2)) == Rational(2, 3));
    ScheffeSet empty;
    empty.x_max = 10;
    CHECK(empirical_measure(data, empty) == 0);
    CHECK_THROWS(empirical_measure(ints({}), empty));
}

TEST_CASE("set probability matches the pmf sum") {
    auto g = ParameterGrid::poisson(5);
    MixtureSpec a(g, {1, 4}), b(g, {2, 3});
    auto s = scheffe_set(a, b);
    double direct = 0.0;
    for (auto x : s.points) direct += pmf(a, x);
    CHECK(set_probability(a, s) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("mde_select examples") {
    auto g = ParameterGrid::poisson(5);
    auto cands = candidate_family(g, 2, true, {});
    for (std::size_t j = 0; j < cands.size(); ++j) {
        auto r = mde_select(cands, cands[j]);
        CHECK(r.winner == j);
        CHECK(r.delta <= 1e-9);
    }
    std::vector<MixtureSpec> two = {MixtureSpec(g, {1}), MixtureSpec(g, {3})};
    auto data = sample(two[0], 10000, 21);
    CHECK(mde_select(two, data).winner == 0);

    std::vector<MixtureSpec> dup = {MixtureSpec(g, {2}), MixtureSpec(g, {2})};
    auto r = mde_select(dup, sample(dup[0], 100, 1));
    CHECK(r.tie_broken);
    CHECK(r.winner == 0);
    CHECK_THROWS(mde_select(std::vector<MixtureSpec>{}, data));
    std::vector<MixtureSpec> mixed = {MixtureSpec(g, {1}), MixtureSpec(ParameterGrid::chi_squared(3), {1})};
    CHECK_THROWS_AS(mde_select(mixed, data), FamilyMismatchError);
}

TEST_CASE("candidate family") {
    auto g = ParameterGrid::poisson(5);
    auto c = candidate_family(g, 2, true, {});
    CHECK(c.size() == 15);
    CHECK(c.front().indices() == std::vector<std::int64_t>{0, 1});
    CHECK(c.back().indices() == std::vector<std::int64_t>{4, 5});
    CHECK(std::is_sorted(c.begin(), c.end(), [](const auto& a, const auto& b) { return a.indices() < b.indices(); }));
    CHECK(candidate_family(g, 1, true, {}).size() == 6);
    CHECK_THROWS(candidate_family(g, 7, true, {}));
    CHECK_THROWS_AS(candidate_family(ParameterGrid::poisson(60), 3, true, {}, 1000), CapExceededError);
    SharedParams n4;
    n4.trials = 4;
    CHECK(candidate_family(ParameterGrid::binomial_p(Rational(1, 2)), 2, false, n4).size() == 6);
}

TEST_CASE("mde is permutation invariant") {
    auto g = ParameterGrid::poisson(5);
    auto cands = candidate_family(g, 2, true, {});
    auto data = sample(MixtureSpec(g, {1, 4}), 20000, 8);
    auto base = mde_select(cands, data);
    auto rev = cands;
    std::reverse(rev.begin(), rev.end());
    auto r = mde_select(rev, data);
    CHECK(rev[r.winner].indices() == cands[base.winner].indices());
    CHECK(r.delta == doctest::Approx(base.delta).epsilon(1e-12));
}

TEST_CASE("minimum distance guarantee holds on sampled data") {
    auto g = ParameterGrid::poisson(5);
    auto cands = candidate_family(g, 2, true, {});
    MixtureSpec truth(g, {1, 4});
    const std::size_t m = 2000;
    int ok = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto data = sample(truth, m, 900 + seed);
        auto r = mde_select(cands, data);
        // Delta over the Scheffe sets of the truth itself bounds the sup.
        double delta_truth = 0.0;
        for (std::size_t i = 0; i < cands.size(); ++i) {
            for (std::size_t j = 0; j < cands.size(); ++j) {
                if (i == j) continue;
                auto s = scheffe_set(cands[i], cands[j]);
                delta_truth = std::max(delta_truth, std::abs(set_probability(truth, s) - to_double(empirical_measure(data, s))));
            }
        }
        double tv = tv_exact(cands[r.winner], truth, 1e-9).hi;
        if (tv <= 4 * delta_truth + 3.0 / m) ++ok;
    }
    CHECK(ok >= 95);
}

TEST_CASE("gaussian mde on intervals") {
    auto grid = ParameterGrid::gaussian(1, 0, 4);
    auto cands = candidate_family(grid, 2, true, sigma(1.0));
    auto r = mde_select(cands, cands[3]);
    CHECK(r.winner == 3);
    CHECK(r.delta <= 1e-9);
    auto data = sample(MixtureSpec(grid, {0, 3}, sigma(1.0)), 100000, 11);
    CHECK(cands[mde_select(cands, data).winner].indices() == std::vector<std::int64_t>{0, 3});
}

} // TEST_SUITE
