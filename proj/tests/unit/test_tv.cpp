#include <doctest.h>

#include "mixlearn/distributions.hpp"
#include "mixlearn/error.hpp"
#include "mixlearn/gtransform.hpp"
#include "mixlearn/littlewood.hpp"
#include "mixlearn/scheffe.hpp"
#include "mixlearn/survey.hpp"
#include "mixlearn/tv.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

using namespace mixlearn;
using cd = std::complex<double>;

namespace {

SharedParams sigma(double v) {
    SharedParams s;
    s.sigma = v;
    return s;
}

SharedParams nb(Rational p) {
    SharedParams s;
    s.nb_p = p;
    return s;
}

double poisson_pmf(double lambda, int x) { return std::exp(-lambda + x * std::log(lambda) - std::lgamma(x + 1.0)); }

} // namespace

TEST_SUITE("tv-analytic") {

TEST_CASE("tv_exact examples") {
    auto g = ParameterGrid::poisson(5);
    MixtureSpec m(g, {1, 4});
    auto self = tv_exact(m, m, 1e-9);
    CHECK(self.lo == 0.0);
    CHECK(self.hi <= 1e-9);

    auto p01 = tv_exact(MixtureSpec(g, {0}), MixtureSpec(g, {1}), 1e-9);
    double expected = 1.0 - std::exp(-1.0);
    CHECK(p01.lo <= expected + 1e-15);
    CHECK(p01.hi >= expected - 1e-15);
    CHECK(p01.hi - p01.lo <= 1e-9);

    auto gg = ParameterGrid::gaussian(1, -3, 3);
    auto n01 = tv_exact(MixtureSpec(gg, {0}, sigma(1.0)), MixtureSpec(gg, {1}, sigma(1.0)), 1e-9);
    double gexp = std::erf(0.5 / std::sqrt(2.0)); // 2 Phi(1/2) - 1
    CHECK(n01.lo <= gexp + 1e-12);
    CHECK(n01.hi >= gexp - 1e-12);
    CHECK(gexp == doctest::Approx(0.38292).epsilon(1e-5));

    CHECK_THROWS_AS(tv_exact(m, MixtureSpec(ParameterGrid::poisson(6), {1, 4}), 0.0), DomainError);
    SharedParams n10;
    n10.trials = 10;
    CHECK_THROWS_AS(tv_exact(m, MixtureSpec(ParameterGrid::binomial_p(Rational(1, 2)), {1}, n10), 1e-9),
                    FamilyMismatchError);
}

TEST_CASE("tv_exact against a direct sum") {
    auto g = ParameterGrid::poisson(5);
    MixtureSpec a(g, {1, 4}), b(g, {2, 3});
    double direct = 0.0;
    for (int x = 0; x < 200; ++x)
        direct += std::abs(0.5 * (poisson_pmf(1, x) + poisson_pmf(4, x)) - 0.5 * (poisson_pmf(2, x) + poisson_pmf(3, x)));
    direct /= 2;
    auto tv = tv_exact(a, b, 1e-9);
    CHECK(tv.lo <= direct + 1e-12);
    CHECK(tv.hi >= direct - 1e-12);
}

TEST_CASE("tv axioms") {
    std::vector<std::pair<MixtureSpec, MixtureSpec>> pairs = {
        {MixtureSpec(ParameterGrid::poisson(6), {0, 5}), MixtureSpec(ParameterGrid::poisson(6), {2, 3})},
        {MixtureSpec(ParameterGrid::chi_squared(6), {1, 4}), MixtureSpec(ParameterGrid::chi_squared(6), {2, 3})},
        {MixtureSpec(ParameterGrid::gaussian(Rational(1, 2), 0, 6), {0, 3, 6}, sigma(1.0)),
         MixtureSpec(ParameterGrid::gaussian(Rational(1, 2), 0, 6), {1, 2, 5}, sigma(1.0))},
        {MixtureSpec(ParameterGrid::neg_binomial(4), {1, 3}, nb(Rational(1, 3))),
         MixtureSpec(ParameterGrid::neg_binomial(4), {2, 4}, nb(Rational(1, 3)))},
    };
    for (const auto& [a, b] : pairs) {
        auto ab = tv_exact(a, b, 1e-8);
        auto ba = tv_exact(b, a, 1e-8);
        CHECK(0.0 <= ab.lo);
        CHECK(ab.lo <= ab.hi);
        CHECK(ab.hi <= 1.0);
        CHECK(std::abs(ab.lo - ba.lo) <= 1e-8);
        CHECK(tv_exact(a, a, 1e-8).hi <= 1e-8);
        auto cert = tv_lower_bound_charfn(a, b, 1.0, 512);
        CHECK(cert.value <= ab.hi);
    }
}

TEST_CASE("tail certificate examples") {
    for (double lambda : {0.5, 1.0, 3.0}) {
        for (double r : {5.0, 10.0, 20.0}) {
            double cert = tail_certificate(Family::Poisson, {}, lambda, 2.0, r);
            CHECK(cert == doctest::Approx(std::exp(3 * lambda) / std::pow(2.0, r - 1)));
        }
    }
    double prev = INFINITY;
    for (double r = 0; r < 200; r += 10) {
        double cert = tail_certificate(Family::Poisson, {}, 2.0, 2.0, r);
        CHECK(cert < prev);
        prev = cert;
    }
    CHECK(prev < 1e-50);
    CHECK_THROWS_AS(tail_certificate(Family::NegBinomial, nb(Rational(3, 4)), 2.0, 2.0, 5.0),
                    CertificateUnavailableError);
    CHECK_THROWS_AS(tail_certificate(Family::Gaussian, sigma(1.0), 0.0, 2.0, 5.0), ContractError);
}

TEST_CASE("tail certificate bounds the weighted tail") {
    for (double lambda = 0.5; lambda <= 5.0; lambda += 0.5) {
        for (int r = 10; r <= 40; ++r) {
            double tail = 0.0;
            for (int x = r; x < r + 400; ++x) tail += std::pow(2.0, x) * poisson_pmf(lambda, x);
            CHECK(tail <= tail_certificate(Family::Poisson, {}, lambda, 2.0, r));
        }
    }
}

TEST_CASE("characteristic function bound examples") {
    auto g = ParameterGrid::poisson(5);
    MixtureSpec a(g, {1}), b(g, {2});
    CHECK(tv_lower_bound_charfn(a, a, 1.0, 64).value == 0.0);
    auto cert = tv_lower_bound_charfn(a, b, 1.0, 1024);
    // The supremum over t is 0.24310 (dense grid below), while TV is 0.3298.
    CHECK(cert.value > 0.243);
    CHECK(cert.value <= tv_exact(a, b, 1e-9).hi);
    CHECK(cert.method == "charfn");
    CHECK_THROWS_AS(tv_lower_bound_charfn(a, b, 1.0, 2), DomainError);
    // Dense-grid oracle for the witness.
    double best = 0.0;
    for (int j = 0; j <= 100000; ++j) {
        double t = -std::numbers::pi + 2 * std::numbers::pi * j / 100000;
        cd ca = std::exp(1.0 * (std::exp(cd(0, t)) - 1.0));
        cd cb = std::exp(2.0 * (std::exp(cd(0, t)) - 1.0));
        best = std::max(best, std::abs(ca - cb) / 2);
    }
    CHECK(cert.value <= best + 1e-12);
    CHECK(cert.value >= best - 1e-3);
}

TEST_CASE("g-transform lower bound is valid") {
    auto g = ParameterGrid::poisson(5);
    MixtureSpec a(g, {1, 4}), b(g, {2, 3});
    auto cert = tv_lower_bound_gtransform(a, b, 1.0, 256);
    CHECK(cert.value >= 0.0);
    CHECK(cert.value <= tv_exact(a, b, 1e-9).hi);
    auto chi = ParameterGrid::chi_squared(3);
    CHECK_THROWS_AS(tv_lower_bound_gtransform(MixtureSpec(chi, {1}), MixtureSpec(chi, {2}), 1.0, 64),
                    CertificateUnavailableError);
}

TEST_CASE("g-transform examples") {
    GTransform pg(Family::Poisson, {}, 0.3);
    cd numeric = pg.expectation_numeric(2.0);
    CHECK(std::abs(numeric - std::exp(cd(0, 0.6))) <= 1e-9);

    GTransform gg(Family::Gaussian, sigma(1.5), 0.7);
    cd closed = gg.expectation(2.0);
    CHECK(std::abs(closed - std::exp(-1.5 * 1.5 * 0.49 / 2) * std::exp(cd(0, 1.4))) <= 1e-15);
    CHECK(std::abs(closed) <= 1.0);

    for (Family f : {Family::Gaussian, Family::Poisson, Family::ChiSquared, Family::NegBinomial}) {
        SharedParams sh = f == Family::Gaussian ? sigma(1.0) : f == Family::NegBinomial ? nb(Rational(1, 2)) : SharedParams{};
        GTransform g0(f, sh, 0.0);
        CHECK(std::abs(g0.expectation_numeric(3.0) - cd(1.0)) <= 1e-9);
    }
    CHECK_THROWS_AS(GTransform(Family::BinomialP, {}, 0.1), ContractError);
}

TEST_CASE("g-transform identities on a parameter grid") {
    // |numeric E G_t(X) - factor * exp(i t theta)| <= 1e-6
    const double ts[] = {-0.6, -0.25, 0.1, 0.35, 0.7};
    for (Family f : {Family::Gaussian, Family::Poisson, Family::ChiSquared, Family::NegBinomial}) {
        SharedParams sh = f == Family::Gaussian ? sigma(0.8) : f == Family::NegBinomial ? nb(Rational(2, 5)) : SharedParams{};
        for (double theta : {1.0, 2.0, 3.0, 4.0, 5.0}) {
            for (double t : ts) {
                GTransform g(f, sh, t);
                double factor = f == Family::Gaussian ? std::exp(-0.64 * t * t / 2) : 1.0;
                cd expected = factor * std::exp(cd(0, t * theta));
                CHECK(std::abs(g.expectation_numeric(theta) - expected) <= 1e-6);
            }
        }
    }
}

TEST_CASE("g-transform modulus") {
    GTransform p(Family::Poisson, {}, 0.4);
    CHECK(p.modulus(3) == doctest::Approx(std::abs(p(3))));
    CHECK(p.modulus(3) == doctest::Approx(std::pow(1 + 0.16, 1.5)));
    GTransform c(Family::ChiSquared, {}, 0.3);
    CHECK(c.modulus(2.5) == doctest::Approx(std::abs(c(2.5))));
    CHECK(c.modulus(2.5) == doctest::Approx(std::exp(2.5 * (1 - std::cos(0.6)) / 2)));
    GTransform n(Family::NegBinomial, nb(Rational(1, 3)), 0.5);
    double w2 = (1.0 / 9 + 4 * (2.0 / 3) * std::pow(std::sin(0.25), 2)) / (1.0 / 9);
    CHECK(n.modulus(4) == doctest::Approx(std::pow(w2, 2)));
    CHECK(n.modulus(4) == doctest::Approx(std::abs(n(4))));
    GTransform g(Family::Gaussian, sigma(1.0), 0.5);
    CHECK(g.modulus(7.3) == 1.0);
}

TEST_CASE("littlewood examples") {
    auto one = littlewood_arc_max(LittlewoodPoly({1}), 1.0);
    CHECK(one.value == doctest::Approx(1.0));
    CHECK(one.t == 0.0);
    CHECK(littlewood_arc_max(LittlewoodPoly({0, 0, 0, 0, 0, 1}), 1.0).value == doctest::Approx(1.0));
    auto d = littlewood_arc_max(LittlewoodPoly({1, -1}), 2.0);
    CHECK(d.value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(d.t == doctest::Approx(std::numbers::pi / 2));
    CHECK_THROWS_AS(LittlewoodPoly({0, 0}), DomainError);
    CHECK_THROWS_AS(LittlewoodPoly({1, 2}), DomainError);
    CHECK_THROWS_AS(littlewood_arc_max(LittlewoodPoly({1}), 1.0, 63), DomainError);
}

TEST_CASE("littlewood arc max is nonincreasing in L") {
    std::vector<std::vector<int>> polys = {{1, -1, 0, 1, -1}, {1, 1, -1, 1}, {1, 0, -1, 0, 1, -1}, {1, -1, -1, 1}};
    for (const auto& c : polys) {
        LittlewoodPoly p(c);
        double prev = INFINITY;
        for (double L = 0.5; L <= 6.0; L += 0.25) {
            double v = littlewood_arc_max(p, L).value;
            CHECK(v <= prev + 1e-12);
            prev = v;
        }
        // Horner evaluation agrees with the modulus used by the search.
        for (double t : {0.1, 1.3, 2.9}) CHECK(std::abs(p.evaluate(std::exp(cd(0, t)))) == doctest::Approx(p.modulus_on_circle(t)));
    }
}

TEST_CASE("separation survey") {
    auto survey = separation_survey(ParameterGrid::poisson(5), {}, 2, LRule{});
    CHECK(survey.summary.candidates == 15);
    CHECK(survey.summary.pairs == 105);
    CHECK(survey.rows.size() == 105);
    CHECK(survey.summary.min_tv > 0.0);
    for (const auto& row : survey.rows) CHECK(row.charfn_bound <= row.tv_hi);
    std::ostringstream os;
    write_survey_csv(os, survey);
    CHECK(os.str().rfind("pair_a,pair_b,tv_lo,tv_hi,charfn_bound,witness_t\n", 0) == 0);
    CHECK(os.str().find("# candidates=15 pairs=105") != std::string::npos);
    CHECK_THROWS_AS(separation_survey(ParameterGrid::poisson(5), {}, 2, LRule{}, 10), CapExceededError);
    CHECK(parse_lrule("cbrt").resolve(ParameterGrid::poisson(8)) == doctest::Approx(2.0));
    CHECK(parse_lrule("1.5").resolve(ParameterGrid::poisson(8)) == 1.5);
}

TEST_CASE("gaussian crossing count bound") {
    auto grid = ParameterGrid::gaussian(Rational(1, 2), 0, 8);
    for (std::size_t k = 1; k <= 3; ++k) {
        auto cands = candidate_family(grid, k, true, sigma(1.0));
        for (std::size_t i = 0; i < cands.size(); i += 7) {
            for (std::size_t j = i + 1; j < cands.size(); j += 5) {
                auto regions = density_sign_regions(cands[i], cands[j], 1e-9);
                CHECK(regions.cuts.size() <= 4 * k - 2);
                auto set = scheffe_set(cands[i], cands[j]);
                CHECK(set.intervals.size() <= 4 * k - 1);
            }
        }
    }
}

} // TEST_SUITE
