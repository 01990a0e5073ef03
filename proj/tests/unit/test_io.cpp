#include <doctest.h>

#include "mixlearn/error.hpp"
#include "mixlearn/experiment.hpp"
#include "mixlearn/io.hpp"
#include "mixlearn/sampler.hpp"

#include <sstream>

using namespace mixlearn;

TEST_SUITE("cli-io") {

TEST_CASE("dataset round trip") {
    MixtureSpec spec(ParameterGrid::poisson(5), {1, 4});
    auto data = sample(spec, 10000, 12);
    data.spec_text = describe_spec(spec);
    std::stringstream ss;
    write_dataset(ss, data);
    auto back = read_dataset(ss);
    CHECK(back.family == Family::Poisson);
    CHECK(back.integers == data.integers);
    CHECK(back.seed == data.seed);
    CHECK(back.spec_text == data.spec_text);

    SharedParams s;
    s.sigma = 1.25;
    auto g = sample(MixtureSpec(ParameterGrid::gaussian(Rational(1, 3), 0, 6), {0, 5}, s), 2000, 4);
    std::stringstream gs;
    write_dataset(gs, g);
    CHECK(read_dataset(gs).reals == g.reals);
}

TEST_CASE("dataset comments and errors") {
    std::istringstream in("# family=poisson\n# a note\n1\n\n# another=comment\n2\n3\n");
    auto d = read_dataset(in);
    CHECK(d.integers == std::vector<std::int64_t>{1, 2, 3});

    std::istringstream bad("# family=poisson\n1\n2\n3\n4\n5\nabc\n");
    try {
        read_dataset(bad);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 7);
        CHECK(std::string(e.what()).find("line 7") != std::string::npos);
    }
    std::istringstream neg("-1\n");
    CHECK_THROWS_AS(read_dataset(neg, Family::Poisson), ParseError);
    std::istringstream frac("1.5\n");
    CHECK_THROWS_AS(read_dataset(frac, Family::Poisson), ParseError);
    std::istringstream nofam("1\n");
    CHECK_THROWS_AS(read_dataset(nofam), ParseError);
    std::istringstream real("0.25\n-3e-2\n");
    CHECK(read_dataset(real, Family::Gaussian).reals == std::vector<double>{0.25, -0.03});
}

TEST_CASE("spec round trip") {
    SharedParams nb;
    nb.nb_p = Rational(2, 7);
    std::vector<MixtureSpec> specs = {
        MixtureSpec(ParameterGrid::poisson(5), {1, 4}),
        MixtureSpec(ParameterGrid::neg_binomial(6), {2, 5}, {Rational(1, 3), Rational(2, 3)}, nb),
        MixtureSpec(ParameterGrid::geometric_u(Rational(3, 7), 9), {0, 0, 8}),
    };
    SharedParams bin;
    bin.trials = 10;
    specs.emplace_back(ParameterGrid::binomial_p(Rational(1, 2)), std::vector<std::int64_t>{1, 2}, bin);
    SharedParams g;
    g.sigma = 0.1;
    specs.emplace_back(ParameterGrid::gaussian(Rational(1, 10), -4, 4), std::vector<std::int64_t>{-3, 2}, g);
    for (const auto& spec : specs) {
        std::stringstream ss;
        write_spec(ss, spec);
        CHECK(read_spec(ss) == spec);
    }
    std::stringstream ss;
    write_spec(ss, specs[1]);
    CHECK(ss.str().find("nb_p=2/7") != std::string::npos);
    CHECK(ss.str().find("weights=1/3,2/3") != std::string::npos);
}

TEST_CASE("spec parse errors") {
    std::istringstream missing("family=poisson\n");
    CHECK_THROWS_AS(read_spec(missing), ParseError);
    std::istringstream k("family=poisson\nk=3\nindices=1,2\n");
    CHECK_THROWS_AS(read_spec(k), ParseError);
    std::istringstream unknown("family=poisson\nindices=1\ncolour=red\n");
    try {
        read_spec(unknown);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
    std::istringstream dup("family=poisson\nfamily=poisson\n");
    CHECK_THROWS_AS(read_spec(dup), ParseError);
    std::istringstream noeq("family=poisson\nindices\n");
    CHECK_THROWS_AS(read_spec(noeq), ParseError);
    std::istringstream eps("family=binomial\nn=4\neps=0.25\nindices=1;3\n");
    auto spec = read_spec(eps);
    CHECK(spec.grid().step() == Rational(1, 4));
    CHECK(spec.indices() == std::vector<std::int64_t>{1, 3});
}

TEST_CASE("experiment config") {
    std::istringstream in("# poisson mde\nfamily=poisson\nmethod=mde\nk=2\ngrid_max=5\ntruth=4,1\n"
                          "samples=50000\ntrials=20\nseed=3\n");
    auto c = experiment_config_from(read_key_values(in));
    CHECK(c.truth == std::vector<std::int64_t>{1, 4});
    CHECK(c.grid.max_index() == 5);
    CHECK(c.trials == 20);
    CHECK(describe_config(c).find("truth=1;4") != std::string::npos);

    std::istringstream bad("family=poisson\nmethod=mde\nk=2\ngrid_max=5\ntruth=1,9\nsamples=10\n");
    try {
        experiment_config_from(read_key_values(bad));
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 5);
    }
    std::istringstream oracle("family=geometric-u\nmethod=moments\nk=2\neps=1\ngrid_max=4\noracle=true\n");
    CHECK(experiment_config_from(read_key_values(oracle)).oracle);
}

TEST_CASE("csv quoting") {
    std::ostringstream os;
    write_csv(os, {"a", "b"}, {{"1", "x,y"}, {"2", "say \"hi\""}});
    CHECK(os.str() == "a,b\n1,\"x,y\"\n2,\"say \"\"hi\"\"\"\n");
}

TEST_CASE("number parsing") {
    CHECK(parse_int(" 42 ") == 42);
    CHECK_THROWS_AS(parse_int("4.2", 3), ParseError);
    CHECK(parse_real("1/4") == 0.25);
    CHECK(parse_real("-2.5e1") == -25.0);
    CHECK_THROWS_AS(parse_real("nan"), ParseError);
    CHECK(parse_index_list("1;2,3") == std::vector<std::int64_t>{1, 2, 3});
}

} // TEST_SUITE
