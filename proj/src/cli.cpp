#include "mixlearn/cli.hpp"

#include "mixlearn/error.hpp"
#include "mixlearn/experiment.hpp"
#include "mixlearn/identifiability.hpp"
#include "mixlearn/io.hpp"
#include "mixlearn/learners.hpp"
#include "mixlearn/littlewood.hpp"
#include "mixlearn/sample_plan.hpp"
#include "mixlearn/sampler.hpp"
#include "mixlearn/scheffe.hpp"
#include "mixlearn/survey.hpp"
#include "mixlearn/tv.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace mixlearn {

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

const std::map<std::string, std::string>& synopses() {
    static const std::map<std::string, std::string> s = {
        {"simulate", "mixlearn simulate --family F --spec FILE --samples T --seed S --out PATH"},
        {"learn", "mixlearn learn --method moments|pmf|mde --family F --k K (--data PATH | --oracle SPEC) "
                  "[--eps E] [--grid MIN:MAX] [--n N] [--sigma S] [--nb-p P] [--T T] [--cap C] [--out PATH]"},
        {"plan-samples", "mixlearn plan-samples --family F --k K [--eps E] [--grid MIN:MAX] [--n N] [--T T] "
                         "[--scheme chebyshev|chernoff] [--delta D] [--method mde --mde-delta D [--C C]]"},
        {"verify-identifiability",
         "mixlearn verify-identifiability --n N --mode sets|multisets [--q Q] [--T T] [--cap C] [--csv PATH]"},
        {"tv", "mixlearn tv exact --a SPEC --b SPEC [--tol X]\n"
               "       mixlearn tv bound --a SPEC --b SPEC [--L L] [--points P] [--via charfn|gtransform]\n"
               "       mixlearn tv littlewood --coeffs c0,c1,... [--L L] [--resolution R]\n"
               "       mixlearn tv survey --family F --k K --grid MIN:MAX [--eps E] [--n N] [--sigma S] "
               "[--nb-p P] [--L cbrt|X] [--cap C] [--out PATH]"},
        {"experiment", "mixlearn experiment --config FILE --out DIR"},
    };
    return s;
}

std::string full_synopsis() {
    std::string text;
    for (const char* name : {"simulate", "learn", "plan-samples", "verify-identifiability", "tv", "experiment"})
        text += "  " + synopses().at(name) + "\n";
    return text;
}

// String-valued flags converted on demand so every numeric flag accepts
// num/den text.
class Flags {
public:
    explicit Flags(CLI::App* app) : app_(app) {}

    Flags& add(const std::string& name, const std::string& help, bool required = false) {
        CLI::Option* opt = app_->add_option("--" + name, values_[name], help);
        if (required) opt->required();
        options_[name] = opt;
        return *this;
    }

    bool has(const std::string& name) const { return options_.at(name)->count() > 0; }

    const std::string& str(const std::string& name) const {
        if (!has(name)) throw UsageError("--" + name + " is required");
        return values_.at(name);
    }

    Rational rational(const std::string& name) const {
        try {
            return parse_rational(str(name));
        } catch (const ParseError&) {
            throw UsageError("--" + name + " expects a number, got '" + values_.at(name) + "'");
        }
    }

    std::optional<Rational> find_rational(const std::string& name) const {
        if (!has(name)) return std::nullopt;
        return rational(name);
    }

    double real(const std::string& name) const { return to_double(rational(name)); }

    std::int64_t integer(const std::string& name) const {
        Rational v = rational(name);
        if (!is_integer(v)) throw UsageError("--" + name + " expects an integer, got '" + values_.at(name) + "'");
        return to_int64(v.get_num());
    }

    std::optional<std::int64_t> find_integer(const std::string& name) const {
        if (!has(name)) return std::nullopt;
        return integer(name);
    }

    std::int64_t positive(const std::string& name) const {
        std::int64_t v = integer(name);
        if (v < 1) throw UsageError("--" + name + " must be positive");
        return v;
    }

    std::uint64_t seed(const std::string& name) const {
        std::int64_t v = integer(name);
        if (v < 0) throw UsageError("--" + name + " must be nonnegative");
        return static_cast<std::uint64_t>(v);
    }

private:
    CLI::App* app_;
    std::map<std::string, std::string> values_;
    std::map<std::string, CLI::Option*> options_;
};

template <typename F>
auto as_usage(F&& parse) {
    try {
        return parse();
    } catch (const ParseError& e) {
        throw UsageError(e.what());
    }
}

Family family_flag(const Flags& f) {
    return as_usage([&] { return parse_family(f.str("family")); });
}

std::pair<std::optional<std::int64_t>, std::optional<std::int64_t>> grid_flag(const Flags& f) {
    if (!f.has("grid")) return {std::nullopt, std::nullopt};
    const std::string& g = f.str("grid");
    auto colon = g.find(':');
    if (colon == std::string::npos) throw UsageError("--grid expects MIN:MAX, got '" + g + "'");
    return as_usage([&] {
        std::int64_t lo = parse_int(g.substr(0, colon));
        std::int64_t hi = parse_int(g.substr(colon + 1));
        if (lo > hi) throw ParseError("--grid MIN exceeds MAX");
        return std::pair<std::optional<std::int64_t>, std::optional<std::int64_t>>{lo, hi};
    });
}

bool natural_grid(Family family) { return family == Family::BinomialP || family == Family::GeometricP; }

ParameterGrid grid_from_flags(const Flags& f, Family family) {
    auto [lo, hi] = grid_flag(f);
    if (!hi && !natural_grid(family))
        throw UsageError("--grid MIN:MAX is required for " + std::string(family_name(family)));
    return make_grid(family, f.find_rational("eps"), lo, hi);
}

SharedParams shared_from_flags(const Flags& f, Family family) {
    SharedParams shared;
    if (family == Family::BinomialP) shared.trials = f.integer("n");
    if (family == Family::Gaussian) shared.sigma = f.real("sigma");
    if (family == Family::NegBinomial) shared.nb_p = f.rational("nb-p");
    validate_shared(family, shared);
    return shared;
}

bool has_shared_flags(const Flags& f, Family family) {
    if (family == Family::BinomialP) return f.has("n");
    if (family == Family::Gaussian) return f.has("sigma");
    if (family == Family::NegBinomial) return f.has("nb-p");
    return true;
}

void emit(std::ostream& out, const std::string& text, const Flags& f) {
    if (f.has("out")) write_text_file(f.str("out"), text);
    out << text;
}

int run_simulate(const Flags& f, std::ostream& out) {
    Family family = family_flag(f);
    MixtureSpec spec = read_spec_file(f.str("spec"));
    if (spec.family() != family)
        throw FamilyMismatchError("--family " + std::string(family_name(family)) + " but the spec file is " +
                                  std::string(family_name(spec.family())));
    auto count = static_cast<std::size_t>(f.positive("samples"));
    std::uint64_t seed = f.seed("seed");
    SampleDataset data = sample(spec, count, seed);
    data.spec_text = describe_spec(spec);
    write_dataset_file(f.str("out"), data);
    out << "samples=" << count << "\nseed=" << seed << "\nout=" << f.str("out") << '\n';
    return kExitOk;
}

int run_learn(const Flags& f, std::ostream& out) {
    LearnMethod method = as_usage([&] { return parse_method(f.str("method")); });
    Family family = family_flag(f);
    auto k = static_cast<std::size_t>(f.positive("k"));
    if (f.has("data") == f.has("oracle")) throw UsageError("exactly one of --data and --oracle is required");

    MomentOptions options;
    if (f.has("T")) options.T = static_cast<unsigned>(f.positive("T"));
    auto cap = static_cast<std::size_t>(f.has("cap") ? f.positive("cap") : 100000);

    std::optional<SampleDataset> data;
    std::optional<MixtureSpec> truth;
    if (f.has("data")) data = read_dataset_file(f.str("data"), family);
    else truth = read_spec_file(f.str("oracle"));

    SharedParams shared = truth && !has_shared_flags(f, family) ? truth->shared() : shared_from_flags(f, family);

    std::optional<ParameterGrid> grid;
    if (family == Family::Gaussian && data && !f.has("grid")) {
        grid = gaussian_grid_from_data(*data, f.find_rational("eps").value_or(1), *shared.sigma);
    } else {
        grid = grid_from_flags(f, family);
    }
    Observation obs = data ? Observation::samples(*data) : Observation::exact(*truth);
    LearnResult r = learn(obs, method, *grid, k, shared, options, cap);
    if (truth) r.exact_match = r.recovered == truth->indices();
    emit(out, format_learn(r, *grid), f);
    return kExitOk;
}

int run_plan(const Flags& f, std::ostream& out) {
    Family family = family_flag(f);
    auto k = static_cast<std::size_t>(f.positive("k"));
    if (f.has("method") && f.str("method") == "mde") {
        auto [lo, hi] = grid_flag(f);
        if (!hi && !natural_grid(family))
            throw UsageError("--grid MIN:MAX is required for " + std::string(family_name(family)));
        ParameterGrid grid = make_grid(family, f.find_rational("eps"), lo, hi);
        // Distinct k-subsets of the grid.
        Rational candidates = 1;
        for (std::size_t i = 0; i < k; ++i)
            candidates = candidates * Rational(grid.size() - static_cast<std::int64_t>(i)) / Rational(i + 1);
        if (candidates <= 0) throw DomainError("k exceeds the grid size");
        double delta = f.real("mde-delta");
        double C = f.has("C") ? f.real("C") : 8.0;
        std::size_t m = mde_sample_size(static_cast<std::size_t>(to_double(candidates)), delta, C);
        out << "family=" << family_name(family) << "\nmethod=mde\ncandidates=" << to_string(candidates)
            << "\ndelta=" << f.str("mde-delta") << "\nC=" << C << "\nsamples=" << m << '\n';
        return kExitOk;
    }
    if (f.has("method") && f.str("method") != "moments" && f.str("method") != "pmf")
        throw UsageError("--method expects moments, pmf or mde");
    if (!f.has("eps")) throw UsageError("--eps is required");
    Rational eps = f.rational("eps");
    auto [lo, hi] = grid_flag(f);
    if (family == Family::GeometricU && !hi) throw UsageError("--grid MIN:MAX is required for geometric-u");
    ParameterGrid grid = make_grid(family, eps, lo, hi);
    SharedParams shared = family == Family::BinomialP ? shared_from_flags(f, family) : SharedParams{};

    unsigned T;
    if (f.has("T")) {
        T = static_cast<unsigned>(f.positive("T"));
    } else if (family == Family::GeometricU) {
        T = std::max<unsigned>(static_cast<unsigned>(k), log_of_theorem_bound(grid.max_index(), 2, IdentMode::Sets));
    } else {
        T = std::max<unsigned>(static_cast<unsigned>(k), moment_order_for_step(eps));
        if (shared.trials) T = static_cast<unsigned>(std::min<std::int64_t>(T, *shared.trials));
    }
    PlanScheme scheme = f.has("scheme") ? as_usage([&] { return parse_scheme(f.str("scheme")); })
                                        : (family == Family::GeometricP ? PlanScheme::Chernoff : PlanScheme::Chebyshev);
    SamplePlan plan = plan_samples(family, k, grid, shared, T, scheme, f.find_rational("delta"));
    out << format_plan(plan);
    return kExitOk;
}

int run_verify(const Flags& f, std::ostream& out) {
    IdentMode mode = as_usage([&] { return parse_mode(f.str("mode")); });
    std::int64_t n = f.positive("n");
    int q = static_cast<int>(f.has("q") ? f.integer("q") : (mode == IdentMode::Sets ? 2 : 3));
    std::optional<unsigned> T;
    if (f.has("T")) T = static_cast<unsigned>(f.integer("T"));
    auto cap = static_cast<std::size_t>(f.has("cap") ? f.positive("cap") : (std::int64_t(1) << 24));
    std::ostringstream csv;
    IdentifiabilityReport report = verify_identifiability(n, q, mode, T, cap, f.has("csv") ? &csv : nullptr);
    if (f.has("csv")) write_text_file(f.str("csv"), csv.str());
    out << format_report(report);
    return kExitOk;
}

int run_tv_exact(const Flags& f, std::ostream& out) {
    MixtureSpec a = read_spec_file(f.str("a"));
    MixtureSpec b = read_spec_file(f.str("b"));
    double tol = f.has("tol") ? f.real("tol") : 1e-9;
    out << format_interval(tv_exact(a, b, tol));
    return kExitOk;
}

int run_tv_bound(const Flags& f, std::ostream& out) {
    MixtureSpec a = read_spec_file(f.str("a"));
    MixtureSpec b = read_spec_file(f.str("b"));
    require_compatible(a, b);
    double L = f.has("L") ? f.real("L") : 1.0;
    if (!(L > 0.0)) throw UsageError("--L must be positive");
    int points = static_cast<int>(f.has("points") ? f.positive("points") : 1024);
    std::string via = f.has("via") ? f.str("via") : "charfn";
    TvCertificate cert;
    if (via == "charfn") cert = tv_lower_bound_charfn(a, b, L, points);
    else if (via == "gtransform") cert = tv_lower_bound_gtransform(a, b, L, points);
    else throw UsageError("--via expects charfn or gtransform");
    out << format_certificate(cert);
    return kExitOk;
}

int run_tv_littlewood(const Flags& f, std::ostream& out) {
    std::vector<int> coeffs;
    for (std::int64_t c : as_usage([&] { return parse_index_list(f.str("coeffs")); }))
        coeffs.push_back(static_cast<int>(c));
    double L = f.has("L") ? f.real("L") : 1.0;
    if (!(L > 0.0)) throw UsageError("--L must be positive");
    int resolution = static_cast<int>(f.has("resolution") ? f.positive("resolution") : 64);
    ArcMax m = littlewood_arc_max(LittlewoodPoly(coeffs), L, resolution);
    std::ostringstream os;
    os.precision(17);
    os << "L=" << L << "\nt=" << m.t << "\narc_max=" << m.value << '\n';
    out << os.str();
    return kExitOk;
}

int run_tv_survey(const Flags& f, std::ostream& out) {
    Family family = family_flag(f);
    auto k = static_cast<std::size_t>(f.positive("k"));
    ParameterGrid grid = grid_from_flags(f, family);
    SharedParams shared = shared_from_flags(f, family);
    LRule rule = f.has("L") ? as_usage([&] { return parse_lrule(f.str("L")); }) : LRule{};
    auto cap = static_cast<std::size_t>(f.has("cap") ? f.positive("cap") : 100000);
    SurveyResult survey = separation_survey(grid, shared, k, rule, cap);
    std::ostringstream csv;
    write_survey_csv(csv, survey);
    emit(out, csv.str(), f);
    return kExitOk;
}

int run_experiment_cmd(const Flags& f, std::ostream& out) {
    ExperimentConfig config = read_experiment_config(f.str("config"));
    std::filesystem::path dir(f.str("out"));
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error("cannot create '" + dir.string() + "': " + ec.message());
    ExperimentReport report = run_experiment(config);
    std::ostringstream csv;
    write_experiment_csv(csv, report);
    std::string path = (dir / "report.csv").string();
    write_text_file(path, csv.str());
    out << "trials=" << report.trials() << "\nsuccesses=" << report.successes << "\nerrors=" << report.errors
        << "\nreport=" << path << "\nwall_seconds=" << report.wall_seconds << '\n';
    return kExitOk;
}

std::string failing_subcommand(int argc, const char* const* argv) {
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (synopses().count(a)) return a;
    }
    return "";
}

int usage(std::ostream& err, const std::string& reason, const std::string& sub) {
    err << "usage error: " << reason << '\n';
    if (sub.empty()) err << "usage:\n" << full_synopsis();
    else err << "usage: " << synopses().at(sub) << '\n';
    return kExitUsage;
}

} // namespace

int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app("Learning finite mixtures on parameter grids", "mixlearn");
    app.require_subcommand(1);

    auto* simulate = app.add_subcommand("simulate", "Draw samples from a mixture spec");
    Flags sim(simulate);
    sim.add("family", "Family name", true).add("spec", "Spec file", true).add("samples", "Sample count", true)
        .add("seed", "Base seed", true).add("out", "Dataset path", true);

    auto* learn_cmd = app.add_subcommand("learn", "Recover the component parameters");
    Flags lrn(learn_cmd);
    lrn.add("method", "moments, pmf or mde", true).add("family", "Family name", true).add("k", "Components", true)
        .add("data", "Dataset path").add("oracle", "Spec file used as exact distribution").add("eps", "Grid step")
        .add("grid", "Index range MIN:MAX").add("n", "Binomial trials").add("sigma", "Gaussian sigma")
        .add("nb-p", "Negative binomial p").add("T", "Number of moments").add("cap", "Candidate cap")
        .add("out", "Also write the report here");

    auto* plan = app.add_subcommand("plan-samples", "Sample sizes for the moment learners");
    Flags pln(plan);
    pln.add("family", "Family name", true).add("k", "Components", true).add("eps", "Grid step")
        .add("grid", "Index range MIN:MAX").add("n", "Binomial trials").add("T", "Number of moments")
        .add("scheme", "chebyshev or chernoff").add("delta", "Uniform failure probability per order")
        .add("method", "moments, pmf or mde").add("mde-delta", "TV separation for mde").add("C", "mde constant");

    auto* verify = app.add_subcommand("verify-identifiability", "Exhaustive power-sum collision check");
    Flags ver(verify);
    ver.add("n", "Universe size", true).add("mode", "sets or multisets", true).add("q", "Multiplicity bound q")
        .add("T", "Orders to compare").add("cap", "Object cap").add("csv", "Signature CSV path");

    auto* tv = app.add_subcommand("tv", "Total variation tools");
    tv->require_subcommand(1);
    auto* tv_ex = tv->add_subcommand("exact", "Certified TV interval");
    Flags tex(tv_ex);
    tex.add("a", "Spec file", true).add("b", "Spec file", true).add("tol", "Interval width");
    auto* tv_bd = tv->add_subcommand("bound", "Analytic TV lower bound");
    Flags tbd(tv_bd);
    tbd.add("a", "Spec file", true).add("b", "Spec file", true).add("L", "Arc parameter")
        .add("points", "t grid size").add("via", "charfn or gtransform");
    auto* tv_lw = tv->add_subcommand("littlewood", "Arc maximum of a Littlewood polynomial");
    Flags tlw(tv_lw);
    tlw.add("coeffs", "Coefficients in {-1,0,1}", true).add("L", "Arc parameter").add("resolution", "Grid points per unit");
    auto* tv_sv = tv->add_subcommand("survey", "TV over all pairs of k-subsets");
    Flags tsv(tv_sv);
    tsv.add("family", "Family name", true).add("k", "Components", true).add("grid", "Index range MIN:MAX")
        .add("eps", "Grid step").add("n", "Binomial trials").add("sigma", "Gaussian sigma")
        .add("nb-p", "Negative binomial p").add("L", "cbrt or a number").add("cap", "Pair cap")
        .add("out", "CSV path");

    auto* experiment = app.add_subcommand("experiment", "Repeated sample-learn-compare trials");
    Flags exp(experiment);
    exp.add("config", "Config file", true).add("out", "Output directory", true);

    try {
        std::vector<std::string> args;
        for (int i = argc - 1; i >= 1; --i) args.emplace_back(argv[i]);
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        return usage(err, e.what(), failing_subcommand(argc, argv));
    }

    std::string sub = failing_subcommand(argc, argv);
    try {
        if (simulate->parsed()) return run_simulate(sim, out);
        if (learn_cmd->parsed()) return run_learn(lrn, out);
        if (plan->parsed()) return run_plan(pln, out);
        if (verify->parsed()) return run_verify(ver, out);
        if (tv_ex->parsed()) return run_tv_exact(tex, out);
        if (tv_bd->parsed()) return run_tv_bound(tbd, out);
        if (tv_lw->parsed()) return run_tv_littlewood(tlw, out);
        if (tv_sv->parsed()) return run_tv_survey(tsv, out);
        if (experiment->parsed()) return run_experiment_cmd(exp, out);
        return usage(err, "no subcommand", "");
    } catch (const UsageError& e) {
        return usage(err, e.what(), sub);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
}

} // namespace mixlearn
