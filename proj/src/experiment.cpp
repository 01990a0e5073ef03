#include "mixlearn/experiment.hpp"

#include "mixlearn/error.hpp"
#include "mixlearn/random.hpp"
#include "mixlearn/sampler.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace mixlearn {

namespace {

bool parse_bool(const std::string& text, int line) {
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    throw ParseError("expected true or false, got '" + text + "'", line);
}

std::vector<std::int64_t> random_truth(const ParameterGrid& grid, std::size_t k, std::uint64_t seed) {
    if (static_cast<std::int64_t>(k) > grid.size()) throw DomainError("k exceeds the grid size");
    Rng rng(derive_seed(seed, 0x7275746875ull));
    std::vector<std::int64_t> pool;
    for (std::int64_t i = grid.min_index(); i <= grid.max_index(); ++i) pool.push_back(i);
    // Partial Fisher-Yates.
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t j = i + static_cast<std::size_t>(rng.next_u64() % (pool.size() - i));
        std::swap(pool[i], pool[j]);
    }
    std::vector<std::int64_t> out(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
    std::sort(out.begin(), out.end());
    return out;
}

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

ExperimentConfig experiment_config_from(const KeyValues& kv) {
    kv.require_only({"family", "method", "k", "eps", "grid_min", "grid_max", "n", "sigma", "nb_p", "truth", "samples",
                     "trials", "seed", "oracle", "T", "cap"});
    ExperimentConfig c;
    Family family;
    try {
        family = parse_family(kv.get("family"));
        c.method = parse_method(kv.get("method"));
    } catch (const ParseError& e) {
        throw ParseError(e.what(), kv.line(kv.has("method") ? "method" : "family"));
    }
    std::int64_t k = kv.get_int("k");
    if (k < 1) throw ParseError("k must be at least 1", kv.line("k"));
    c.k = static_cast<std::size_t>(k);
    if (auto t = kv.find("truth")) {
        auto truth = parse_index_list(*t, kv.line("truth"));
        std::sort(truth.begin(), truth.end());
        if (truth.size() != c.k) throw ParseError("truth has " + std::to_string(truth.size()) + " indices, k = " +
                                                      std::to_string(k), kv.line("truth"));
        c.truth = truth;
    }
    c.grid = make_grid(family, kv.find_rational("eps"), kv.find_int("grid_min"), kv.find_int("grid_max"),
                       c.truth.value_or(std::vector<std::int64_t>{}));
    c.shared = shared_from(family, kv);
    if (c.truth)
        for (std::int64_t i : *c.truth)
            if (!c.grid.contains(i)) throw ParseError("truth index " + std::to_string(i) + " is off the grid",
                                                       kv.line("truth"));
    c.oracle = kv.has("oracle") && parse_bool(kv.get("oracle"), kv.line("oracle"));
    if (!c.oracle) {
        std::int64_t m = kv.get_int("samples");
        if (m < 1) throw ParseError("samples must be positive", kv.line("samples"));
        c.samples = static_cast<std::size_t>(m);
    }
    std::int64_t trials = kv.find_int("trials").value_or(1);
    if (trials < 1) throw ParseError("trials must be positive", kv.line("trials"));
    c.trials = static_cast<std::size_t>(trials);
    std::int64_t seed = kv.find_int("seed").value_or(0);
    if (seed < 0) throw ParseError("seed must be nonnegative", kv.line("seed"));
    c.seed = static_cast<std::uint64_t>(seed);
    if (auto T = kv.find_int("T")) {
        if (*T < 1) throw ParseError("T must be positive", kv.line("T"));
        c.T = static_cast<unsigned>(*T);
    }
    if (auto cap = kv.find_int("cap")) {
        if (*cap < 1) throw ParseError("cap must be positive", kv.line("cap"));
        c.cap = static_cast<std::size_t>(*cap);
    }
    return c;
}

ExperimentConfig read_experiment_config(const std::string& path) {
    return experiment_config_from(read_key_values_file(path));
}

std::string describe_config(const ExperimentConfig& c) {
    std::ostringstream os;
    os << "family=" << family_name(c.grid.family()) << " method=" << method_name(c.method) << " k=" << c.k
       << " eps=" << to_string(c.grid.step()) << " grid=" << c.grid.min_index() << ":" << c.grid.max_index();
    if (c.shared.trials) os << " n=" << *c.shared.trials;
    if (c.shared.sigma) os << " sigma=" << format_number(*c.shared.sigma);
    if (c.shared.nb_p) os << " nb_p=" << to_string(*c.shared.nb_p);
    os << " truth=" << (c.truth ? format_indices(*c.truth) : std::string("random"));
    if (c.oracle) os << " oracle=true";
    else os << " samples=" << c.samples;
    os << " trials=" << c.trials << " seed=" << c.seed;
    if (c.T) os << " T=" << *c.T;
    return os.str();
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
    if (config.trials == 0) throw DomainError("trials must be positive");
    if (!config.oracle && config.samples == 0) throw DomainError("samples must be positive");
    auto start = std::chrono::steady_clock::now();
    ExperimentReport report;
    report.config = describe_config(config);
    MomentOptions options;
    options.T = config.T;

    for (std::size_t i = 0; i < config.trials; ++i) {
        TrialRecord rec;
        rec.trial = i;
        rec.seed = config.seed + i;
        rec.truth = config.truth ? *config.truth : random_truth(config.grid, config.k, rec.seed);
        try {
            MixtureSpec truth(config.grid, rec.truth, config.shared);
            LearnResult r;
            if (config.oracle) {
                r = learn(Observation::exact(truth), config.method, config.grid, config.k, config.shared, options,
                          config.cap);
            } else {
                SampleDataset data = sample(truth, config.samples, rec.seed);
                r = learn(Observation::samples(data), config.method, config.grid, config.k, config.shared, options,
                          config.cap);
            }
            rec.recovered = r.recovered;
            rec.success = r.recovered == rec.truth;
            rec.delta_or_residual = r.method == LearnMethod::Mde ? r.delta : r.max_residual;
        } catch (const Error& e) {
            rec.error = e.what();
            ++report.errors;
        }
        if (rec.success) ++report.successes;
        report.records.push_back(std::move(rec));
    }
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

void write_experiment_csv(std::ostream& os, const ExperimentReport& report) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : report.records) {
        rows.push_back({std::to_string(r.trial), std::to_string(r.seed),
                        r.error.empty() ? format_indices(r.recovered) : "error", r.success ? "1" : "0",
                        r.error.empty() ? format_number(r.delta_or_residual) : "nan"});
    }
    write_csv(os, {"trial", "seed", "recovered", "success", "delta_or_residual"}, rows);
    os << "# trials=" << report.trials() << " successes=" << report.successes << " errors=" << report.errors
       << " config: " << report.config << '\n';
}

} // namespace mixlearn
