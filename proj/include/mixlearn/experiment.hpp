#pragma once

#include "mixlearn/grid.hpp"
#include "mixlearn/io.hpp"
#include "mixlearn/learners.hpp"
#include "mixlearn/mixture.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mixlearn {

struct ExperimentConfig {
    LearnMethod method = LearnMethod::Mde;
    std::size_t k = 1;
    ParameterGrid grid = ParameterGrid::poisson(1);
    SharedParams shared;
    // Fixed truth; when absent each trial draws k distinct grid indices.
    std::optional<std::vector<std::int64_t>> truth;
    std::size_t samples = 0; // ignored in oracle mode
    std::size_t trials = 1;
    std::uint64_t seed = 0;
    bool oracle = false;
    std::optional<unsigned> T;
    std::size_t cap = 100000;
};

// Keys: family, method, k, eps, grid_min, grid_max, n, sigma, nb_p, truth,
// samples, trials, seed, oracle (true/false), T, cap.
ExperimentConfig experiment_config_from(const KeyValues& kv);
ExperimentConfig read_experiment_config(const std::string& path);
std::string describe_config(const ExperimentConfig& config);

struct TrialRecord {
    std::size_t trial = 0;
    std::uint64_t seed = 0; // base seed + trial
    std::vector<std::int64_t> truth;
    std::vector<std::int64_t> recovered; // empty when the learner failed
    bool success = false;
    double delta_or_residual = 0.0;
    std::string error;
};

struct ExperimentReport {
    std::string config;
    std::vector<TrialRecord> records;
    std::size_t successes = 0;
    std::size_t errors = 0;
    double wall_seconds = 0.0;

    std::size_t trials() const noexcept { return records.size(); }
};

// Trial i samples with seed + i, learns and compares with the truth. Learner
// errors are recorded as failed trials.
ExperimentReport run_experiment(const ExperimentConfig& config);

// `trial,seed,recovered,success,delta_or_residual` rows, then one `#` summary
// line. Wall-clock time is left out so reruns produce identical files.
void write_experiment_csv(std::ostream& os, const ExperimentReport& report);

} // namespace mixlearn
