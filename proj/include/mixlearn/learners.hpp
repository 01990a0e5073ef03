#pragma once

#include "mixlearn/grid.hpp"
#include "mixlearn/mixture.hpp"
#include "mixlearn/rational.hpp"
#include "mixlearn/sampler.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mixlearn {

// What a learner sees: samples, or in oracle mode the exact distribution of
// the truth. Non-owning; the referenced object must outlive the call.
class Observation {
public:
    static Observation samples(const SampleDataset& data) { return Observation(&data, nullptr); }
    static Observation exact(const MixtureSpec& truth) { return Observation(nullptr, &truth); }

    bool oracle() const noexcept { return truth_ != nullptr; }
    const SampleDataset& data() const { return *data_; }
    const MixtureSpec& truth() const { return *truth_; }

private:
    Observation(const SampleDataset* data, const MixtureSpec* truth) : data_(data), truth_(truth) {}
    const SampleDataset* data_;
    const MixtureSpec* truth_;
};

enum class LearnMethod { Moments, Pmf, Mde };

std::string_view method_name(LearnMethod method);
LearnMethod parse_method(std::string_view name);

struct LearnResult {
    std::vector<std::int64_t> recovered;
    LearnMethod method = LearnMethod::Moments;
    unsigned T_requested = 0; // max(k, T_theorem)
    unsigned T_used = 0;      // orders actually inverted
    // Lattice and power-sum rounding residuals, in units of the spacing.
    std::vector<double> residuals;
    double max_residual = 0.0;
    unsigned warnings = 0; // lattice residuals above 1/4
    double delta = 0.0;    // MDE statistic
    std::size_t samples = 0;
    std::optional<bool> exact_match;
};

struct MomentOptions {
    std::optional<unsigned> T; // overrides max(k, T_theorem)
    // Orders above k are kept while the standard error of the implied power
    // sum stays at or below this bound.
    double se_limit = 1.0 / 16.0;
};

// Smallest T with T^2 eps >= 16, i.e. ceil(4 / sqrt(eps)).
unsigned moment_order_for_step(const Rational& eps);

// Moments -> lattice rounding (spacing eps^l / k, when 1/eps is integral) ->
// power sums -> multiset. T = max(k, ceil(4/sqrt(eps))), capped at n.
LearnResult learn_binomial_moments(const Observation& obs, std::int64_t n, const Rational& eps, std::size_t k,
                                   const MomentOptions& options = {});

// GeometricU grid with LearnMethod::Moments (T = max(k, ceil(4 sqrt(N))),
// N the largest index) or GeometricP grid with LearnMethod::Pmf (point
// masses P_0..P_(T-1), spacing eps^(l+1)/k, T = max(k, ceil(4/sqrt(eps)))).
LearnResult learn_geometric(const Observation& obs, const ParameterGrid& grid, std::size_t k, LearnMethod variant,
                            const MomentOptions& options = {});

// Minimum distance selection over all distinct k-subsets of the grid.
LearnResult learn_mde(const Observation& obs, const ParameterGrid& grid, std::size_t k, const SharedParams& shared,
                      std::size_t cap = 100000);

// Picks the learner for (method, grid family): moments on BinomialP or
// GeometricU, pmf on GeometricP, mde on any family. ContractError otherwise.
LearnResult learn(const Observation& obs, LearnMethod method, const ParameterGrid& grid, std::size_t k,
                  const SharedParams& shared, const MomentOptions& options = {}, std::size_t cap = 100000);

// m = ceil(C ln(candidates) / delta^2) for the minimum distance estimate.
std::size_t mde_sample_size(std::size_t candidates, double delta, double C = 8.0);

// Gaussian index range covering the data +- 4 sigma.
ParameterGrid gaussian_grid_from_data(const SampleDataset& data, const Rational& eps, double sigma);

std::string format_learn(const LearnResult& result, const ParameterGrid& grid);

} // namespace mixlearn
