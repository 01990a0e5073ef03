#pragma once

#include "mixlearn/grid.hpp"
#include "mixlearn/mixture.hpp"
#include "mixlearn/rational.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mixlearn {

enum class PlanScheme { Chebyshev, Chernoff };

std::string_view scheme_name(PlanScheme scheme);
PlanScheme parse_scheme(std::string_view name);

struct MomentPlan {
    unsigned order = 0;
    Rational spacing;      // lattice spacing of the estimated quantity
    Rational gamma;        // tolerance, spacing / 2
    Rational failure_prob; // 9^-(1+T-l) unless overridden
    BigInt samples;
};

struct SamplePlan {
    Family family = Family::BinomialP;
    PlanScheme scheme = PlanScheme::Chebyshev;
    unsigned T = 0;
    std::vector<MomentPlan> per_moment;
    BigInt total; // max over orders: one dataset serves every order
    Rational total_failure;
};

// Sample counts per order.
//   BinomialP  (chebyshev): orders 1..T, t = ceil(gamma^-2 n^(2l) / delta)
//   GeometricU (chebyshev): orders 1..T,
//                           t = ceil(2 gamma^-2 (4l/p_min)^(2l+1) / delta)
//   GeometricP (chernoff):  point masses 0..T, t = ceil(3 gamma^-2 ln(2/delta))
// with gamma = eps^l/(2k) for moments, eps^(l+1)/(2k) for point masses, and
// delta = 9^-(1+T-l) or the uniform override. Other pairings: ContractError.
SamplePlan plan_samples(Family family, std::size_t k, const ParameterGrid& grid, const SharedParams& shared,
                        unsigned T, PlanScheme scheme, std::optional<Rational> uniform_delta = std::nullopt);

// Key-value report, one `order=` line per planned order.
std::string format_plan(const SamplePlan& plan);

} // namespace mixlearn
