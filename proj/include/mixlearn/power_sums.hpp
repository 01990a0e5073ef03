#pragma once

#include "mixlearn/grid.hpp"
#include "mixlearn/mixture.hpp"
#include "mixlearn/rational.hpp"

#include <cstdint>
#include <vector>

namespace mixlearn {

// m_0..m_T of an index multiset A, m_l = sum_{a in A} a^l.
using PowerSumVector = std::vector<BigInt>;

PowerSumVector power_sums(const std::vector<std::int64_t>& multiset, unsigned T);

struct PowerSumSolve {
    PowerSumVector sums;
    std::vector<Rational> residuals; // distance of each solved m_l from the nearest integer
    Rational max_residual;
};

// Solves k M_l = sum_d c_{l,d} m_d for m_1..m_T, where c_{l,d} are the
// coefficients of the order-l moment polynomial after substituting the grid
// map (p = eps a for BinomialP, u = 1 + eps a for GeometricU). Each m_l is
// rounded to the nearest integer before the next order is solved.
// InconsistencyError when a residual exceeds 1/4 or a value leaves
// [0, k max_index^l]; DegeneracyError for BinomialP with n < T.
PowerSumSolve moments_to_power_sums(const std::vector<Rational>& moments, const ParameterGrid& grid,
                                    const SharedParams& shared, std::size_t k);

// Geometric point masses on a p-grid: k P_l = sum_j C(l,j) (-1)^j eps^(j+1) m_(j+1),
// solved for m_1..m_(T+1) from P_0..P_T. m_0 = k.
PowerSumSolve pmf_to_power_sums(const std::vector<Rational>& probs, const ParameterGrid& grid, std::size_t k);

// e_1..e_k from m_0..m_T (T >= k) by Newton's identities; entry 0 of the
// result is e_0 = 1. InconsistencyError when some e_l is not an integer.
std::vector<Rational> newton_to_elementary(const PowerSumVector& m, std::size_t k);

// Integer roots of x^k - e_1 x^(k-1) + ... in [lo, hi] by trial division,
// then a check of every supplied power sum. Needs T >= k.
std::vector<std::int64_t> reconstruct_by_roots(const PowerSumVector& m, std::int64_t lo, std::int64_t hi,
                                               std::size_t k);

// Depth-first search over multiplicities of lo..hi (lo >= 0), pruned by the
// remaining power-sum budgets. Exactly one solution must exist; two raise
// AmbiguityError naming both.
std::vector<std::int64_t> reconstruct_by_search(const PowerSumVector& m, std::int64_t lo, std::int64_t hi,
                                                std::size_t k);

// Roots when T >= k, search otherwise. ReconstructionError when no multiset
// over [lo, hi] matches.
std::vector<std::int64_t> reconstruct_multiset(const PowerSumVector& m, std::int64_t lo, std::int64_t hi,
                                               std::size_t k);

} // namespace mixlearn
