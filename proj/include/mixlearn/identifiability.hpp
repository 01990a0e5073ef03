#pragma once

#include "mixlearn/power_sums.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace mixlearn {

enum class IdentMode { Sets, Multisets };

std::string_view mode_name(IdentMode mode);
IdentMode parse_mode(std::string_view name);

// Two distinct objects whose power sums agree for orders 0..shared_through.
struct Collision {
    std::vector<std::int64_t> a;
    std::vector<std::int64_t> b;
    unsigned shared_through = 0;
};

struct IdentifiabilityReport {
    std::int64_t n = 0;
    int q = 2;
    IdentMode mode = IdentMode::Sets;
    unsigned T_theorem = 0;
    unsigned T_checked = 0; // orders 0..T_checked were compared
    // Number of leading power sums m_0, m_1, ... needed to separate every
    // pair of objects.
    unsigned T_minimal = 0;
    std::size_t objects = 0;
    bool collision_at_checked = false;
    // The pair agreeing on the most leading power sums, if any two objects
    // share at least m_0.
    std::optional<Collision> witness;
};

// Enumerates every subset of {0..n-1} (sets) or every multiset with
// multiplicities at most q-1 (multisets), computes exact power-sum
// signatures and compares them. T defaults to T_theorem. CapExceededError
// when the object count exceeds `cap`. Rows `object,m_0;...;m_T` go to
// `csv` when given.
IdentifiabilityReport verify_identifiability(std::int64_t n, int q, IdentMode mode,
                                             std::optional<unsigned> T = std::nullopt,
                                             std::size_t cap = std::size_t(1) << 24, std::ostream* csv = nullptr);

// sets: ceil(4 sqrt(n)); multisets: ceil(2 sqrt(q n ln(q n))), natural log.
unsigned log_of_theorem_bound(std::int64_t n, int q, IdentMode mode);

std::string format_report(const IdentifiabilityReport& report);

} // namespace mixlearn
