#include "mixlearn/identifiability.hpp"

#include "mixlearn/error.hpp"

#include <mpfr.h>

#include <algorithm>
#include <numeric>
#include <sstream>

namespace mixlearn {

std::string_view mode_name(IdentMode mode) { return mode == IdentMode::Sets ? "sets" : "multisets"; }

IdentMode parse_mode(std::string_view name) {
    if (name == "sets") return IdentMode::Sets;
    if (name == "multisets") return IdentMode::Multisets;
    throw ParseError("unknown mode '" + std::string(name) + "'");
}

unsigned log_of_theorem_bound(std::int64_t n, int q, IdentMode mode) {
    if (n < 1) throw DomainError("n must be at least 1");
    if (mode == IdentMode::Sets) {
        // smallest T with T^2 >= 16 n
        BigInt s = sqrt(BigInt(16 * n));
        if (s * s < 16 * n) s += 1;
        return static_cast<unsigned>(s.get_ui());
    }
    if (q < 2) throw DomainError("q must be at least 2");
    mpfr_t x;
    mpfr_init2(x, 256);
    mpfr_set_si(x, static_cast<long>(q) * n, MPFR_RNDN);
    mpfr_log(x, x, MPFR_RNDN);
    mpfr_mul_si(x, x, static_cast<long>(q) * n, MPFR_RNDN);
    mpfr_sqrt(x, x, MPFR_RNDN);
    mpfr_mul_ui(x, x, 2, MPFR_RNDN);
    BigInt out;
    mpfr_get_z(out.get_mpz_t(), x, MPFR_RNDU);
    mpfr_clear(x);
    return static_cast<unsigned>(out.get_ui());
}

namespace {

std::vector<std::vector<std::int64_t>> enumerate_objects(std::int64_t n, int q, IdentMode mode, std::size_t cap) {
    const int base = mode == IdentMode::Sets ? 2 : q;
    // count = base^n, checked against the cap before allocating
    BigInt count = pow(BigInt(base), static_cast<unsigned>(n));
    if (count > BigInt(static_cast<unsigned long>(cap)))
        throw CapExceededError("enumeration of " + to_string(count) + " objects exceeds the cap of " +
                               std::to_string(cap));
    const std::size_t total = count.get_ui();
    std::vector<std::vector<std::int64_t>> objects;
    objects.reserve(total);
    std::vector<int> mult(static_cast<std::size_t>(n), 0);
    for (std::size_t id = 0; id < total; ++id) {
        std::size_t rest = id;
        std::vector<std::int64_t> obj;
        for (std::int64_t e = 0; e < n; ++e) {
            int c = static_cast<int>(rest % base);
            rest /= base;
            for (int r = 0; r < c; ++r) obj.push_back(e);
        }
        objects.push_back(std::move(obj));
    }
    return objects;
}

std::size_t common_prefix(const PowerSumVector& a, const PowerSumVector& b) {
    std::size_t i = 0;
    while (i < a.size() && i < b.size() && a[i] == b[i]) ++i;
    return i;
}

} // namespace

IdentifiabilityReport verify_identifiability(std::int64_t n, int q, IdentMode mode, std::optional<unsigned> T,
                                             std::size_t cap, std::ostream* csv) {
    if (n < 1) throw DomainError("n must be at least 1");
    if (mode == IdentMode::Multisets && q < 2) throw DomainError("q must be at least 2");
    IdentifiabilityReport report;
    report.n = n;
    report.q = mode == IdentMode::Sets ? 2 : q;
    report.mode = mode;
    report.T_theorem = log_of_theorem_bound(n, q, mode);
    report.T_checked = T.value_or(report.T_theorem);

    auto objects = enumerate_objects(n, report.q, mode, cap);
    report.objects = objects.size();

    // A multiset of size s is fixed by m_0..m_s, so this many orders always
    // separate everything and T_minimal can be read off the sorted order.
    const unsigned largest = static_cast<unsigned>(n) * static_cast<unsigned>(report.q - 1);
    const unsigned orders = std::max(report.T_checked, largest);
    std::vector<PowerSumVector> sigs(objects.size());
    for (std::size_t i = 0; i < objects.size(); ++i) sigs[i] = power_sums(objects[i], orders);

    if (csv) {
        *csv << "object,signature\n";
        for (std::size_t i = 0; i < objects.size(); ++i) {
            *csv << '{' << format_indices(objects[i], ';') << "},";
            for (unsigned l = 0; l <= report.T_checked; ++l) *csv << (l ? ";" : "") << to_string(sigs[i][l]);
            *csv << '\n';
        }
    }

    std::vector<std::size_t> order(objects.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sigs[a] < sigs[b]; });

    std::size_t best = 0;
    std::size_t best_pos = 0;
    for (std::size_t i = 1; i < order.size(); ++i) {
        std::size_t lcp = common_prefix(sigs[order[i - 1]], sigs[order[i]]);
        if (lcp > best) {
            best = lcp;
            best_pos = i;
        }
    }
    report.T_minimal = static_cast<unsigned>(best + 1);
    report.collision_at_checked = best > report.T_checked;
    if (best > 0) {
        Collision c;
        c.a = objects[order[best_pos - 1]];
        c.b = objects[order[best_pos]];
        if (c.b < c.a) std::swap(c.a, c.b);
        c.shared_through = static_cast<unsigned>(best - 1);
        report.witness = c;
    }
    return report;
}

std::string format_report(const IdentifiabilityReport& r) {
    std::ostringstream os;
    os << "n=" << r.n << '\n' << "mode=" << mode_name(r.mode) << '\n';
    if (r.mode == IdentMode::Multisets) os << "q=" << r.q << '\n' << "log_base=e\n";
    os << "objects=" << r.objects << '\n'
       << "T_theorem=" << r.T_theorem << '\n'
       << "T_checked=" << r.T_checked << '\n'
       << "T_minimal=" << r.T_minimal << '\n'
       << "collision=" << (r.collision_at_checked ? "yes" : "no") << '\n';
    if (r.witness) {
        os << "witness_a={" << format_indices(r.witness->a, ',') << "}\n"
           << "witness_b={" << format_indices(r.witness->b, ',') << "}\n"
           << "witness_shared_through=" << r.witness->shared_through << '\n';
    }
    return os.str();
}

} // namespace mixlearn
