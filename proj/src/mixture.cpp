#include "mixlearn/mixture.hpp"

#include "mixlearn/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

namespace mixlearn {

void validate_shared(Family family, const SharedParams& shared) {
    switch (family) {
    case Family::BinomialP:
        if (!shared.trials || *shared.trials < 0) throw DomainError("binomial mixture needs a trial count n >= 0");
        break;
    case Family::Gaussian:
        if (!shared.sigma || !(*shared.sigma > 0.0) || !std::isfinite(*shared.sigma))
            throw DomainError("Gaussian mixture needs a positive sigma");
        break;
    case Family::NegBinomial:
        if (!shared.nb_p || sgn(*shared.nb_p) <= 0 || *shared.nb_p >= 1)
            throw DomainError("negative binomial mixture needs shared p in (0,1)");
        break;
    default:
        break;
    }
}

MixtureSpec::MixtureSpec(ParameterGrid grid, std::vector<std::int64_t> indices, SharedParams shared)
    : grid_(std::move(grid)), indices_(std::move(indices)), shared_(std::move(shared)) {
    if (indices_.empty()) throw DomainError("mixture needs at least one component");
    weights_.assign(indices_.size(), Rational(1, static_cast<unsigned long>(indices_.size())));
    uniform_ = true;
    validate();
}

MixtureSpec::MixtureSpec(ParameterGrid grid, std::vector<std::int64_t> indices, std::vector<Rational> weights,
                         SharedParams shared)
    : grid_(std::move(grid)), indices_(std::move(indices)), weights_(std::move(weights)), shared_(std::move(shared)) {
    if (indices_.empty()) throw DomainError("mixture needs at least one component");
    if (weights_.size() != indices_.size()) throw DomainError("weights and indices differ in length");
    for (auto& w : weights_) {
        w.canonicalize();
        if (sgn(w) <= 0) throw DomainError("mixture weights must be positive");
    }
    // Keep weights attached to their components while sorting.
    std::vector<std::size_t> order(indices_.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return indices_[a] < indices_[b]; });
    std::vector<std::int64_t> idx;
    std::vector<Rational> w;
    for (auto o : order) {
        idx.push_back(indices_[o]);
        w.push_back(weights_[o]);
    }
    indices_ = std::move(idx);
    weights_ = std::move(w);
    Rational total = 0;
    for (const auto& x : weights_) total += x;
    if (total != 1) throw DomainError("mixture weights must sum to exactly 1");
    uniform_ = std::all_of(weights_.begin(), weights_.end(), [&](const Rational& x) { return x == weights_.front(); });
    validate();
}

void MixtureSpec::validate() {
    // The weighted constructor has already sorted with weights attached.
    if (!std::is_sorted(indices_.begin(), indices_.end())) std::sort(indices_.begin(), indices_.end());
    for (auto i : indices_)
        if (!grid_.contains(i))
            throw DomainError("index " + std::to_string(i) + " outside grid [" + std::to_string(grid_.min_index()) +
                              ", " + std::to_string(grid_.max_index()) + "]");
    if (is_analytic(grid_.family()) && std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end())
        throw DomainError(std::string(family_name(grid_.family())) + " mixture components must be distinct");
    validate_shared(grid_.family(), shared_);
}

bool MixtureSpec::compatible_with(const MixtureSpec& other) const {
    return family() == other.family() && grid_.step() == other.grid_.step() && shared_ == other.shared_;
}

std::string format_indices(const std::vector<std::int64_t>& indices, char sep) {
    std::string out;
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (i) out += sep;
        out += std::to_string(indices[i]);
    }
    return out;
}

void require_compatible(const MixtureSpec& a, const MixtureSpec& b) {
    if (a.family() != b.family())
        throw FamilyMismatchError("family mismatch: " + std::string(family_name(a.family())) + " vs " +
                                  std::string(family_name(b.family())));
    if (!a.compatible_with(b)) throw FamilyMismatchError("mixtures differ in grid step or shared parameters");
}

} // namespace mixlearn
