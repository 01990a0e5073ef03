#pragma once

#include "mixlearn/grid.hpp"
#include "mixlearn/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mixlearn {

// Known parameters shared by every component of a mixture.
struct SharedParams {
    std::optional<std::int64_t> trials; // BinomialP: n
    std::optional<double> sigma;        // Gaussian: standard deviation
    std::optional<Rational> nb_p;       // NegBinomial: success parameter in (0,1)

    bool operator==(const SharedParams&) const = default;
};

// Validates the shared parameters a family needs; throws DomainError.
void validate_shared(Family family, const SharedParams& shared);

// A finite mixture over grid-indexed components. Immutable once built.
class MixtureSpec {
public:
    // Uniform weights 1/k.
    MixtureSpec(ParameterGrid grid, std::vector<std::int64_t> indices, SharedParams shared = {});
    MixtureSpec(ParameterGrid grid, std::vector<std::int64_t> indices, std::vector<Rational> weights,
                SharedParams shared);

    const ParameterGrid& grid() const noexcept { return grid_; }
    Family family() const noexcept { return grid_.family(); }
    const std::vector<std::int64_t>& indices() const noexcept { return indices_; }
    const std::vector<Rational>& weights() const noexcept { return weights_; }
    const SharedParams& shared() const noexcept { return shared_; }
    std::size_t k() const noexcept { return indices_.size(); }
    bool uniform() const noexcept { return uniform_; }

    Rational parameter(std::size_t component) const { return grid_.value(indices_[component]); }
    double parameter_d(std::size_t component) const { return grid_.value_d(indices_[component]); }
    double weight_d(std::size_t component) const { return to_double(weights_[component]); }

    // Same family, grid step and shared parameters.
    bool compatible_with(const MixtureSpec& other) const;

    bool operator==(const MixtureSpec&) const = default;

private:
    void validate();

    ParameterGrid grid_;
    std::vector<std::int64_t> indices_;
    std::vector<Rational> weights_;
    SharedParams shared_;
    bool uniform_ = true;
};

// "1;4" style rendering of an index multiset, used in CSV cells.
std::string format_indices(const std::vector<std::int64_t>& indices, char sep = ';');

// Throws FamilyMismatchError when a and b cannot be compared.
void require_compatible(const MixtureSpec& a, const MixtureSpec& b);

} // namespace mixlearn
