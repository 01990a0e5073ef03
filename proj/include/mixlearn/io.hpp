#pragma once

#include "mixlearn/grid.hpp"
#include "mixlearn/mixture.hpp"
#include "mixlearn/rational.hpp"
#include "mixlearn/sampler.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mixlearn {

// Flat `key=value` text; blank lines and lines starting with '#' are
// skipped. Each value remembers its line for error messages.
class KeyValues {
public:
    void set(const std::string& key, const std::string& value, int line = 0);
    bool has(const std::string& key) const { return entries_.count(key) > 0; }
    std::optional<std::string> find(const std::string& key) const;
    // ParseError when absent.
    const std::string& get(const std::string& key) const;
    int line(const std::string& key) const;
    const std::map<std::string, std::pair<std::string, int>>& entries() const noexcept { return entries_; }

    std::int64_t get_int(const std::string& key) const;
    std::optional<std::int64_t> find_int(const std::string& key) const;
    Rational get_rational(const std::string& key) const;
    std::optional<Rational> find_rational(const std::string& key) const;

    // ParseError naming the first key not in `allowed`.
    void require_only(const std::vector<std::string>& allowed) const;

private:
    std::map<std::string, std::pair<std::string, int>> entries_;
};

KeyValues read_key_values(std::istream& is);
KeyValues read_key_values_file(const std::string& path);

std::int64_t parse_int(std::string_view text, int line = 0);
double parse_real(std::string_view text, int line = 0);
// "1,4" or "1;4"
std::vector<std::int64_t> parse_index_list(std::string_view text, int line = 0);

// Grid for a family from optional eps and index bounds; missing bounds come
// from the family's natural range or, failing that, from `indices`.
ParameterGrid make_grid(Family family, std::optional<Rational> eps, std::optional<std::int64_t> min_index,
                        std::optional<std::int64_t> max_index, const std::vector<std::int64_t>& indices = {});

// Shared parameters from keys n, sigma and nb_p.
SharedParams shared_from(Family family, const KeyValues& kv);

// Spec files: family, k, eps, indices, weights, n, sigma, nb_p, grid_min,
// grid_max. Rationals are written as num/den.
MixtureSpec spec_from_key_values(const KeyValues& kv);
MixtureSpec read_spec(std::istream& is);
MixtureSpec read_spec_file(const std::string& path);
void write_spec(std::ostream& os, const MixtureSpec& spec);
std::string describe_spec(const MixtureSpec& spec);

// One value per line after `#` metadata lines (family=, seed=, spec=). The
// `family` argument overrides the metadata; one of the two is required.
// Discrete datasets must hold nonnegative integers.
SampleDataset read_dataset(std::istream& is, std::optional<Family> family = std::nullopt);
SampleDataset read_dataset_file(const std::string& path, std::optional<Family> family = std::nullopt);
void write_dataset(std::ostream& os, const SampleDataset& data);
void write_dataset_file(const std::string& path, const SampleDataset& data);

void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

// Writes `text` to `path`, replacing it; Error when the file cannot be opened.
void write_text_file(const std::string& path, const std::string& text);

} // namespace mixlearn
