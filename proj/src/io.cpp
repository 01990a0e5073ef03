#include "mixlearn/io.hpp"

#include "mixlearn/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace mixlearn {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "' for reading");
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    return out;
}

std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Rational with_line(std::string_view text, int line) {
    try {
        return parse_rational(text);
    } catch (const ParseError& e) {
        throw ParseError(e.what(), line);
    }
}

} // namespace

void KeyValues::set(const std::string& key, const std::string& value, int line) { entries_[key] = {value, line}; }

std::optional<std::string> KeyValues::find(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second.first;
}

const std::string& KeyValues::get(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) throw ParseError("missing key '" + key + "'");
    return it->second.first;
}

int KeyValues::line(const std::string& key) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? 0 : it->second.second;
}

std::int64_t KeyValues::get_int(const std::string& key) const { return parse_int(get(key), line(key)); }

std::optional<std::int64_t> KeyValues::find_int(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    return get_int(key);
}

Rational KeyValues::get_rational(const std::string& key) const { return with_line(get(key), line(key)); }

std::optional<Rational> KeyValues::find_rational(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    return get_rational(key);
}

void KeyValues::require_only(const std::vector<std::string>& allowed) const {
    for (const auto& [key, value] : entries_)
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw ParseError("unknown key '" + key + "'", value.second);
}

KeyValues read_key_values(std::istream& is) {
    KeyValues kv;
    std::string raw;
    int line = 0;
    while (std::getline(is, raw)) {
        ++line;
        std::string_view s = trim(raw);
        if (s.empty() || s.front() == '#') continue;
        auto eq = s.find('=');
        if (eq == std::string_view::npos) throw ParseError("expected key=value", line);
        std::string key(trim(s.substr(0, eq)));
        std::string value(trim(s.substr(eq + 1)));
        if (key.empty()) throw ParseError("empty key", line);
        if (kv.has(key)) throw ParseError("duplicate key '" + key + "'", line);
        kv.set(key, value, line);
    }
    return kv;
}

KeyValues read_key_values_file(const std::string& path) {
    auto in = open_input(path);
    return read_key_values(in);
}

std::int64_t parse_int(std::string_view text, int line) {
    text = trim(text);
    std::int64_t v = 0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (text.empty() || ec != std::errc() || ptr != end)
        throw ParseError("not an integer: '" + std::string(text) + "'", line);
    return v;
}

double parse_real(std::string_view text, int line) {
    text = trim(text);
    if (text.find('/') != std::string_view::npos) return to_double(with_line(text, line));
    std::string s(text);
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v))
        throw ParseError("not a number: '" + s + "'", line);
    return v;
}

std::vector<std::int64_t> parse_index_list(std::string_view text, int line) {
    std::vector<std::int64_t> out;
    std::string s(text);
    std::replace(s.begin(), s.end(), ';', ',');
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_int(item, line));
    if (out.empty()) throw ParseError("empty index list", line);
    return out;
}

ParameterGrid make_grid(Family family, std::optional<Rational> eps, std::optional<std::int64_t> min_index,
                        std::optional<std::int64_t> max_index, const std::vector<std::int64_t>& indices) {
    auto from_indices_max = [&](std::int64_t fallback) {
        if (max_index) return *max_index;
        if (indices.empty()) return fallback;
        return *std::max_element(indices.begin(), indices.end());
    };
    switch (family) {
    case Family::BinomialP:
    case Family::GeometricP: {
        if (!eps) throw ParseError("eps is required for " + std::string(family_name(family)));
        Rational inv = 1 / *eps;
        std::int64_t top = max_index.value_or(to_int64(floor(inv)));
        return ParameterGrid(family, *eps, min_index.value_or(0), top);
    }
    case Family::GeometricU:
        if (!eps) throw ParseError("eps is required for geometric-u");
        return ParameterGrid(family, *eps, min_index.value_or(0), from_indices_max(0));
    case Family::Poisson:
        return ParameterGrid(family, eps.value_or(1), min_index.value_or(0), from_indices_max(0));
    case Family::ChiSquared:
    case Family::NegBinomial:
        return ParameterGrid(family, eps.value_or(1), min_index.value_or(1), from_indices_max(1));
    case Family::Gaussian: {
        std::int64_t lo = min_index ? *min_index
                                    : (indices.empty() ? 0 : *std::min_element(indices.begin(), indices.end()));
        return ParameterGrid(family, eps.value_or(1), lo, from_indices_max(lo));
    }
    }
    throw ContractError("unknown family");
}

SharedParams shared_from(Family family, const KeyValues& kv) {
    SharedParams shared;
    if (family == Family::BinomialP) shared.trials = kv.get_int("n");
    if (family == Family::Gaussian) shared.sigma = parse_real(kv.get("sigma"), kv.line("sigma"));
    if (family == Family::NegBinomial) shared.nb_p = kv.get_rational("nb_p");
    validate_shared(family, shared);
    return shared;
}

MixtureSpec spec_from_key_values(const KeyValues& kv) {
    kv.require_only({"family", "k", "eps", "indices", "weights", "n", "sigma", "nb_p", "grid_min", "grid_max"});
    Family family;
    try {
        family = parse_family(kv.get("family"));
    } catch (const ParseError& e) {
        throw ParseError(e.what(), kv.line("family"));
    }
    auto indices = parse_index_list(kv.get("indices"), kv.line("indices"));
    if (auto k = kv.find_int("k"); k && *k != static_cast<std::int64_t>(indices.size()))
        throw ParseError("k = " + std::to_string(*k) + " but " + std::to_string(indices.size()) + " indices given",
                         kv.line("k"));
    std::sort(indices.begin(), indices.end());
    ParameterGrid grid = make_grid(family, kv.find_rational("eps"), kv.find_int("grid_min"), kv.find_int("grid_max"),
                                   indices);
    SharedParams shared = shared_from(family, kv);
    if (auto w = kv.find("weights")) {
        std::vector<Rational> weights;
        std::string s = *w;
        std::replace(s.begin(), s.end(), ';', ',');
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ',')) weights.push_back(with_line(item, kv.line("weights")));
        return MixtureSpec(grid, indices, weights, shared);
    }
    return MixtureSpec(grid, indices, shared);
}

MixtureSpec read_spec(std::istream& is) { return spec_from_key_values(read_key_values(is)); }

MixtureSpec read_spec_file(const std::string& path) {
    auto in = open_input(path);
    return read_spec(in);
}

void write_spec(std::ostream& os, const MixtureSpec& spec) {
    os << "family=" << family_name(spec.family()) << '\n'
       << "k=" << spec.k() << '\n'
       << "eps=" << to_string(spec.grid().step()) << '\n'
       << "grid_min=" << spec.grid().min_index() << '\n'
       << "grid_max=" << spec.grid().max_index() << '\n'
       << "indices=" << format_indices(spec.indices(), ',') << '\n';
    if (!spec.uniform()) {
        os << "weights=";
        for (std::size_t i = 0; i < spec.k(); ++i) os << (i ? "," : "") << to_string(spec.weights()[i]);
        os << '\n';
    }
    const auto& sh = spec.shared();
    if (sh.trials) os << "n=" << *sh.trials << '\n';
    if (sh.sigma) os << "sigma=" << format_real(*sh.sigma) << '\n';
    if (sh.nb_p) os << "nb_p=" << to_string(*sh.nb_p) << '\n';
}

std::string describe_spec(const MixtureSpec& spec) {
    std::ostringstream os;
    os << family_name(spec.family()) << " eps=" << to_string(spec.grid().step())
       << " indices=" << format_indices(spec.indices(), ',');
    const auto& sh = spec.shared();
    if (sh.trials) os << " n=" << *sh.trials;
    if (sh.sigma) os << " sigma=" << format_real(*sh.sigma);
    if (sh.nb_p) os << " nb_p=" << to_string(*sh.nb_p);
    return os.str();
}

SampleDataset read_dataset(std::istream& is, std::optional<Family> family) {
    SampleDataset data;
    std::optional<Family> meta_family;
    std::vector<std::pair<std::string, int>> tokens;
    std::string raw;
    int line = 0;
    while (std::getline(is, raw)) {
        ++line;
        std::string_view s = trim(raw);
        if (s.empty()) continue;
        if (s.front() == '#') {
            std::string_view body = trim(s.substr(1));
            auto eq = body.find('=');
            if (eq == std::string_view::npos) continue;
            std::string_view key = trim(body.substr(0, eq));
            std::string_view value = trim(body.substr(eq + 1));
            try {
                if (key == "family") meta_family = parse_family(value);
                else if (key == "seed") data.seed = static_cast<std::uint64_t>(std::stoull(std::string(value)));
                else if (key == "spec") data.spec_text = std::string(value);
            } catch (const ParseError& e) {
                throw ParseError(e.what(), line);
            } catch (const std::exception&) {
                throw ParseError("bad metadata value '" + std::string(value) + "'", line);
            }
            continue;
        }
        tokens.emplace_back(std::string(s), line);
    }
    if (family) data.family = *family;
    else if (meta_family) data.family = *meta_family;
    else throw ParseError("dataset family unknown: add '# family=...' or pass it explicitly");

    if (is_discrete(data.family)) {
        data.integers.reserve(tokens.size());
        for (const auto& [tok, ln] : tokens) {
            std::int64_t v = parse_int(tok, ln);
            if (v < 0) throw ParseError("negative count '" + tok + "'", ln);
            data.integers.push_back(v);
        }
    } else {
        data.reals.reserve(tokens.size());
        for (const auto& [tok, ln] : tokens) data.reals.push_back(parse_real(tok, ln));
    }
    return data;
}

SampleDataset read_dataset_file(const std::string& path, std::optional<Family> family) {
    auto in = open_input(path);
    return read_dataset(in, family);
}

void write_dataset(std::ostream& os, const SampleDataset& data) {
    os << "# family=" << family_name(data.family) << '\n';
    if (data.seed) os << "# seed=" << *data.seed << '\n';
    if (!data.spec_text.empty()) os << "# spec=" << data.spec_text << '\n';
    if (is_discrete(data.family)) {
        for (std::int64_t v : data.integers) os << v << '\n';
    } else {
        for (double v : data.reals) os << format_real(v) << '\n';
    }
}

void write_dataset_file(const std::string& path, const SampleDataset& data) {
    auto out = open_output(path);
    write_dataset(out, data);
    if (!out) throw Error("write to '" + path + "' failed");
}

void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    auto emit = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) os << ',';
            const std::string& c = cells[i];
            if (c.find_first_of(",\"\n") != std::string::npos) {
                os << '"';
                for (char ch : c) os << (ch == '"' ? "\"\"" : std::string(1, ch));
                os << '"';
            } else {
                os << c;
            }
        }
        os << '\n';
    };
    emit(header);
    for (const auto& row : rows) emit(row);
}

void write_text_file(const std::string& path, const std::string& text) {
    auto out = open_output(path);
    out << text;
    if (!out) throw Error("write to '" + path + "' failed");
}

} // namespace mixlearn
