#include "mixlearn/random.hpp"

#include <cmath>
#include <numbers>

namespace mixlearn {

double Rng::normal() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_normal_;
    }
    double u1 = uniform_open_low();
    double u2 = uniform();
    double radius = std::sqrt(-2.0 * std::log(u1));
    double angle = 2.0 * std::numbers::pi * u2;
    cached_normal_ = radius * std::sin(angle);
    has_cached_ = true;
    return radius * std::cos(angle);
}

std::size_t Rng::categorical(const double* cumulative, std::size_t size) {
    double u = uniform();
    for (std::size_t i = 0; i + 1 < size; ++i)
        if (u < cumulative[i]) return i;
    return size - 1;
}

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    return mix64(mix64(seed) ^ mix64(stream + 0xD1B54A32D192ED03ull));
}

} // namespace mixlearn
