#include "mixlearn/littlewood.hpp"

#include "mixlearn/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mixlearn {

LittlewoodPoly::LittlewoodPoly(std::vector<int> coefficients) : coefficients_(std::move(coefficients)) {
    bool nonzero = false;
    for (int c : coefficients_) {
        if (c < -1 || c > 1) throw DomainError("Littlewood coefficients must lie in {-1, 0, 1}");
        nonzero = nonzero || c != 0;
    }
    if (!nonzero) throw DomainError("Littlewood polynomial must have a nonzero coefficient");
}

std::complex<double> LittlewoodPoly::evaluate(std::complex<double> z) const {
    std::complex<double> acc = 0.0;
    for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * z + static_cast<double>(*it);
    return acc;
}

double LittlewoodPoly::modulus_on_circle(double t) const {
    const std::complex<double> step = std::polar(1.0, t);
    std::complex<double> z = 1.0, acc = 0.0;
    for (int c : coefficients_) {
        if (c != 0) acc += static_cast<double>(c) * z;
        z *= step;
    }
    return std::abs(acc);
}

namespace {

ArcMax golden_section(const LittlewoodPoly& poly, double lo, double hi) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = poly.modulus_on_circle(c);
    double fd = poly.modulus_on_circle(d);
    for (int iter = 0; iter < 80 && b - a > 1e-10; ++iter) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = poly.modulus_on_circle(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = poly.modulus_on_circle(d);
        }
    }
    return fc >= fd ? ArcMax{c, fc} : ArcMax{d, fd};
}

} // namespace

ArcMax littlewood_arc_max(const LittlewoodPoly& poly, double L, int resolution) {
    if (!(L > 0.0)) throw DomainError("L must be positive");
    if (resolution < 64) throw DomainError("resolution must be at least 64 points per unit length");
    const double end = std::numbers::pi / L;
    const auto intervals = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(end * resolution)));
    std::vector<double> ts(intervals + 1), vs(intervals + 1);
    for (std::size_t j = 0; j <= intervals; ++j) {
        ts[j] = j == intervals ? end : end * static_cast<double>(j) / static_cast<double>(intervals);
        vs[j] = poly.modulus_on_circle(ts[j]);
    }
    ArcMax best{ts[0], vs[0]};
    for (std::size_t j = 0; j <= intervals; ++j) {
        if (vs[j] > best.value) best = {ts[j], vs[j]};
        bool left_ok = j == 0 || vs[j] >= vs[j - 1];
        bool right_ok = j == intervals || vs[j] >= vs[j + 1];
        if (!left_ok || !right_ok) continue;
        double lo = ts[j == 0 ? 0 : j - 1];
        double hi = ts[j == intervals ? intervals : j + 1];
        ArcMax refined = golden_section(poly, lo, hi);
        if (refined.value > best.value) best = refined;
    }
    return best;
}

} // namespace mixlearn
