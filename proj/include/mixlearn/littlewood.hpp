#pragma once

#include <complex>
#include <vector>

namespace mixlearn {

// A(z) = sum_k a_k z^k with every a_k in {-1, 0, 1}, not all zero.
class LittlewoodPoly {
public:
    explicit LittlewoodPoly(std::vector<int> coefficients);

    const std::vector<int>& coefficients() const noexcept { return coefficients_; }

    std::complex<double> evaluate(std::complex<double> z) const;
    // |A(exp(it))|
    double modulus_on_circle(double t) const;

private:
    std::vector<int> coefficients_;
};

struct ArcMax {
    double t = 0.0;
    double value = 0.0; // |A(exp(i t))|, a lower bound on the arc maximum
};

// Maximum of |A(exp(it))| over |t| <= pi/L. Real coefficients make the
// modulus even in t, so only [0, pi/L] is scanned: a uniform grid with
// `resolution` points per unit length (at least 64) plus the endpoints,
// followed by golden-section refinement inside the bracket of every grid
// local maximum.
ArcMax littlewood_arc_max(const LittlewoodPoly& poly, double L, int resolution = 64);

} // namespace mixlearn
