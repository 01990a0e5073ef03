#include "mixlearn/tv.hpp"

#include "mixlearn/distributions.hpp"
#include "mixlearn/error.hpp"
#include "mixlearn/gtransform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace mixlearn {

namespace {

using cd = std::complex<double>;

constexpr double kInf = std::numeric_limits<double>::infinity();

// log E[s^X] for s = a^2; +inf when the generating function diverges.
double log_pgf(Family family, const SharedParams& shared, double param, double s) {
    switch (family) {
    case Family::Poisson:
        return param * (s - 1.0);
    case Family::BinomialP:
        return static_cast<double>(*shared.trials) * std::log1p(param * (s - 1.0));
    case Family::GeometricP:
    case Family::GeometricU: {
        double p = family == Family::GeometricU ? 1.0 / param : param;
        if (p == 0.0) return -kInf; // no mass on the integers
        if ((1.0 - p) * s >= 1.0) return kInf;
        return std::log(p) - std::log1p(-(1.0 - p) * s);
    }
    case Family::NegBinomial: {
        double p = to_double(*shared.nb_p);
        if (p * s >= 1.0) return kInf;
        return param * (std::log1p(-p) - std::log1p(-p * s));
    }
    default:
        throw ContractError("tail certificates need a discrete family, got " + std::string(family_name(family)));
    }
}

// Base a > 1 at which every component of `spec` has a finite certificate.
double certificate_base(const MixtureSpec& spec) {
    switch (spec.family()) {
    case Family::NegBinomial: {
        double p = to_double(*spec.shared().nb_p);
        return std::sqrt((1.0 + 1.0 / p) / 2.0);
    }
    case Family::GeometricP:
    case Family::GeometricU: {
        double q_max = 0.0; // largest failure probability 1 - p among components with mass
        for (std::size_t i = 0; i < spec.k(); ++i) {
            double p = spec.family() == Family::GeometricU ? 1.0 / spec.parameter_d(i) : spec.parameter_d(i);
            if (p > 0.0) q_max = std::max(q_max, 1.0 - p);
        }
        if (q_max == 0.0) return 2.0;
        return std::sqrt((1.0 + 1.0 / q_max) / 2.0);
    }
    default:
        return 2.0;
    }
}

// Certified mass of `spec` at or above r.
double tail_mass(const MixtureSpec& spec, double a, std::int64_t r) {
    // sum_{x>=r} f(x) <= a^-r sum_{x>=r} a^x f(x) <= E[a^2X] / a^(2r-1)
    return tail_certificate(spec, a, static_cast<double>(r)) / std::pow(a, static_cast<double>(r));
}

void require_tol(double tol) {
    if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
}

} // namespace

double tail_certificate(Family family, const SharedParams& shared, double param, double a, double r) {
    if (!(a > 1.0)) throw DomainError("tail certificate needs a > 1");
    double lg = log_pgf(family, shared, param, a * a);
    if (lg == kInf)
        throw CertificateUnavailableError("E[a^(2X)] diverges for " + std::string(family_name(family)) +
                                          " at a = " + std::to_string(a));
    return std::exp(lg - (r - 1.0) * std::log(a));
}

double tail_certificate(const MixtureSpec& spec, double a, double r) {
    double total = 0.0;
    for (std::size_t i = 0; i < spec.k(); ++i)
        total += spec.weight_d(i) * tail_certificate(spec.family(), spec.shared(), spec.parameter_d(i), a, r);
    return total;
}

std::int64_t truncation_point(const MixtureSpec& spec, double mass_tol, double* tail_out) {
    require_tol(mass_tol);
    if (!is_discrete(spec.family())) throw ContractError("truncation needs a discrete family");
    if (spec.family() == Family::BinomialP) {
        if (tail_out) *tail_out = 0.0;
        return *spec.shared().trials;
    }
    const double a = certificate_base(spec);
    for (std::int64_t r = 1;; ++r) {
        double mass = tail_mass(spec, a, r);
        if (mass <= mass_tol) {
            if (tail_out) *tail_out = mass;
            return r - 1;
        }
        if (r > 100000000) throw CertificateUnavailableError("tail certificate does not reach the tolerance");
    }
}

cd characteristic_function(const MixtureSpec& spec, double t) {
    const cd i(0.0, 1.0);
    const cd z = std::exp(i * t);
    cd total = 0.0;
    for (std::size_t c = 0; c < spec.k(); ++c) {
        const double theta = spec.parameter_d(c);
        cd value;
        switch (spec.family()) {
        case Family::Gaussian: {
            double sigma = *spec.shared().sigma;
            value = std::exp(i * t * theta - sigma * sigma * t * t / 2.0);
            break;
        }
        case Family::Poisson:
            value = std::exp(theta * (z - 1.0));
            break;
        case Family::BinomialP:
            value = std::pow(1.0 - theta + theta * z, static_cast<double>(*spec.shared().trials));
            break;
        case Family::GeometricP:
        case Family::GeometricU: {
            double p = spec.family() == Family::GeometricU ? 1.0 / theta : theta;
            value = p == 0.0 ? cd(0.0) : p / (1.0 - (1.0 - p) * z);
            break;
        }
        case Family::NegBinomial: {
            double p = to_double(*spec.shared().nb_p);
            value = std::pow((1.0 - p) / (1.0 - p * z), theta);
            break;
        }
        case Family::ChiSquared:
            value = std::pow(1.0 - 2.0 * i * t, -theta / 2.0);
            break;
        }
        total += spec.weight_d(c) * value;
    }
    return total;
}

SignRegions density_sign_regions(const MixtureSpec& a, const MixtureSpec& b, double tol) {
    require_compatible(a, b);
    require_tol(tol);
    if (is_discrete(a.family())) throw ContractError("sign regions need a continuous family");

    std::vector<double> xs;
    SignRegions out;
    if (a.family() == Family::Gaussian) {
        const double sigma = *a.shared().sigma;
        double lo = kInf, hi = -kInf;
        for (const MixtureSpec* m : {&a, &b})
            for (std::size_t i = 0; i < m->k(); ++i) {
                lo = std::min(lo, m->parameter_d(i));
                hi = std::max(hi, m->parameter_d(i));
            }
        lo -= 12.0 * sigma;
        hi += 12.0 * sigma;
        const double step = sigma / 100.0;
        const auto count = static_cast<std::size_t>(std::ceil((hi - lo) / step));
        for (std::size_t j = 0; j <= count; ++j) xs.push_back(lo + static_cast<double>(j) * step);
        out.support_lo = -kInf;
    } else {
        double top = 0.0;
        for (const MixtureSpec* m : {&a, &b})
            for (std::size_t i = 0; i < m->k(); ++i) top = std::max(top, m->parameter_d(i));
        top += 20.0 * std::sqrt(2.0 * top) + 40.0;
        for (double x = 1e-12; x < 0.01; x *= 2.0) xs.push_back(x);
        const double step = 0.01;
        const auto count = static_cast<std::size_t>(std::ceil(top / step));
        for (std::size_t j = 1; j <= count; ++j) xs.push_back(static_cast<double>(j) * step);
        out.support_lo = 0.0;
    }

    auto diff = [&](double x) { return pdf(a, x) - pdf(b, x); };
    auto sign_of = [](double d) { return d > 0.0 ? 1 : (d < 0.0 ? -1 : 0); };

    int current = 0;
    double last_x = xs.front();
    for (double x : xs) {
        int s = sign_of(diff(x));
        if (s == 0) continue;
        if (current == 0) {
            current = s;
        } else if (s != current) {
            double l = last_x, r = x;
            while (r - l > tol) {
                double mid = 0.5 * (l + r);
                if (sign_of(diff(mid)) == current) l = mid;
                else r = mid;
            }
            out.cuts.push_back(0.5 * (l + r));
            out.signs.push_back(current);
            current = s;
        }
        last_x = x;
    }
    out.signs.push_back(current);
    return out;
}

TvInterval tv_exact(const MixtureSpec& a, const MixtureSpec& b, double tol) {
    require_compatible(a, b);
    require_tol(tol);
    TvInterval out;
    if (is_discrete(a.family())) {
        double tail_a = 0.0, tail_b = 0.0;
        std::int64_t xa = truncation_point(a, tol / 2.0, &tail_a);
        std::int64_t xb = truncation_point(b, tol / 2.0, &tail_b);
        out.x_max = std::max(xa, xb);
        // masses above x_max are no larger than at the individual cut points
        double sum = 0.0;
        for (std::int64_t x = 0; x <= out.x_max; ++x) sum += std::abs(pmf(a, x) - pmf(b, x));
        const double s = 0.5 * sum;
        const double rounding = 1e-16 * static_cast<double>(out.x_max + 1);
        out.tail_bound = 0.5 * (tail_a + tail_b);
        out.lo = std::max(0.0, s - rounding);
        out.hi = std::min(1.0, s + out.tail_bound + rounding);
        return out;
    }

    // Continuous: TV = P_a(A) - P_b(A) for A = {a > b}.
    constexpr double kBudget = 1e-12;
    if (tol < 2.0 * kBudget) throw DomainError("tolerance below the achievable 2e-12");
    const double scale = a.family() == Family::Gaussian ? *a.shared().sigma : 1.0;
    SignRegions regions = density_sign_regions(a, b, 1e-13 * scale);
    double s = 0.0;
    for (std::size_t i = 0; i < regions.signs.size(); ++i) {
        if (regions.signs[i] <= 0) continue;
        double lo = i == 0 ? regions.support_lo : regions.cuts[i - 1];
        double hi = i == regions.cuts.size() ? kInf : regions.cuts[i];
        s += interval_probability(a, lo, hi) - interval_probability(b, lo, hi);
    }
    out.tail_bound = kBudget;
    out.lo = std::max(0.0, s - kBudget);
    out.hi = std::min(1.0, s + kBudget);
    return out;
}

TvCertificate tv_lower_bound_charfn(const MixtureSpec& a, const MixtureSpec& b, double L, int grid_points) {
    require_compatible(a, b);
    if (grid_points < 3) throw DomainError("charfn bound needs at least 3 grid points");
    if (!(L > 0.0)) throw DomainError("L must be positive");
    TvCertificate cert;
    cert.method = "charfn";
    cert.L = L;
    const double half = std::numbers::pi / L;
    for (int j = 0; j < grid_points; ++j) {
        double t = -half + 2.0 * half * j / (grid_points - 1);
        double v = 0.5 * std::abs(characteristic_function(a, t) - characteristic_function(b, t));
        if (v > cert.value) {
            cert.value = v;
            cert.witness_t = t;
        }
    }
    return cert;
}

TvCertificate tv_lower_bound_gtransform(const MixtureSpec& a, const MixtureSpec& b, double L, int grid_points) {
    require_compatible(a, b);
    if (grid_points < 3) throw DomainError("g-transform bound needs at least 3 grid points");
    if (!(L > 0.0)) throw DomainError("L must be positive");
    const Family family = a.family();
    if (family != Family::Gaussian && family != Family::Poisson && family != Family::NegBinomial)
        throw CertificateUnavailableError("no g-transform certificate for " + std::string(family_name(family)));

    TvCertificate cert;
    cert.method = "g-transform";
    cert.L = L;
    const double half = std::numbers::pi / L;
    for (int j = 0; j < grid_points; ++j) {
        const double t = -half + 2.0 * half * j / (grid_points - 1);
        GTransform g(family, a.shared(), t);
        cd ea = 0.0, eb = 0.0;
        for (std::size_t i = 0; i < a.k(); ++i) ea += a.weight_d(i) * g.expectation(a.parameter_d(i));
        for (std::size_t i = 0; i < b.k(); ++i) eb += b.weight_d(i) * g.expectation(b.parameter_d(i));
        const double gap = std::abs(ea - eb);
        if (gap == 0.0) continue;
        if (family == Family::Gaussian) {
            // |G_t| = 1 everywhere; no tail term
            if (gap / 2.0 > cert.value) {
                cert.value = gap / 2.0;
                cert.witness_t = t;
                cert.tail_term = 0.0;
            }
            continue;
        }
        const double rho = g.growth_base();
        if (!(rho > 1.0)) continue;
        if (family == Family::NegBinomial && to_double(*a.shared().nb_p) * rho * rho >= 1.0) continue;
        // |sum (a-b) G| <= 2 TV rho^(r-1) + Omega'(r)
        for (std::int64_t r = 1; r < 4096; ++r) {
            double rd = static_cast<double>(r);
            double omega = tail_certificate(a, rho, rd) + tail_certificate(b, rho, rd);
            double v = (gap - omega) / (2.0 * std::pow(rho, rd - 1.0));
            if (v > cert.value) {
                cert.value = v;
                cert.witness_t = t;
                cert.tail_term = omega;
            }
            if (std::pow(rho, rd - 1.0) * 2.0 * cert.value > gap) break;
        }
    }
    return cert;
}

std::string format_certificate(const TvCertificate& cert) {
    std::ostringstream os;
    os.precision(17);
    os << "method=" << cert.method << '\n'
       << "L=" << cert.L << '\n'
       << "witness_t=" << cert.witness_t << '\n'
       << "value=" << cert.value << '\n'
       << "tail_term=" << cert.tail_term << '\n';
    return os.str();
}

std::string format_interval(const TvInterval& tv) {
    std::ostringstream os;
    os.precision(17);
    os << "tv_lo=" << tv.lo << '\n' << "tv_hi=" << tv.hi << '\n';
    if (tv.x_max >= 0) os << "x_max=" << tv.x_max << '\n';
    os << "tail_bound=" << tv.tail_bound << '\n';
    return os.str();
}

} // namespace mixlearn
