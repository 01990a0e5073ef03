#include "mixlearn/rational.hpp"

#include "mixlearn/error.hpp"

#include <cctype>

namespace mixlearn {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

BigInt parse_integer(std::string_view s) {
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) throw ParseError("not an integer: '" + std::string(s) + "'");
    BigInt v(std::string(s), 10);
    return negative ? BigInt(-v) : v;
}

} // namespace

Rational parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw ParseError("empty number");

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        BigInt num = parse_integer(text.substr(0, slash));
        auto den_text = text.substr(slash + 1);
        if (!all_digits(den_text)) throw ParseError("bad denominator in '" + std::string(text) + "'");
        BigInt den(std::string(den_text), 10);
        if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
        Rational r(num, den);
        r.canonicalize();
        return r;
    }

    std::string_view mantissa = text;
    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        mantissa = text.substr(0, e);
        BigInt ex = parse_integer(text.substr(e + 1));
        if (!ex.fits_slong_p() || abs(ex) > 4000) throw ParseError("exponent out of range in '" + std::string(text) + "'");
        exponent = ex.get_si();
    }

    bool negative = false;
    if (!mantissa.empty() && (mantissa.front() == '-' || mantissa.front() == '+')) {
        negative = mantissa.front() == '-';
        mantissa.remove_prefix(1);
    }
    std::string digits;
    long frac_digits = 0;
    if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
        auto ip = mantissa.substr(0, dot);
        auto fp = mantissa.substr(dot + 1);
        if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)))
            throw ParseError("not a number: '" + std::string(text) + "'");
        digits = std::string(ip) + std::string(fp);
        frac_digits = static_cast<long>(fp.size());
    } else {
        if (!all_digits(mantissa)) throw ParseError("not a number: '" + std::string(text) + "'");
        digits = std::string(mantissa);
    }

    Rational r{BigInt(digits, 10)};
    long shift = exponent - frac_digits;
    BigInt ten_pow = pow(BigInt(10), static_cast<unsigned>(shift < 0 ? -shift : shift));
    if (shift < 0)
        r /= ten_pow;
    else
        r *= ten_pow;
    r.canonicalize();
    return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& value) {
    if (value.get_den() == 1) return value.get_num().get_str();
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string to_string(const BigInt& value) { return value.get_str(); }

double to_double(const Rational& value) { return value.get_d(); }

bool is_integer(const Rational& value) { return value.get_den() == 1; }

BigInt floor(const Rational& value) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
    return q;
}

BigInt ceil(const Rational& value) {
    BigInt q;
    mpz_cdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
    return q;
}

BigInt round_half_even(const Rational& value) {
    BigInt lower = floor(value);
    Rational frac = value - Rational(lower);
    int c = cmp(frac, Rational(1, 2));
    if (c < 0) return lower;
    if (c > 0) return lower + 1;
    return (mpz_even_p(lower.get_mpz_t()) != 0) ? lower : BigInt(lower + 1);
}

Rational pow(const Rational& base, unsigned exponent) {
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
    r.canonicalize();
    return r;
}

BigInt pow(const BigInt& base, unsigned exponent) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
    return r;
}

BigInt falling_factorial(std::int64_t n, unsigned j) {
    BigInt r = 1;
    for (unsigned i = 0; i < j; ++i) r *= BigInt(static_cast<long>(n - static_cast<std::int64_t>(i)));
    return r;
}

BigInt binomial(unsigned n, unsigned k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

BigInt factorial(unsigned n) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

std::int64_t to_int64(const BigInt& value) {
    if (!value.fits_slong_p()) throw DomainError("integer out of 64-bit range: " + value.get_str());
    return static_cast<std::int64_t>(value.get_si());
}

} // namespace mixlearn
