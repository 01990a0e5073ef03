#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace mixlearn {

using BigInt = mpz_class;
using Rational = mpq_class;

// Parses "a/b", a plain integer, or a finite decimal such as "-0.125" into an
// exact rational. Throws ParseError on anything else.
Rational parse_rational(std::string_view text);

// Canonical "num/den" text; integers print without a denominator.
std::string to_string(const Rational& value);
std::string to_string(const BigInt& value);

double to_double(const Rational& value);

bool is_integer(const Rational& value);

// Nearest integer, halves rounded to the even neighbour.
BigInt round_half_even(const Rational& value);

BigInt floor(const Rational& value);
BigInt ceil(const Rational& value);

Rational pow(const Rational& base, unsigned exponent);
BigInt pow(const BigInt& base, unsigned exponent);

// Falling factorial n (n-1) ... (n-j+1).
BigInt falling_factorial(std::int64_t n, unsigned j);
BigInt binomial(unsigned n, unsigned k);
BigInt factorial(unsigned n);

std::int64_t to_int64(const BigInt& value);

} // namespace mixlearn
