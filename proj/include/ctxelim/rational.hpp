#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace ctxelim {

// Exact fraction. gmpxx keeps results of arithmetic canonical (reduced,
// positive denominator); values built from raw parts must go through
// make_rational.
using Rational = mpq_class;
using Integer = mpz_class;
using RatVector = std::vector<Rational>;

Rational make_rational(const Integer& num, const Integer& den);

// Parses "12", "-3/4" and "0.25" exactly.
// Throws std::invalid_argument on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

// "3", "-3/4". Always the reduced form.
std::string to_string(const Rational& r);

int sign(const Rational& r);

Integer lcm(const Integer& a, const Integer& b);
Integer gcd(const Integer& a, const Integer& b);

}  // namespace ctxelim
