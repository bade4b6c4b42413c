#ifndef SYMPJET_RATIONAL_HPP
#define SYMPJET_RATIONAL_HPP

#include <string>

#include <gmpxx.h>

namespace sympjet
{

using Rational = mpq_class;
using Integer = mpz_class;

// Parses "a", "-a", "a/b" with decimal integers; result is canonicalized.
Rational parse_rational(const std::string &text);

// "a" when the denominator is 1, "a/b" otherwise.
std::string to_string(const Rational &q);

inline bool is_zero(const Rational &q)
{
    return sgn(q) == 0;
}

Rational factorial(unsigned k);

} // namespace sympjet

#endif
