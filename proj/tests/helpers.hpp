#ifndef SYMPJET_TEST_HELPERS_HPP
#define SYMPJET_TEST_HELPERS_HPP

#include <sympjet/jet.hpp>

namespace testing_util
{

using namespace sympjet;

// Named coordinate of a space as a jet.
inline Jet v(const VariableSpace &s, unsigned order, const char *name)
{
    return Jet::variable(s, order, s.index_of(name));
}

inline Jet c(const VariableSpace &s, unsigned order, const Rational &value)
{
    return Jet::constant(s, order, value);
}

// Canonical a/b; mpq_class(a, b) alone leaves the fraction unreduced.
inline Rational frac(long a, long b)
{
    Rational r(a, b);
    r.canonicalize();
    return r;
}

} // namespace testing_util

#endif
