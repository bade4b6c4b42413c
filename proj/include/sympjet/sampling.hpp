#ifndef SYMPJET_SAMPLING_HPP
#define SYMPJET_SAMPLING_HPP

#include <cstdint>
#include <random>

#include <sympjet/forms.hpp>

namespace sympjet
{

// Small random rationals a/b with |a| <= 3, 1 <= b <= 3; zero with the
// given probability weight (out of `density`).
class RationalSampler
{
public:
    explicit RationalSampler(std::uint64_t seed) : m_rng(seed) {}
    Rational next();
    Rational nonzero();
    bool coin(unsigned one_in);
    std::uint64_t raw()
    {
        return m_rng();
    }

private:
    std::mt19937_64 m_rng;
};

// Jet with random coefficients on monomials of degree min_degree..order,
// each present with probability 1/sparsity.
Jet random_jet(RationalSampler &rs, const VariableSpace &space, unsigned order, unsigned min_degree,
               unsigned sparsity = 2);

// Standard form plus d(lambda) with lambda vanishing to second order: closed,
// equal to the standard form at the origin.
FormJet random_closed_form(RationalSampler &rs, const VariableSpace &space, unsigned order);

// (p1, Q1, p2 + P2, Q2, ...) with random Q_i in I_{2i-1}, P_i in I_{2i-2}
// and dQ_i/dq_i(0) != 0.
MapJet random_normal_shaped(RationalSampler &rs, unsigned n, unsigned order);

// Random jet with nonzero constant term.
Jet random_unit(RationalSampler &rs, const VariableSpace &space, unsigned order);

} // namespace sympjet

#endif
