#ifndef SYMPJET_JET_HPP
#define SYMPJET_JET_HPP

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include <sympjet/error.hpp>
#include <sympjet/monomial.hpp>
#include <sympjet/rational.hpp>
#include <sympjet/space.hpp>

namespace sympjet
{

// A truncated multivariate power series with exact rational coefficients:
// an element of Q[x_1..x_m] / m^(order+1). The order is the degree up to
// which the coefficients are known; every operation reports the order to
// which its result is exact (the certified-order ledger).
class Jet
{
public:
    Jet() = default;
    Jet(VariableSpace space, unsigned order);

    static Jet constant(VariableSpace space, unsigned order, const Rational &c);
    static Jet variable(VariableSpace space, unsigned order, std::size_t var);
    static Jet monomial(VariableSpace space, unsigned order, const std::vector<unsigned> &exps,
                        const Rational &c = 1);

    const VariableSpace &space() const noexcept
    {
        return m_space;
    }
    std::size_t nvars() const noexcept
    {
        return m_space.dim();
    }
    unsigned order() const noexcept
    {
        return m_order;
    }
    // Number of coefficient slots (monomials of degree <= order).
    std::size_t size() const noexcept
    {
        return m_coeffs.size();
    }
    const MonomialTable &table() const noexcept
    {
        return *m_table;
    }

    const Rational &coeff(std::size_t idx) const
    {
        return m_coeffs[idx];
    }
    Rational &coeff(std::size_t idx)
    {
        return m_coeffs[idx];
    }
    Rational coefficient(const std::vector<unsigned> &exps) const;
    void set_coefficient(const std::vector<unsigned> &exps, const Rational &c);

    const Rational &constant_term() const
    {
        return m_coeffs[0];
    }
    // Coefficient of x_var, i.e. the partial derivative at the origin.
    const Rational &linear_coeff(std::size_t var) const;

    bool is_zero() const;
    // Lowest degree carrying a nonzero coefficient; order()+1 for the zero jet.
    unsigned valuation() const;
    std::size_t nonzero_count() const;

    Jet truncated(unsigned order) const;
    Jet homogeneous_part(unsigned degree) const;

    Jet &operator+=(const Jet &other);
    Jet &operator-=(const Jet &other);
    Jet &operator*=(const Rational &c);
    Jet operator-() const;

    friend Jet operator+(Jet a, const Jet &b)
    {
        a += b;
        return a;
    }
    friend Jet operator-(Jet a, const Jet &b)
    {
        a -= b;
        return a;
    }
    friend Jet operator*(Jet a, const Rational &c)
    {
        a *= c;
        return a;
    }
    friend Jet operator*(const Rational &c, Jet a)
    {
        a *= c;
        return a;
    }
    friend Jet operator*(const Jet &a, const Jet &b);

    // Exact equality including order.
    friend bool operator==(const Jet &a, const Jet &b);

private:
    VariableSpace m_space;
    unsigned m_order = 0;
    std::shared_ptr<const MonomialTable> m_table;
    std::vector<Rational> m_coeffs;
};

// Equality of the two jets on all monomials of degree <= order.
bool equal_to_order(const Jet &a, const Jet &b, unsigned order);

std::string to_string(const Jet &f);

// Product in the quotient ring. The certified order follows the valuation
// rule min(order(a) + val(b), order(b) + val(a)), capped at the larger order.
Jet jet_multiply(const Jet &a, const Jet &b);
Jet jet_power(const Jet &a, unsigned k);
Jet partial_derivative(const Jet &f, std::size_t var);

// Substitute zero for the listed variables.
Jet substitute_zero(const Jet &f, const std::vector<std::size_t> &vars);

// Move a jet to another space: placement[i] is the target index of source
// variable i, or -1 to evaluate that variable at 0.
Jet remap_variables(const Jet &f, const VariableSpace &target, const std::vector<int> &placement);

bool depends_on(const Jet &f, std::size_t var);

// A germ of a map between coordinate spaces: components[i] is the i-th target
// coordinate expressed in the source variables.
class MapJet
{
public:
    MapJet() = default;
    MapJet(VariableSpace source, VariableSpace target, std::vector<Jet> components);
    MapJet(VariableSpace space, std::vector<Jet> components) : MapJet(space, space, std::move(components)) {}

    static MapJet identity(VariableSpace space, unsigned order);
    // x -> A x for a square rational matrix given row-major (row = target).
    static MapJet linear(VariableSpace source, VariableSpace target, const std::vector<std::vector<Rational>> &a,
                         unsigned order);

    const VariableSpace &source() const noexcept
    {
        return m_source;
    }
    const VariableSpace &target() const noexcept
    {
        return m_target;
    }
    std::size_t size() const noexcept
    {
        return m_components.size();
    }
    const Jet &operator[](std::size_t i) const
    {
        return m_components[i];
    }
    const std::vector<Jet> &components() const noexcept
    {
        return m_components;
    }
    unsigned order() const;

    std::vector<std::vector<Rational>> linear_part() const;
    bool is_origin_preserving() const;
    MapJet truncated(unsigned order) const;

private:
    VariableSpace m_source;
    VariableSpace m_target;
    std::vector<Jet> m_components;
};

bool equal_to_order(const MapJet &a, const MapJet &b, unsigned order);

// f o m.
Jet jet_compose(const Jet &f, const MapJet &m);
// outer o inner.
MapJet compose_maps(const MapJet &outer, const MapJet &inner);
MapJet map_invert(const MapJet &m);

// Solves f(x_1, .., Y, .., x_m) = rhs for Y (Y substituted for x_var).
Jet implicit_solve(const Jet &f, const Jet &rhs, std::size_t var);

// Monomial ideal generated by a set of coordinate functions.
class IdealSpec
{
public:
    IdealSpec(VariableSpace space, std::vector<std::size_t> generators);

    // I_i: the first i Darboux coordinates of the pair block in the order
    // q1, p1, q2, p2, ...; 1 <= i <= 2n-1.
    static IdealSpec omega(const VariableSpace &space, unsigned i);

    const VariableSpace &space() const noexcept
    {
        return m_space;
    }
    const std::vector<std::size_t> &generators() const noexcept
    {
        return m_generators;
    }

private:
    VariableSpace m_space;
    std::vector<std::size_t> m_generators;
};

bool ideal_membership(const Jet &f, const IdealSpec &ideal);

// c_0..c_N with f = sum_k c_k var^k; c_k is independent of var, has order N-k.
std::vector<Jet> coefficient_expansion(const Jet &f, std::size_t var);

} // namespace sympjet

#endif
