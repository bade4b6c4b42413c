#ifndef SYMPJET_FORMS_HPP
#define SYMPJET_FORMS_HPP

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include <sympjet/jet.hpp>

namespace sympjet
{

using IndexTuple = std::vector<std::size_t>;

// A differential k-form with jet coefficients, stored on strictly increasing
// index tuples. order() is the certified order of every coefficient.
class FormJet
{
public:
    FormJet() = default;
    FormJet(VariableSpace space, unsigned degree, unsigned order);

    // df, certified to order(f) - 1.
    static FormJet differential(const Jet &f);
    // sum_i coeffs[i] dx_i
    static FormJet one_form(const std::vector<Jet> &coeffs);
    // Scalar function as a 0-form.
    static FormJet zero_form(const Jet &f);

    const VariableSpace &space() const noexcept
    {
        return m_space;
    }
    unsigned degree() const noexcept
    {
        return m_degree;
    }
    unsigned order() const noexcept
    {
        return m_order;
    }
    const std::map<IndexTuple, Jet> &terms() const noexcept
    {
        return m_terms;
    }

    // Coefficient on an increasing tuple (the zero jet when absent).
    Jet coefficient(const IndexTuple &idx) const;
    // Adds c dx_{i1} ^ ... ^ dx_{ik} for an arbitrary tuple, normalizing the
    // order with the permutation sign; repeated indices contribute nothing.
    void add_term(IndexTuple idx, const Jet &c);

    bool is_zero() const;
    FormJet truncated(unsigned order) const;

    FormJet &operator+=(const FormJet &other);
    FormJet &operator-=(const FormJet &other);
    friend FormJet operator+(FormJet a, const FormJet &b)
    {
        a += b;
        return a;
    }
    friend FormJet operator-(FormJet a, const FormJet &b)
    {
        a -= b;
        return a;
    }
    friend FormJet operator*(const Jet &f, const FormJet &a);
    friend FormJet operator*(const Rational &c, const FormJet &a);

private:
    void lower_order(unsigned order);

    VariableSpace m_space;
    unsigned m_degree = 0;
    unsigned m_order = 0;
    std::map<IndexTuple, Jet> m_terms;
};

bool equal_to_order(const FormJet &a, const FormJet &b, unsigned order);
std::string to_string(const FormJet &a);

class VectorFieldJet
{
public:
    VectorFieldJet() = default;
    explicit VectorFieldJet(std::vector<Jet> components);
    static VectorFieldJet coordinate(VariableSpace space, unsigned order, std::size_t axis, const Rational &scale = 1);

    const VariableSpace &space() const noexcept
    {
        return m_space;
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

    VectorFieldJet operator-() const;

private:
    VariableSpace m_space;
    std::vector<Jet> m_components;
};

// Directional derivative V(f) = sum_i V_i d_i f.
Jet apply(const VectorFieldJet &v, const Jet &f);

FormJet exterior_derivative(const FormJet &a);
FormJet wedge(const FormJet &a, const FormJet &b);
// Interior product; the vector fills the first slot.
FormJet contract(const VectorFieldJet &v, const FormJet &a);
// m^* a for a form a on m.target().
FormJet pullback(const MapJet &m, const FormJet &a);

// Moves a form to another space as remap_variables does for its
// coefficients; a differential whose variable is dropped becomes zero.
FormJet remap_form(const FormJet &a, const VariableSpace &target, const std::vector<int> &placement);

// Value of a k-form at the origin on k constant vectors: a(v1, ..., vk).
Rational evaluate_at_origin(const FormJet &a, const std::vector<std::vector<Rational>> &vectors);

// Antisymmetric coefficient matrix of a 2-form: a = sum_{i<j} M_ij dx_i ^ dx_j.
std::vector<std::vector<Jet>> two_form_matrix(const FormJet &a);

// Flow box: returns Phi with Phi_*(d/dx_axis) = v, built as the Lie series of
// the flow of v started on the section {x_axis = 0}; Phi is the identity on
// that section. The map is certified to order(v) + 1.
MapJet rectify(const VectorFieldJet &v, std::size_t axis);
// Same, with the axis chosen as the first index where v(0) is nonzero.
MapJet rectify(const VectorFieldJet &v);

// d_axis Phi - v o Phi, which vanishes when Phi rectifies v.
VectorFieldJet pushforward_residual(const MapJet &phi, const VectorFieldJet &v, std::size_t axis);

} // namespace sympjet

#endif
