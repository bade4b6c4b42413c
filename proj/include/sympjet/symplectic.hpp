#ifndef SYMPJET_SYMPLECTIC_HPP
#define SYMPJET_SYMPLECTIC_HPP

#include <cstdint>
#include <vector>

#include <sympjet/forms.hpp>

namespace sympjet
{

// sum_i dp_i ^ dq_i on the space (plus dx ^ dy on a constrained space).
// On a quasi space this is the rank-deficient form with kernel d/dy.
FormJet standard_form(const VariableSpace &space, unsigned order);

// A closed 2-form of full rank at the origin on an even-dimensional space.
class SymplecticFormJet
{
public:
    explicit SymplecticFormJet(FormJet form);
    const FormJet &form() const noexcept
    {
        return m_form;
    }

private:
    FormJet m_form;
};

// A closed 2-form of rank 2n at the origin on a (2n+1)-dimensional space.
class QuasiSymplecticFormJet
{
public:
    explicit QuasiSymplecticFormJet(FormJet form);
    const FormJet &form() const noexcept
    {
        return m_form;
    }

private:
    FormJet m_form;
};

using JetMatrix = std::vector<std::vector<Jet>>;

// Solves M x = rhs for a jet matrix whose value at the origin is invertible.
std::vector<Jet> jet_solve(const JetMatrix &m, const std::vector<Jet> &rhs);
JetMatrix jet_matrix_inverse(const JetMatrix &m);

// Z_f defined by Z_f _| omega = df.
VectorFieldJet hamiltonian_vf(const Jet &f, const FormJet &omega);
// {f, g} = dg(Z_f).
Jet poisson_bracket(const Jet &f, const Jet &g, const FormJet &omega);

struct CertificationReport
{
    bool ok = false;
    unsigned certified_order = 0;
    FormJet residual;
};

// Checks m^* omega = omega for a self-map of omega's space.
CertificationReport is_symplectomorphism(const MapJet &m, const FormJet &omega);
// Checks m^* from = to.
CertificationReport check_pullback(const MapJet &m, const FormJet &from, const FormJet &to);

// Phi with Phi^* omega = standard_form, certified to order(omega) + 1.
MapJet darboux_reduce(const SymplecticFormJet &omega);
// Phi with P o Phi = y and Phi^* omega = standard_form on a quasi space.
// P must be transversal to the kernel of omega at the origin.
MapJet quasi_darboux(const QuasiSymplecticFormJet &omega, const Jet &p);

// Psi with P o Psi = p1, Q o Psi in the ideal (q1) and Psi^* omega standard,
// for {P, Q}(0) != 0. Works for any symplectic form on a symplectic space.
MapJet straighten_pair(const FormJet &omega, const Jet &p, const Jet &q);

// Time-one flow of the Hamiltonian field of H for the standard form. The
// linear part of the field must be nilpotent. Certified to order(H) - 1.
MapJet hamiltonian_flow(const Jet &h, unsigned order);

// Deterministic pseudo-random symplectomorphism of the standard form: a
// rational linear symplectic map composed with flows of polynomial
// Hamiltonians of degree 3..max_degree.
MapJet random_symplectomorphism(std::uint64_t seed, unsigned max_degree, const VariableSpace &space, unsigned order);

} // namespace sympjet

#endif
