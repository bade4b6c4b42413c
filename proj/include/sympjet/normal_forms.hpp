#ifndef SYMPJET_NORMAL_FORMS_HPP
#define SYMPJET_NORMAL_FORMS_HPP

#include <string>
#include <vector>

#include <sympjet/symplectic.hpp>

namespace sympjet
{

// ---------------------------------------------------------------------------
// Diffeomorphisms under symplectic changes of the source.

struct PairStraightening
{
    MapJet normalizer;
    Jet p; // equals p1
    Jet q; // lies in the ideal (q1)
};

// Brings a pair with {P, Q}(0) != 0 to P = p1, Q in (q1) by a symplectomorphism
// of the standard form.
PairStraightening straighten_pair(const Jet &p, const Jet &q);

// True iff psi fixes p1 and q1, its other components do not involve p1, q1,
// and the remaining block is a symplectomorphism of the reduced standard form.
bool isotropy_shape_check(const MapJet &psi);

struct Relabeling
{
    std::vector<std::size_t> target_pairs; // pair i of the result is pair target_pairs[i] of the input
    // Component k of the result is input component target_components[k]; a
    // free permutation when no pair relabeling exists.
    std::vector<std::size_t> target_components;
    std::vector<std::size_t> source_pairs; // source pair i is fed into input pair source_pairs[i]
    std::vector<bool> twisted;             // (p, q) -> (-q, p) on that source pair
    MapJet source_map;                     // linear symplectic map applied in the source
    bool is_identity() const;
};

struct RenumerateResult
{
    MapJet map;
    Relabeling relabeling;
};

// Reorders target pairs and applies a symplectic permutation in the source so
// that dP_i/dp_i(0) and dQ_i/dq_i(0) are all nonzero. The identity relabeling
// is preferred whenever it works; if no pair relabeling exists the target
// components are permuted individually.
RenumerateResult renumerate(const MapJet &phi);

struct DiffeoNormalForm
{
    MapJet normalizer;      // symplectomorphism of the standard form
    MapJet normalized;      // (p1, Q1, p2 + P2, Q2, ...)
    std::vector<Jet> q_tilde; // Q_i, i = 1..n (index i - 1)
    std::vector<Jet> p_tilde; // P_i, i = 1..n; P_1 is zero
    // Coefficients of Q_i and P_i on the ideal generators (q1, p1, q2, ...),
    // each monomial assigned to the first generator dividing it.
    std::vector<std::vector<Jet>> q_split;
    std::vector<std::vector<Jet>> p_split;
    Relabeling relabeling;
    CertificationReport certification;
    bool isotropy_steps_ok = true;
    unsigned certified_order = 0;
};

DiffeoNormalForm normalize_diffeo(const MapJet &phi);
// Same pipeline without renumeration; the input must already satisfy the
// hypotheses of each step.
DiffeoNormalForm normalize_diffeo_core(const MapJet &phi);

// Split of f over the generators of a monomial ideal (first dividing
// generator wins). Throws CertificationFailure when f is not in the ideal.
std::vector<Jet> ideal_split(const Jet &f, const IdealSpec &ideal);

struct SymplecticParam
{
    std::vector<Jet> q_bar; // index i - 1
    std::vector<Jet> p_bar; // index i - 1; p_bar[0] is zero
    FormJet reconstruction;
    CertificationReport certification; // reconstruction - omega
};

// Writes omega = dp1 ^ dQ1 + sum_{i>=2} d(p_i + P_i) ^ dQ_i.
SymplecticParam parametrize_symplectic_form(const SymplecticFormJet &omega);
FormJet parametrized_form(const std::vector<Jet> &q_bar, const std::vector<Jet> &p_bar);

// ---------------------------------------------------------------------------
// Pairs (f, H = {h = 0}) on a constrained space with the form dx^dy + dp^dq.

struct GlancingReport
{
    Rational fh;        // {f, h}(0)
    Rational f_fh;      // {f, {f, h}}(0)
    Rational h_fh;      // {h, {f, h}}(0)
    bool wedge_nonzero = false; // df ^ dh (0) != 0
    bool in_s1 = false;
};

GlancingReport check_glancing(const Jet &f, const Jet &h);

struct WeierstrassResult
{
    Jet unit; // u, u(0) != 0
    Jet a;    // free of the division variable
    Jet b;    // free of the division variable
};

// h = u (x^2 + a x + b) with x the given variable; needs h(0) = 0,
// d_x h(0) = 0 and d_x^2 h(0) != 0.
WeierstrassResult weierstrass_quadratic(const Jet &h, std::size_t var);

struct PairNormalForm
{
    MapJet normalizer;
    Jet r;                    // r(y)
    Jet phi;                  // remainder coefficient of y^{2n}
    std::vector<Jet> q_tilde; // Q_i
    std::vector<Jet> p_tilde; // P_i, P_1 = 0
    Jet g;                    // normalized g(y, p, q)
    Jet normalized_f;         // y
    Jet normalized_h;         // x^2 + g on constrained spaces, g on quasi spaces
    DiffeoNormalForm inner;       // diffeo normal form data of (P_1, Q_1, ..., Q_n); empty for n = 0
    CertificationReport certification;
    unsigned certified_order = 0; // order to which the invariants are determined
    std::vector<std::string> notes;
};

// Pair (f, g) on a quasi space, normalized by maps preserving sum dp^dq:
// f = y and g = r(y) + p1 + sum Q_i y^{2i-1} + sum (p_i + P_i) y^{2i-2} + phi y^{2n}.
PairNormalForm normalize_quasi_pair(const Jet &f, const Jet &g);
PairNormalForm normalize_glancing_pair(const Jet &f, const Jet &h);

struct FlattenedTripleForm
{
    Jet f_hat;  // r_hat(y) + sum (p_i y^{2i-2} + q_i y^{2i-1}) + psi y^{2n}
    Jet r_hat;
    Jet psi;
    FormJet omega_tilde;
    MapJet coordinates; // (p, q) -> (P, Q) flattening the diffeo normal form data
    unsigned certified_order = 0;
};

FlattenedTripleForm derive_flattened_triple_form(const PairNormalForm &nf);

} // namespace sympjet

#endif
