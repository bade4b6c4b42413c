#include <doctest.h>

#include "helpers.hpp"

#include <sympjet/linalg.hpp>
#include <sympjet/normal_forms.hpp>
#include <sympjet/sampling.hpp>

// Every operation states the order to which its result is determined by the
// input jets. Re-running it on the same polynomials kept to a higher order
// must not change the result below that order.

using namespace sympjet;

namespace
{

const unsigned high = 7;

Jet pad(const Jet &f)
{
    Jet r(f.space(), high);
    for (std::size_t i = 0; i < f.size(); ++i) {
        r.coeff(i) = f.coeff(i);
    }
    return r;
}

MapJet pad(const MapJet &m)
{
    std::vector<Jet> comps;
    for (const auto &c : m.components()) {
        comps.push_back(pad(c));
    }
    return MapJet(m.source(), m.target(), std::move(comps));
}

FormJet pad(const FormJet &a)
{
    FormJet r(a.space(), a.degree(), high);
    for (const auto &[idx, c] : a.terms()) {
        r.add_term(idx, pad(c));
    }
    return r;
}

VectorFieldJet pad(const VectorFieldJet &v)
{
    std::vector<Jet> comps;
    for (const auto &c : v.components()) {
        comps.push_back(pad(c));
    }
    return VectorFieldJet(comps);
}

bool honest(const Jet &low, const Jet &full)
{
    return equal_to_order(low, full, low.order());
}

bool honest(const MapJet &low, const MapJet &full)
{
    return equal_to_order(low, full, low.order());
}

bool honest(const FormJet &low, const FormJet &full)
{
    return equal_to_order(low, full, low.order());
}

bool honest(const VectorFieldJet &low, const VectorFieldJet &full)
{
    for (std::size_t i = 0; i < low.size(); ++i) {
        if (!equal_to_order(low[i], full[i], low.order())) {
            return false;
        }
    }
    return true;
}

Jet random_function(RationalSampler &rs, const VariableSpace &s, unsigned min_degree)
{
    const unsigned order = 2 + static_cast<unsigned>(rs.raw() % 3);
    return random_jet(rs, s, order, min_degree, 2);
}

MapJet random_map(RationalSampler &rs, const VariableSpace &s, unsigned order)
{
    for (;;) {
        std::vector<Jet> comps;
        for (std::size_t i = 0; i < s.dim(); ++i) {
            comps.push_back(random_jet(rs, s, order, 1, 2));
        }
        MapJet m(s, std::move(comps));
        if (!is_zero(determinant(m.linear_part()))) {
            return m;
        }
    }
}

VectorFieldJet random_field(RationalSampler &rs, const VariableSpace &s, unsigned order, unsigned min_degree)
{
    std::vector<Jet> comps;
    for (std::size_t i = 0; i < s.dim(); ++i) {
        comps.push_back(random_jet(rs, s, order, min_degree, 2));
    }
    return VectorFieldJet(comps);
}

} // namespace

TEST_CASE("ring operations keep honest orders")
{
    RationalSampler rs(41);
    const auto s = VariableSpace::symplectic(1);
    for (int t = 0; t < 40; ++t) {
        const Jet a = random_function(rs, s, static_cast<unsigned>(rs.raw() % 3));
        const Jet b = random_function(rs, s, static_cast<unsigned>(rs.raw() % 3));
        CHECK(honest(a * b, pad(a) * pad(b)));
        CHECK(honest(a + b, pad(a) + pad(b)));
        CHECK(honest(jet_power(b, 3), jet_power(pad(b), 3)));
        CHECK(honest(partial_derivative(a, 1), partial_derivative(pad(a), 1)));
    }
}

TEST_CASE("composition, inversion and implicit solving keep honest orders")
{
    RationalSampler rs(42);
    for (unsigned n : {1u, 2u}) {
        const auto s = VariableSpace::symplectic(n);
        for (int t = 0; t < 10; ++t) {
            const MapJet m = random_map(rs, s, 2 + static_cast<unsigned>(rs.raw() % 3));
            const MapJet k = random_map(rs, s, 2 + static_cast<unsigned>(rs.raw() % 3));
            const Jet f = random_function(rs, s, 0);
            CHECK(honest(jet_compose(f, m), jet_compose(pad(f), pad(m))));
            CHECK(honest(compose_maps(m, k), compose_maps(pad(m), pad(k))));
            CHECK(honest(map_invert(m), map_invert(pad(m))));

            const Jet g = Jet::variable(s, 4, 0) + random_jet(rs, s, 4, 1, 2);
            if (is_zero(g.linear_coeff(0))) {
                continue;
            }
            const Jet rhs = random_function(rs, s, 1);
            CHECK(honest(implicit_solve(g, rhs, 0), implicit_solve(pad(g), pad(rhs), 0)));
        }
    }
}

TEST_CASE("calculus operations keep honest orders")
{
    RationalSampler rs(43);
    for (unsigned n : {1u, 2u}) {
        const auto s = VariableSpace::symplectic(n);
        for (int t = 0; t < 10; ++t) {
            const VectorFieldJet v = random_field(rs, s, 2 + static_cast<unsigned>(rs.raw() % 3), 0);
            const Jet f = random_function(rs, s, 0);
            CHECK(honest(apply(v, f), apply(pad(v), pad(f))));

            std::vector<Jet> coeffs;
            for (std::size_t i = 0; i < s.dim(); ++i) {
                coeffs.push_back(random_function(rs, s, 0));
            }
            const FormJet a = FormJet::one_form(coeffs);
            const FormJet w = random_closed_form(rs, s, 3);
            CHECK(honest(exterior_derivative(a), exterior_derivative(pad(a))));
            CHECK(honest(wedge(a, w), wedge(pad(a), pad(w))));
            CHECK(honest(contract(v, w), contract(pad(v), pad(w))));
            const MapJet m = random_map(rs, s, 2 + static_cast<unsigned>(rs.raw() % 3));
            CHECK(honest(pullback(m, w), pullback(pad(m), pad(w))));

            const Jet g = random_function(rs, s, 1), h = random_function(rs, s, 1);
            CHECK(honest(hamiltonian_vf(g, w), hamiltonian_vf(pad(g), pad(w))));
            CHECK(honest(poisson_bracket(g, h, w), poisson_bracket(pad(g), pad(h), pad(w))));
        }
    }
}

TEST_CASE("normalizing constructions keep honest orders")
{
    RationalSampler rs(44);
    for (unsigned n : {1u, 2u}) {
        const auto s = VariableSpace::symplectic(n);
        for (int t = 0; t < 4; ++t) {
            std::vector<Jet> comps;
            for (std::size_t i = 0; i < s.dim(); ++i) {
                comps.push_back(random_jet(rs, s, 3, 1, 2));
            }
            comps[0] += Jet::constant(s, 3, 1 + static_cast<int>(rs.raw() % 3));
            const VectorFieldJet v(comps);
            CHECK(honest(rectify(v, 0), rectify(pad(v), 0)));

            const FormJet w = random_closed_form(rs, s, 3);
            CHECK(honest(darboux_reduce(SymplecticFormJet(w)), darboux_reduce(SymplecticFormJet(pad(w)))));

            const MapJet phi = compose_maps(random_normal_shaped(rs, n, 4), random_symplectomorphism(rs.raw(), 3, s, 4));
            const auto low = normalize_diffeo_core(phi);
            const auto full = normalize_diffeo_core(pad(phi));
            for (unsigned i = 0; i < n; ++i) {
                CHECK(honest(low.q_tilde[i], full.q_tilde[i]));
                CHECK(honest(low.p_tilde[i], full.p_tilde[i]));
            }
            CHECK(honest(low.normalizer, full.normalizer));
        }
    }
}

TEST_CASE("Weierstrass data and the quasi-level normal form keep honest orders")
{
    RationalSampler rs(45);
    const auto c = VariableSpace::constrained(1);
    const auto w = VariableSpace::quasi(1);
    for (int t = 0; t < 6; ++t) {
        const unsigned order = 5 + static_cast<unsigned>(rs.raw() % 2);
        const Jet x = Jet::variable(c, order, 0);
        const Jet h = x * x + Jet::variable(c, order, 1) + random_jet(rs, c, order, 2, 2);
        const auto low = weierstrass_quadratic(h, 0);
        const auto full = weierstrass_quadratic(pad(h), 0);
        CHECK(honest(low.a, full.a));
        CHECK(honest(low.b, full.b));
        CHECK(honest(low.unit, full.unit));

        const Jet y = Jet::variable(w, order, 0);
        const Jet f = y + random_jet(rs, w, order, 2, 2);
        const Jet g = y + Jet::variable(w, order, 1) + y * Jet::variable(w, order, 2) + random_jet(rs, w, order, 2, 3);
        try {
            const auto l3 = normalize_quasi_pair(f, g);
            const auto l3full = normalize_quasi_pair(pad(f), pad(g));
            CHECK(honest(l3.r, l3full.r));
            CHECK(honest(l3.q_tilde[0], l3full.q_tilde[0]));
            CHECK(honest(l3.phi, l3full.phi));
        } catch (const Error &e) {
            CHECK(e.kind() == ErrorKind::GenericityViolation);
        }
    }
}
