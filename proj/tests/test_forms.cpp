#include <doctest.h>

#include "helpers.hpp"

#include <sympjet/forms.hpp>
#include <sympjet/linalg.hpp>

#include <random>

using namespace sympjet;
using testing_util::c;
using testing_util::v;

namespace
{

Jet random_jet(std::mt19937_64 &rng, const VariableSpace &s, unsigned order, std::size_t first)
{
    Jet f(s, order);
    std::uniform_int_distribution<int> coin(0, 2), val(-3, 3);
    for (std::size_t i = first; i < f.size(); ++i) {
        if (coin(rng) == 0) {
            f.coeff(i) = testing_util::frac(val(rng), 1 + coin(rng));
        }
    }
    return f;
}

MapJet random_map(std::mt19937_64 &rng, const VariableSpace &s, unsigned order)
{
    std::vector<Jet> comps;
    for (std::size_t i = 0; i < s.dim(); ++i) {
        Jet extra = random_jet(rng, s, order, 1 + s.dim());
        comps.push_back(Jet::variable(s, order, i) + extra);
    }
    return MapJet(s, comps);
}

} // namespace

TEST_CASE("d of the Liouville form is the standard form")
{
    const auto s = VariableSpace::symplectic(1);
    const Jet p = v(s, 4, "p1"), q = v(s, 4, "q1");
    const FormJet lambda = p * FormJet::differential(q);
    FormJet expected(s, 2, 2);
    expected.add_term({0, 1}, c(s, 2, 1));
    CHECK(equal_to_order(exterior_derivative(lambda), expected, 2));
}

TEST_CASE("wedge is graded commutative and sorted with sign")
{
    const auto s = VariableSpace::symplectic(1);
    const FormJet dp = FormJet::differential(v(s, 3, "p1"));
    const FormJet dq = FormJet::differential(v(s, 3, "q1"));
    CHECK(equal_to_order(wedge(dp, dq), Rational(-1) * wedge(dq, dp), 2));
    CHECK(wedge(dp, dp).is_zero());
    FormJet a(s, 2, 2);
    a.add_term({1, 0}, c(s, 2, 1));
    CHECK(a.coefficient({0, 1}) == c(s, 2, -1));
}

TEST_CASE("contraction inserts into the first slot")
{
    const auto s = VariableSpace::symplectic(1);
    FormJet w(s, 2, 3);
    w.add_term({0, 1}, c(s, 3, 1));
    const auto dp = VectorFieldJet::coordinate(s, 3, 0);
    const auto dq = VectorFieldJet::coordinate(s, 3, 1);
    CHECK(equal_to_order(contract(dp, w), FormJet::differential(v(s, 4, "q1")), 3));
    CHECK(equal_to_order(contract(dq, w), Rational(-1) * FormJet::differential(v(s, 4, "p1")), 3));
    CHECK(evaluate_at_origin(w, {{1, 0}, {0, 1}}) == 1);
    CHECK(evaluate_at_origin(w, {{0, 1}, {1, 0}}) == -1);
}

TEST_CASE("d squares to zero and pullback commutes with d and wedge")
{
    std::mt19937_64 rng(5);
    const auto s = VariableSpace::symplectic(2);
    const unsigned n = 4;
    for (int trial = 0; trial < 3; ++trial) {
        std::vector<Jet> coeffs;
        for (std::size_t i = 0; i < s.dim(); ++i) {
            coeffs.push_back(random_jet(rng, s, n, 0));
        }
        const FormJet a = FormJet::one_form(coeffs);
        const FormJet b = FormJet::differential(random_jet(rng, s, n + 1, 0));
        CHECK(exterior_derivative(exterior_derivative(a)).is_zero());

        const MapJet m = random_map(rng, s, n + 1);
        const FormJet lhs = pullback(m, exterior_derivative(a));
        const FormJet rhs = exterior_derivative(pullback(m, a));
        CHECK(equal_to_order(lhs, rhs, std::min(lhs.order(), rhs.order())));
        const FormJet w1 = pullback(m, wedge(a, b));
        const FormJet w2 = wedge(pullback(m, a), pullback(m, b));
        CHECK(equal_to_order(w1, w2, std::min(w1.order(), w2.order())));
    }
}

TEST_CASE("rectify a constant field")
{
    const auto s = VariableSpace::symplectic(1);
    const auto field = VectorFieldJet::coordinate(s, 3, 0, 2);
    const MapJet phi = rectify(field);
    CHECK(phi[0] == 2 * v(s, 4, "p1"));
    CHECK(phi[1] == v(s, 4, "q1"));
    const MapJet back = map_invert(phi);
    CHECK(back[0] == testing_util::frac(1, 2) * v(s, 4, "p1"));
}

TEST_CASE("rectify a field vanishing at the origin fails")
{
    const auto s = VariableSpace::symplectic(1);
    const VectorFieldJet field({v(s, 3, "p1"), v(s, 3, "q1")});
    CHECK_THROWS_AS(rectify(field), Error);
}

TEST_CASE("rectified fields push forward to the coordinate field")
{
    std::mt19937_64 rng(11);
    const auto s = VariableSpace::quasi(1);
    const unsigned n = 5;
    for (int trial = 0; trial < 4; ++trial) {
        std::vector<Jet> comps;
        for (std::size_t i = 0; i < s.dim(); ++i) {
            comps.push_back(random_jet(rng, s, n, 1));
        }
        comps[trial % 3] += c(s, n, 1 + trial);
        const VectorFieldJet field(comps);
        const MapJet phi = rectify(field);
        CHECK(phi.order() == n + 1);
        const auto residual = pushforward_residual(phi, field, trial % 3);
        for (std::size_t i = 0; i < residual.size(); ++i) {
            CHECK(residual[i].is_zero());
            CHECK(residual[i].order() >= n);
        }
        const auto lin = phi.linear_part();
        CHECK(determinant(lin) != 0);
    }
}
