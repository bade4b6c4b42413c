#include <doctest.h>

#include "helpers.hpp"

#include <random>

using namespace sympjet;
using testing_util::c;
using testing_util::v;

namespace
{

Jet random_jet(std::mt19937_64 &rng, const VariableSpace &s, unsigned order, bool origin_preserving)
{
    Jet f(s, order);
    std::uniform_int_distribution<int> coin(0, 2), val(-3, 3);
    for (std::size_t i = origin_preserving ? 1 : 0; i < f.size(); ++i) {
        if (coin(rng) == 0) {
            f.coeff(i) = testing_util::frac(val(rng), 1 + coin(rng));
        }
    }
    return f;
}

} // namespace

TEST_CASE("power of a unit truncates at the order")
{
    const auto s = VariableSpace::quasi(0);
    const Jet y = v(s, 2, "y");
    const Jet one = c(s, 2, 1);
    const Jet cube = jet_power(one + y, 3);
    CHECK(cube == one + 3 * y + 3 * y * y);
    CHECK(cube.order() == 2);
}

TEST_CASE("composition with a shear")
{
    const auto s = VariableSpace::symplectic(1);
    const Jet p = v(s, 3, "p1"), q = v(s, 3, "q1");
    const MapJet m(s, {p, q + p});
    const Jet r = jet_compose(q * q, m);
    CHECK(r == q * q + 2 * q * p + p * p);
}

TEST_CASE("inverse of a near-identity map")
{
    const auto s = VariableSpace::symplectic(1);
    const Jet p = v(s, 3, "p1"), q = v(s, 3, "q1");
    const MapJet m(s, {p, q + q * q});
    const MapJet inv = map_invert(m);
    CHECK(inv[0] == p);
    CHECK(inv[1] == q - q * q + 2 * q * q * q);
    CHECK(equal_to_order(compose_maps(m, inv), MapJet::identity(s, 3), 3));
}

TEST_CASE("implicit solve of a scalar equation")
{
    const auto s = VariableSpace::quasi(0);
    const Jet y = v(s, 3, "y");
    const Jet sol = implicit_solve(y + y * y, y, 0);
    CHECK(sol == y - y * y + 2 * y * y * y);
}

TEST_CASE("implicit solve rejects a degenerate direction")
{
    const auto s = VariableSpace::quasi(0);
    const Jet y = v(s, 3, "y");
    CHECK_THROWS_AS(implicit_solve(y * y, y, 0), Error);
}

TEST_CASE("ideal membership in the coordinate ideals")
{
    const auto s = VariableSpace::symplectic(2);
    const Jet p1 = v(s, 4, "p1"), q1 = v(s, 4, "q1"), p2 = v(s, 4, "p2"), q2 = v(s, 4, "q2");
    CHECK(ideal_membership(q1 * p2 + q1 * q1, IdealSpec::omega(s, 1)));
    CHECK_FALSE(ideal_membership(q1 + p1, IdealSpec::omega(s, 1)));
    CHECK(ideal_membership(q1 + p1 * q2, IdealSpec::omega(s, 3)));
    CHECK_FALSE(ideal_membership(p2, IdealSpec::omega(s, 3)));
}

TEST_CASE("coefficient expansion reassembles the jet")
{
    const auto s = VariableSpace::quasi(1);
    const Jet y = v(s, 4, "y"), p = v(s, 4, "p1"), q = v(s, 4, "q1");
    const Jet f = y * y * p + y * q + p * p * p + y * y * y * y;
    const auto coeffs = coefficient_expansion(f, 0);
    REQUIRE(coeffs.size() == 5);
    Jet back(s, 4);
    Jet yk = c(s, 4, 1);
    for (const auto &ck : coeffs) {
        CHECK_FALSE(depends_on(ck, 0));
        back += yk * ck;
        yk = yk * y;
    }
    CHECK(back == f);
}

TEST_CASE("multiplication tracks the certified order by valuation")
{
    const auto s = VariableSpace::symplectic(1);
    const Jet a = v(s, 2, "p1");
    const Jet b = v(s, 5, "q1") * v(s, 5, "q1");
    CHECK(jet_multiply(a, b).order() == 4);
    CHECK((a + b).order() == 2);
}

TEST_CASE("ring laws, composition and inversion on random jets")
{
    std::mt19937_64 rng(17);
    const auto s = VariableSpace::symplectic(2);
    const unsigned n = 4;
    for (int trial = 0; trial < 5; ++trial) {
        const Jet f = random_jet(rng, s, n, false), g = random_jet(rng, s, n, false),
                  h = random_jet(rng, s, n, false);
        CHECK(f * (g + h) == f * g + f * h);
        CHECK((f * g) * h == f * (g * h));
        CHECK(f * g == g * f);

        std::vector<Jet> comps, comps2;
        for (std::size_t i = 0; i < s.dim(); ++i) {
            comps.push_back(Jet::variable(s, n, i) + random_jet(rng, s, n, true).truncated(n) -
                            random_jet(rng, s, n, true).homogeneous_part(1));
            comps2.push_back(Jet::variable(s, n, i) + random_jet(rng, s, n, true) -
                             random_jet(rng, s, n, true).homogeneous_part(1));
        }
        const MapJet m(s, comps), m2(s, comps2);
        const MapJet inv = map_invert(m);
        CHECK(equal_to_order(compose_maps(m, inv), MapJet::identity(s, n), n));
        CHECK(equal_to_order(compose_maps(inv, m), MapJet::identity(s, n), n));
        CHECK(equal_to_order(jet_compose(f * g, m), jet_compose(f, m) * jet_compose(g, m), n));
        CHECK(equal_to_order(jet_compose(jet_compose(f, m), m2), jet_compose(f, compose_maps(m, m2)), n));
    }
}
