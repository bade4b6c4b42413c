#include <doctest.h>

#include "helpers.hpp"

#include <sympjet/linalg.hpp>
#include <sympjet/normal_forms.hpp>
#include <sympjet/sampling.hpp>

using namespace sympjet;
using testing_util::c;
using testing_util::frac;
using testing_util::v;

TEST_CASE("pair straightening on the standard pair is the identity")
{
    const auto s = VariableSpace::symplectic(1);
    const auto res = straighten_pair(v(s, 4, "p1"), v(s, 4, "q1"));
    CHECK(equal_to_order(res.normalizer, MapJet::identity(s, 4), 4));
    CHECK(res.p == v(s, 4, "p1"));
    CHECK(res.q == v(s, 4, "q1"));
}

TEST_CASE("pair straightening rescales a linear pair")
{
    const auto s = VariableSpace::symplectic(1);
    const auto res = straighten_pair(2 * v(s, 4, "p1"), v(s, 4, "q1"));
    CHECK(res.p == v(s, 4, "p1"));
    CHECK(res.q == 2 * v(s, 4, "q1"));
    CHECK(is_symplectomorphism(res.normalizer, standard_form(s, 3)).ok);
}

TEST_CASE("pair straightening on a nonlinear pair")
{
    const auto s = VariableSpace::symplectic(1);
    const Jet p = v(s, 4, "p1"), q = v(s, 4, "q1");
    const auto res = straighten_pair(p + p * p, q + q * p);
    CHECK(res.p == p);
    CHECK(ideal_membership(res.q, IdealSpec(s, {1})));
    CHECK(!is_zero(res.q.linear_coeff(1)));
    const auto rep = is_symplectomorphism(res.normalizer, standard_form(s, 3));
    CHECK(rep.ok);
    CHECK(rep.certified_order == 3);
}

TEST_CASE("pair straightening rejects a pair with vanishing bracket")
{
    const auto s = VariableSpace::symplectic(2);
    try {
        straighten_pair(v(s, 4, "p1"), v(s, 4, "q2"));
        CHECK(false);
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::TransversalityFailure);
    }
}

TEST_CASE("isotropy shape")
{
    const auto s1 = VariableSpace::symplectic(1);
    CHECK(isotropy_shape_check(MapJet::identity(s1, 3)));
    const auto s = VariableSpace::symplectic(2);
    const Jet p1 = v(s, 3, "p1"), q1 = v(s, 3, "q1"), p2 = v(s, 3, "p2"), q2 = v(s, 3, "q2");
    CHECK(isotropy_shape_check(MapJet(s, {p1, q1, 2 * p2, frac(1, 2) * q2})));
    CHECK_FALSE(isotropy_shape_check(MapJet(s, {p1, q1 + p1, p2, q2})));
    CHECK_FALSE(isotropy_shape_check(MapJet(s, {p1, q1, 2 * p2, q2})));
    CHECK_FALSE(isotropy_shape_check(MapJet(s, {p1, q1, p2 + q1 * q1, q2})));
}

TEST_CASE("renumerate keeps admissible maps and fixes swapped ones")
{
    const auto s = VariableSpace::symplectic(1);
    const Jet p = v(s, 3, "p1"), q = v(s, 3, "q1");
    const auto same = renumerate(MapJet(s, {p + q * q, q}));
    CHECK(same.relabeling.is_identity());
    CHECK(same.map[0] == p + q * q);

    const auto twisted = renumerate(MapJet(s, {q, -p}));
    CHECK(twisted.relabeling.twisted[0]);
    CHECK(equal_to_order(twisted.map, MapJet::identity(s, 3), 3));
    CHECK(is_symplectomorphism(twisted.relabeling.source_map, standard_form(s, 2)).ok);

    const auto s2 = VariableSpace::symplectic(2);
    const Jet p1 = v(s2, 3, "p1"), q1 = v(s2, 3, "q1"), p2 = v(s2, 3, "p2"), q2 = v(s2, 3, "q2");
    const auto swapped = renumerate(MapJet(s2, {p2, q2, p1, q1 + p2 * p2}));
    CHECK_FALSE(swapped.relabeling.is_identity());
    const auto lin = swapped.map.linear_part();
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(!is_zero(lin[i][i]));
    }
    CHECK(is_symplectomorphism(swapped.relabeling.source_map, standard_form(s2, 2)).ok);

    // No pair relabeling works here; the target components are reordered one by one.
    const auto mixed = renumerate(MapJet(s2, {p1, p2, q1, q2}));
    CHECK(mixed.relabeling.target_components == std::vector<std::size_t>{0, 2, 1, 3});
    CHECK(equal_to_order(mixed.map, MapJet::identity(s2, 3), 3));
}

TEST_CASE("diffeo normal form on simple linear maps")
{
    const auto s = VariableSpace::symplectic(1);
    const Jet p = v(s, 4, "p1"), q = v(s, 4, "q1");

    const auto id = normalize_diffeo(MapJet::identity(s, 4));
    CHECK(id.q_tilde[0] == q);
    CHECK(equal_to_order(id.normalizer, MapJet::identity(s, 4), 4));

    const auto scaled = normalize_diffeo(MapJet(s, {2 * p, frac(1, 2) * q}));
    CHECK(scaled.q_tilde[0] == q);
    CHECK(scaled.normalizer[0] == frac(1, 2) * p);
    CHECK(scaled.normalizer[1] == 2 * q);
    CHECK(scaled.certification.ok);

    const auto other = normalize_diffeo(MapJet(s, {p, 2 * q}));
    CHECK(other.q_tilde[0] == 2 * q);
    CHECK_FALSE(other.q_tilde[0] == id.q_tilde[0]);
}

TEST_CASE("diffeo invariants are constant on orbits")
{
    RationalSampler rs(99);
    for (unsigned n : {1u, 2u}) {
        for (int trial = 0; trial < 3; ++trial) {
            const unsigned order = 4;
            const MapJet nf_map = random_normal_shaped(rs, n, order);
            const auto s = VariableSpace::symplectic(n);
            MapJet psi = random_symplectomorphism(rs.raw(), 4, s, order);
            const auto direct = normalize_diffeo_core(nf_map);
            CHECK(equal_to_order(direct.normalized, nf_map, order));
            const auto moved = normalize_diffeo_core(compose_maps(nf_map, psi));
            CHECK(moved.certification.ok);
            CHECK(moved.isotropy_steps_ok);
            for (unsigned i = 0; i < n; ++i) {
                CHECK(equal_to_order(moved.q_tilde[i], direct.q_tilde[i], order - 1));
                CHECK(equal_to_order(moved.p_tilde[i], direct.p_tilde[i], order - 1));
            }
        }
    }
}

TEST_CASE("ideal split reassembles the jet")
{
    const auto s = VariableSpace::symplectic(2);
    const Jet p1 = v(s, 4, "p1"), q1 = v(s, 4, "q1"), q2 = v(s, 4, "q2");
    const Jet f = q1 * p1 + 3 * p1 * q2 + q2 * q2 * q1;
    const IdealSpec ideal = IdealSpec::omega(s, 3);
    const auto parts = ideal_split(f, ideal);
    Jet back(s, 4);
    for (std::size_t g = 0; g < parts.size(); ++g) {
        back += Jet::variable(s, 4, ideal.generators()[g]) * parts[g];
    }
    CHECK(equal_to_order(back, f, 4));
    CHECK_THROWS_AS(ideal_split(p1 + v(s, 4, "p2"), ideal), Error);
}

TEST_CASE("symplectic form parametrization")
{
    const auto s = VariableSpace::symplectic(2);
    const auto std_param = parametrize_symplectic_form(SymplecticFormJet(standard_form(s, 3)));
    CHECK(std_param.q_bar[0] == v(s, 4, "q1"));
    CHECK(std_param.q_bar[1] == v(s, 4, "q2"));
    CHECK(std_param.p_bar[1].is_zero());

    const auto s1 = VariableSpace::symplectic(1);
    FormJet w(s1, 2, 3);
    w.add_term({0, 1}, c(s1, 3, 2));
    const auto doubled = parametrize_symplectic_form(SymplecticFormJet(w));
    CHECK(doubled.q_bar[0] == 2 * v(s1, 4, "q1"));
    CHECK(doubled.certification.ok);

    RationalSampler rs(4);
    for (int trial = 0; trial < 3; ++trial) {
        const FormJet rw = random_closed_form(rs, s, 3);
        const auto param = parametrize_symplectic_form(SymplecticFormJet(rw));
        CHECK(param.certification.ok);
        CHECK(param.certification.certified_order == 3);
        CHECK(ideal_membership(param.q_bar[0], IdealSpec::omega(s, 1)));
        CHECK(ideal_membership(param.q_bar[1], IdealSpec::omega(s, 3)));
        CHECK(ideal_membership(param.p_bar[1], IdealSpec::omega(s, 2)));
    }
}
