#include <doctest.h>

#include "helpers.hpp"

#include <sympjet/normal_forms.hpp>
#include <sympjet/sampling.hpp>

using namespace sympjet;
using testing_util::c;
using testing_util::frac;
using testing_util::v;

TEST_CASE("glancing check on simple pairs")
{
    const auto s = VariableSpace::constrained(1);
    const unsigned n = 5;
    const Jet x = v(s, n, "x"), y = v(s, n, "y"), p = v(s, n, "p1");
    const auto melrose = check_glancing(y, x * x + y + p);
    CHECK(melrose.in_s1);
    CHECK(melrose.fh == 0);
    CHECK(melrose.f_fh == 2);
    CHECK(melrose.h_fh != 0);
    CHECK(melrose.wedge_nonzero);

    const auto flat = check_glancing(y, y + p);
    CHECK_FALSE(flat.in_s1);
    CHECK(flat.f_fh == 0);

    const auto transversal = check_glancing(y, x + y);
    CHECK_FALSE(transversal.in_s1);
    CHECK(transversal.fh == 1);
}

TEST_CASE("Weierstrass division reproduces h")
{
    const auto s = VariableSpace::constrained(1);
    const unsigned n = 6;
    const Jet x = v(s, n, "x"), y = v(s, n, "y"), p = v(s, n, "p1"), q = v(s, n, "q1");
    const Jet h = (c(s, n, 2) + x + q) * (x * x + (y * p) * x + y + p * q) + x * x * x * x * y;
    const auto wr = weierstrass_quadratic(h, 0);
    CHECK_FALSE(depends_on(wr.a, 0));
    CHECK_FALSE(depends_on(wr.b, 0));
    CHECK(wr.b.order() == 3);
    CHECK(wr.a.order() == 2);
    CHECK(wr.unit.order() == 2);
    const Jet back = wr.unit * (x * x + wr.a * x + wr.b);
    CHECK(equal_to_order(back, h, back.order()));

    const Jet plain = x * x + 2 * x * y + y;
    const auto w2 = weierstrass_quadratic(plain, 0);
    CHECK(w2.unit == c(s, 2, 1));
    CHECK(w2.a == 2 * y.truncated(2));
    CHECK(w2.b == y.truncated(3));
}

TEST_CASE("quasi-level pair normal form on the identity-invariant pair")
{
    const auto w = VariableSpace::quasi(1);
    const unsigned n = 5;
    const Jet y = v(w, n, "y"), p = v(w, n, "p1"), q = v(w, n, "q1");
    const auto nf = normalize_quasi_pair(y, y + p + q * y);
    CHECK(equal_to_order(nf.r, y, nf.r.order()));
    CHECK(nf.q_tilde[0] == v(VariableSpace::symplectic(1), nf.q_tilde[0].order(), "q1"));
    CHECK(nf.phi.is_zero());
    CHECK(nf.certification.ok);
}

TEST_CASE("quasi-level pair normal form rejects pairs outside the generic set")
{
    const auto w = VariableSpace::quasi(1);
    const unsigned n = 5;
    const Jet y = v(w, n, "y"), p = v(w, n, "p1");
    try {
        normalize_quasi_pair(y, y + p);
        CHECK(false);
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::GenericityViolation);
    }
}

TEST_CASE("quasi-level pair normal form with a nonlinear f")
{
    const auto w = VariableSpace::quasi(1);
    const unsigned n = 5;
    const Jet y = v(w, n, "y"), p = v(w, n, "p1"), q = v(w, n, "q1");
    const auto nf = normalize_quasi_pair(2 * y + y * y, y + p + q * y);
    CHECK(!is_zero(nf.r.linear_coeff(0)));
    CHECK(nf.certification.ok);
    CHECK(substitute_zero(nf.phi, {1, 2}).is_zero());
}

TEST_CASE("pair normal form worked example")
{
    const auto s = VariableSpace::constrained(1);
    const unsigned n = 6;
    const Jet x = v(s, n, "x"), y = v(s, n, "y"), p = v(s, n, "p1"), q = v(s, n, "q1");
    const auto nf = normalize_glancing_pair(y, x * x + y + p + q * y);
    const auto w = VariableSpace::quasi(1);
    CHECK(nf.r == v(w, nf.r.order(), "y"));
    CHECK(nf.q_tilde[0] == v(VariableSpace::symplectic(1), nf.q_tilde[0].order(), "q1"));
    CHECK(nf.phi.is_zero());
    CHECK(nf.certification.ok);
}

TEST_CASE("pair normal form on the Melrose pair is not generic")
{
    const auto s = VariableSpace::constrained(1);
    const unsigned n = 6;
    const Jet x = v(s, n, "x"), y = v(s, n, "y"), p = v(s, n, "p1");
    try {
        normalize_glancing_pair(y, x * x + y + p);
        CHECK(false);
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::GenericityViolation);
    }
    try {
        normalize_glancing_pair(y, y + p);
        CHECK(false);
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::NotGlancing);
    }
}

TEST_CASE("planar pair normal form")
{
    const auto s = VariableSpace::constrained(0);
    const unsigned n = 6;
    const Jet x = v(s, n, "x"), y = v(s, n, "y");
    const auto nf = normalize_glancing_pair(y, x * x + 2 * x * y + y);
    const auto w = VariableSpace::quasi(0);
    const Jet yw = v(w, nf.r.order(), "y");
    CHECK(nf.r == yw - yw * yw);
    CHECK(nf.certification.ok);
}

TEST_CASE("flattened triple normal form")
{
    const auto s = VariableSpace::constrained(1);
    const unsigned n = 6;
    const Jet x = v(s, n, "x"), y = v(s, n, "y"), p = v(s, n, "p1"), q = v(s, n, "q1");
    const auto nf = normalize_glancing_pair(y, x * x + y + p + q * y);
    const auto km = derive_flattened_triple_form(nf);
    const auto w = VariableSpace::quasi(1);
    const unsigned o = km.f_hat.order();
    const Jet yw = v(w, o, "y"), pw = v(w, o, "p1"), qw = v(w, o, "q1");
    CHECK(km.r_hat == v(w, km.r_hat.order(), "y"));
    CHECK(km.f_hat == yw + pw + qw * yw);
    CHECK(km.psi.is_zero());
    // dp^dq in the flattened coordinates is dP^dQ / (1 + Q)^3
    const auto t = VariableSpace::symplectic(1);
    const unsigned fo = km.omega_tilde.order();
    const Jet one_q = c(t, fo, 1) + v(t, fo, "q1");
    CHECK(equal_to_order(km.omega_tilde.coefficient({0, 1}) * jet_power(one_q, 3), c(t, fo, 1), fo));

    const auto planar = VariableSpace::constrained(0);
    const Jet px = v(planar, n, "x"), py = v(planar, n, "y");
    const auto nf0 = normalize_glancing_pair(py, px * px + py);
    CHECK(derive_flattened_triple_form(nf0).f_hat == v(VariableSpace::quasi(0), derive_flattened_triple_form(nf0).f_hat.order(), "y"));
    const auto nf2 = normalize_glancing_pair(py, px * px + 2 * py);
    const auto km2 = derive_flattened_triple_form(nf2);
    CHECK(km2.r_hat == frac(1, 2) * v(VariableSpace::quasi(0), km2.r_hat.order(), "y"));
}

namespace
{

struct GenericPair {
    Jet f, h;
};

GenericPair generic_pair(unsigned n)
{
    const auto s = VariableSpace::constrained(1);
    const Jet x = v(s, n, "x"), y = v(s, n, "y"), p = v(s, n, "p1"), q = v(s, n, "q1");
    return {y + frac(1, 3) * p * q + y * y, x * x + y + p + q * y + 2 * p * p - y * q * q + x * x * x * y};
}

void check_same_invariants(const PairNormalForm &a, const PairNormalForm &b)
{
    CHECK(equal_to_order(a.r, b.r, std::min(a.r.order(), b.r.order())));
    CHECK(equal_to_order(a.q_tilde[0], b.q_tilde[0], std::min(a.q_tilde[0].order(), b.q_tilde[0].order())));
    CHECK(equal_to_order(a.p_tilde[0], b.p_tilde[0], std::min(a.p_tilde[0].order(), b.p_tilde[0].order())));
    CHECK(equal_to_order(a.phi, b.phi, std::min(a.phi.order(), b.phi.order())));
}

} // namespace

TEST_CASE("pair invariants are stable under symplectic changes and unit multiples")
{
    const unsigned n = 6;
    const auto s = VariableSpace::constrained(1);
    const auto pair = generic_pair(n);
    const auto base = normalize_glancing_pair(pair.f, pair.h);
    CHECK(base.r.order() == 3);
    CHECK(base.q_tilde[0].order() == 2);
    CHECK(base.phi.order() == 1);
    RationalSampler rs(17);
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        const MapJet psi = random_symplectomorphism(seed, 3, s, n);
        const Jet u = random_unit(rs, s, n);
        const auto other = normalize_glancing_pair(jet_compose(pair.f, psi), jet_compose(pair.h, psi) * u);
        check_same_invariants(base, other);
    }
}

TEST_CASE("pair invariants agree with those of a longer jet")
{
    const auto shorter = generic_pair(6);
    const auto longer = generic_pair(10);
    check_same_invariants(normalize_glancing_pair(shorter.f, shorter.h), normalize_glancing_pair(longer.f, longer.h));
}

TEST_CASE("terms above the jet order move invariants past half the order")
{
    // x^7 is invisible in a 6-jet but changes r at degree 4, so a 6-jet fixes r only to degree 3.
    const unsigned n = 12;
    const auto s = VariableSpace::constrained(1);
    const Jet x = v(s, n, "x"), y = v(s, n, "y"), p = v(s, n, "p1"), q = v(s, n, "q1");
    const Jet h = x * x + y + p + q * y;
    const auto a = normalize_glancing_pair(y, h);
    const auto b = normalize_glancing_pair(y, h + jet_power(x, 7));
    CHECK(equal_to_order(a.r, b.r, 3));
    CHECK_FALSE(equal_to_order(a.r, b.r, 4));
    CHECK(equal_to_order(a.phi, b.phi, 1));
    CHECK_FALSE(equal_to_order(a.phi, b.phi, 2));
}
