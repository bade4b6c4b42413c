#include <doctest.h>

#include "helpers.hpp"

#include <sympjet/sampling.hpp>
#include <sympjet/serialize.hpp>
#include <sympjet/symplectic.hpp>

using namespace sympjet;
using testing_util::frac;
using testing_util::v;

TEST_CASE("polynomial strings")
{
    const auto s = VariableSpace::constrained(1);
    const unsigned n = 4;
    const Jet x = v(s, n, "x"), y = v(s, n, "y"), p = v(s, n, "p1"), q = v(s, n, "q1");
    CHECK(parse_polynomial("x^2 + y + p1 + q1*y", s, n) == x * x + y + p + q * y);
    CHECK(parse_polynomial("-(y - q1)^2 + 1/3*p1", s, n) == frac(1, 3) * p - (y - q) * (y - q));
    CHECK(parse_polynomial("x^5 + y", s, n) == y);
    CHECK(parse_polynomial("2*x/4", s, n) == frac(1, 2) * x);
    CHECK(parse_polynomial("  -y ", s, n) == frac(-1, 1) * y);

    for (const char *bad : {"x +", "z", "x/y", "x^", "(x", "x / 0", "x $ y"}) {
        try {
            parse_polynomial(bad, s, n);
            CHECK_MESSAGE(false, bad);
        } catch (const Error &e) {
            CHECK(e.kind() == ErrorKind::ParseError);
        }
    }
}

TEST_CASE("jets, forms and maps survive a JSON round trip")
{
    const auto s = VariableSpace::symplectic(2);
    RationalSampler rs(3);
    for (int i = 0; i < 10; ++i) {
        const Jet f = random_jet(rs, s, 4, 0);
        const Json j = jet_to_json(f);
        CHECK(jet_from_json(Json::parse(j.dump()), s, 0) == f);
        const FormJet w = random_closed_form(rs, s, 3);
        CHECK(equal_to_order(form_from_json(Json::parse(form_to_json(w).dump()), s, 0), w, 3));
    }
    const MapJet m = random_symplectomorphism(4, 3, s, 4);
    const MapJet back = map_from_json(Json::parse(map_to_json(m).dump()), s, s, 0);
    CHECK(back.order() == m.order());
    for (std::size_t i = 0; i < s.dim(); ++i) {
        CHECK(back[i] == m[i]);
    }
    CHECK(is_symplectomorphism(back, standard_form(s, 3)).ok);
}

TEST_CASE("malformed JSON jets are parse errors")
{
    const auto s = VariableSpace::symplectic(1);
    for (const char *bad : {R"([["1", "2", [1]]])", R"([[1, 2, [1, 0]]])", R"([["1", "0", [1, 0]]])",
                            R"([["a", "1", [1, 0]]])", R"(5)", R"({"terms": 3})"}) {
        try {
            jet_from_json(Json::parse(bad), s, 3);
            CHECK_MESSAGE(false, bad);
        } catch (const Error &e) {
            CHECK(e.kind() == ErrorKind::ParseError);
        }
    }
}
