#include <doctest.h>

#include <sympjet/moduli.hpp>
#include <sympjet/monomial.hpp>

#include <algorithm>

using namespace sympjet;

namespace
{

std::uint64_t closed_form_count(unsigned n, unsigned k)
{
    std::uint64_t total = 0;
    for (unsigned j = 1; j < 2 * n; ++j) {
        for (unsigned d = 1; d <= k; ++d) {
            total += monomials_of_degree(d, 2 * n) - monomials_of_degree(d, 2 * n - j);
        }
    }
    return total;
}

} // namespace

TEST_CASE("normal form coefficient counts")
{
    CHECK(normal_form_coefficient_count(1, 2) == 3);
    CHECK(normal_form_coefficient_count(2, 1) == 6);
    CHECK(normal_form_coefficient_count(2, 2) == 26);
    for (unsigned n = 1; n <= 3; ++n) {
        for (unsigned k = 1; k <= 4; ++k) {
            CHECK(normal_form_coefficient_count(n, k) == closed_form_count(n, k));
        }
    }
}

TEST_CASE("orbit dimension by rank of the action")
{
    CHECK(orbit_dimension_rank(1, 1, 1) == 1);
    CHECK(orbit_dimension_rank(2, 1, 1) == 6);
    CHECK(orbit_dimension_rank(2, 2, 1) == 26);
    for (unsigned n = 1; n <= 2; ++n) {
        for (unsigned k = 1; k <= 3; ++k) {
            const auto s = orbit_rank_samples(n, k, 5);
            CHECK(s.seeds_agree);
            // the action is free at a generic base jet
            CHECK(s.ranks[0] == s.group_dimension);
            CHECK(orbit_dimension_rank(n, k, 5) == normal_form_coefficient_count(n, k));
        }
    }
}

TEST_CASE("first moduli dimension is n(2n-1)")
{
    for (unsigned n = 1; n <= 4; ++n) {
        CHECK(normal_form_coefficient_count(n, 1) == n * (2 * n - 1));
        CHECK(orbit_dimension_rank(n, 1, 2) == n * (2 * n - 1));
        CHECK(closed_two_form_dimension(n, 0) == n * (2 * n - 1));
    }
}

TEST_CASE("Poincare series against the closed-form rational function")
{
    const auto one = poincare_series(1, 6);
    CHECK(one.dims == std::vector<std::uint64_t>{0, 1, 3, 6, 10, 15, 21});
    CHECK(one.series_dims == one.dims);
    CHECK(std::all_of(one.agrees.begin(), one.agrees.end(), [](bool b) { return b; }));
    CHECK(one.methods_agree);
    CHECK(one.shift_identity_holds);

    const auto two = poincare_series(2, 2);
    CHECK(two.dims == std::vector<std::uint64_t>{0, 6, 26});
    CHECK(two.series_dims == std::vector<std::uint64_t>{0, 6, 30});
    CHECK(two.agrees == std::vector<bool>{true, false});
    CHECK(two.rank_dims == std::vector<std::uint64_t>{6, 26});
    CHECK(two.methods_agree);
    CHECK(two.shift_identity_holds);
}
