#include <sympjet/moduli.hpp>

#include <sympjet/linalg.hpp>
#include <sympjet/sampling.hpp>
#include <sympjet/symplectic.hpp>

#include <algorithm>

namespace sympjet
{

namespace
{

std::uint64_t graded_sum(unsigned from, unsigned to, unsigned m)
{
    std::uint64_t s = 0;
    for (unsigned d = from; d <= to; ++d) {
        s += monomials_of_degree(d, m);
    }
    return s;
}

MapJet random_base(RationalSampler &rs, const VariableSpace &space, unsigned order)
{
    for (;;) {
        std::vector<Jet> comps;
        for (std::size_t i = 0; i < space.dim(); ++i) {
            comps.push_back(random_jet(rs, space, order, 1, 1));
        }
        MapJet m(space, std::move(comps));
        if (!is_zero(determinant(m.linear_part()))) {
            return m;
        }
    }
}

std::size_t action_rank(unsigned n, unsigned k, std::uint64_t seed)
{
    const VariableSpace s = VariableSpace::symplectic(n);
    const std::size_t m = s.dim();
    RationalSampler rs(seed);
    const MapJet base = random_base(rs, s, k + 1);
    std::vector<std::vector<Jet>> jacobian(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            jacobian[i].push_back(partial_derivative(base[i], j));
        }
    }
    const FormJet omega = standard_form(s, k);

    // One row per generator H; columns are the coefficients of degree 1..k of
    // the components of DPhi . Z_H.
    RationalMatrix rows;
    const Jet probe(s, k + 1);
    const std::size_t lo = probe.table().count_up_to(1);
    for (std::size_t idx = lo; idx < probe.size(); ++idx) {
        Jet h(s, k + 1);
        h.coeff(idx) = 1;
        const VectorFieldJet z = hamiltonian_vf(h, omega);
        std::vector<Rational> row;
        for (std::size_t i = 0; i < m; ++i) {
            Jet comp(s, k);
            for (std::size_t j = 0; j < m; ++j) {
                comp += (jacobian[i][j] * z[j]).truncated(k);
            }
            for (std::size_t c = 1; c < comp.size(); ++c) {
                row.push_back(comp.coeff(c));
            }
        }
        rows.push_back(std::move(row));
    }
    return rank_bareiss(rows);
}

} // namespace

OrbitRankSamples orbit_rank_samples(unsigned n, unsigned k, std::uint64_t seed)
{
    OrbitRankSamples out;
    const unsigned m = 2 * n;
    out.jet_dimension = m * graded_sum(1, k, m);
    out.group_dimension = graded_sum(2, k + 1, m);
    for (std::uint64_t i = 0; i < 3; ++i) {
        out.ranks.push_back(action_rank(n, k, seed * 3 + i));
    }
    out.seeds_agree = std::all_of(out.ranks.begin(), out.ranks.end(), [&](auto r) { return r == out.ranks[0]; });
    return out;
}

std::uint64_t orbit_dimension_rank(unsigned n, unsigned k, std::uint64_t seed)
{
    const OrbitRankSamples s = orbit_rank_samples(n, k, seed);
    return s.jet_dimension - *std::max_element(s.ranks.begin(), s.ranks.end());
}

std::uint64_t normal_form_coefficient_count(unsigned n, unsigned k)
{
    // Counted monomial by monomial; the generators are taken as the first j
    // variables, which does not change the count.
    const std::size_t m = 2 * n;
    const auto table = MonomialTable::get(m, k);
    std::uint64_t total = 0;
    for (std::size_t j = 1; j < m; ++j) {
        for (std::size_t idx = table->count_up_to(0); idx < table->count_up_to(k); ++idx) {
            bool in_ideal = false;
            for (std::size_t v = 0; v < j && !in_ideal; ++v) {
                in_ideal = table->exponent(idx, v) > 0;
            }
            total += in_ideal ? 1 : 0;
        }
    }
    return total;
}

std::uint64_t closed_two_form_dimension(unsigned n, unsigned d)
{
    const VariableSpace s = VariableSpace::symplectic(n);
    const std::size_t m = s.dim();
    const Jet probe(s, d + 1);
    const std::size_t lo = probe.table().offset(d + 1);
    const std::size_t out_lo = probe.table().offset(d);
    const std::size_t out_hi = probe.table().count_up_to(d);
    RationalMatrix rows;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t idx = lo; idx < probe.size(); ++idx) {
            std::vector<Jet> coeffs(m, Jet(s, d + 1));
            coeffs[i].coeff(idx) = 1;
            const FormJet da = exterior_derivative(FormJet::one_form(coeffs));
            std::vector<Rational> row;
            for (std::size_t a = 0; a < m; ++a) {
                for (std::size_t b = a + 1; b < m; ++b) {
                    const Jet c = da.coefficient({a, b});
                    for (std::size_t t = out_lo; t < out_hi; ++t) {
                        row.push_back(t < c.size() ? c.coeff(t) : Rational(0));
                    }
                }
            }
            rows.push_back(std::move(row));
        }
    }
    return rank_bareiss(rows);
}

SeriesCoeffs poincare_series(unsigned n, unsigned max_order, std::uint64_t seed)
{
    SeriesCoeffs sc;
    sc.n = n;
    sc.max_order = max_order;
    sc.dims.push_back(0);
    sc.increments.push_back(0);
    for (unsigned k = 1; k <= max_order; ++k) {
        sc.dims.push_back(normal_form_coefficient_count(n, k));
        sc.increments.push_back(sc.dims[k] - sc.dims[k - 1]);
    }

    // 1/(1-t)^{2n} by 2n rounds of partial sums, then shift by t and scale.
    std::vector<std::uint64_t> series(max_order + 1, 0);
    series[0] = 1;
    for (unsigned r = 0; r < 2 * n; ++r) {
        for (unsigned k = 1; k <= max_order; ++k) {
            series[k] += series[k - 1];
        }
    }
    const std::uint64_t lead = static_cast<std::uint64_t>(n) * (2 * n - 1);
    sc.series_increments.assign(max_order + 1, 0);
    sc.series_dims.assign(max_order + 1, 0);
    for (unsigned k = 1; k <= max_order; ++k) {
        sc.series_increments[k] = lead * series[k - 1];
        sc.series_dims[k] = sc.series_dims[k - 1] + sc.series_increments[k];
        sc.agrees.push_back(sc.series_dims[k] == sc.dims[k]);
    }

    for (unsigned k = 1; k <= std::min(max_order, 3u); ++k) {
        sc.rank_dims.push_back(orbit_dimension_rank(n, k, seed));
        sc.methods_agree = sc.methods_agree && sc.rank_dims.back() == sc.dims[k];
    }
    for (unsigned d = 0; d + 1 <= max_order; ++d) {
        sc.closed_form_dims.push_back(closed_two_form_dimension(n, d));
        sc.shift_identity_holds = sc.shift_identity_holds && sc.closed_form_dims.back() == sc.increments[d + 1];
    }
    return sc;
}

} // namespace sympjet
