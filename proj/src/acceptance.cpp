#include <sympjet/acceptance.hpp>

#include <sympjet/linalg.hpp>
#include <sympjet/moduli.hpp>
#include <sympjet/normal_forms.hpp>
#include <sympjet/sampling.hpp>

#include <chrono>
#include <cstdio>
#include <sstream>

namespace sympjet
{

namespace
{

struct Outcome {
    bool pass;
    std::string detail;
};

std::string count_line(int good, int total, const std::string &what)
{
    return std::to_string(good) + "/" + std::to_string(total) + " " + what;
}

MapJet random_diffeo(RationalSampler &rs, const VariableSpace &s, unsigned order)
{
    for (;;) {
        std::vector<Jet> comps;
        for (std::size_t i = 0; i < s.dim(); ++i) {
            comps.push_back(Jet::variable(s, order, i) + random_jet(rs, s, order, 1, 3));
        }
        MapJet m(s, std::move(comps));
        if (!is_zero(determinant(m.linear_part()))) {
            return m;
        }
    }
}

FormJet random_form(RationalSampler &rs, const VariableSpace &s, unsigned degree, unsigned order)
{
    FormJet a(s, degree, order);
    const std::size_t m = s.dim();
    if (degree == 1) {
        for (std::size_t i = 0; i < m; ++i) {
            a.add_term({i}, random_jet(rs, s, order, 0, 3));
        }
    } else {
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = i + 1; j < m; ++j) {
                a.add_term({i, j}, random_jet(rs, s, order, 0, 3));
            }
        }
    }
    return a;
}

bool same(const FormJet &a, const FormJet &b)
{
    return equal_to_order(a, b, std::min(a.order(), b.order()));
}

bool same(const Jet &a, const Jet &b)
{
    return equal_to_order(a, b, std::min(a.order(), b.order()));
}

Outcome darboux_certification()
{
    RationalSampler rs(101);
    int good = 0;
    for (int t = 0; t < 100; ++t) {
        const auto s = VariableSpace::symplectic(t % 2 == 0 ? 1 : 2);
        const FormJet w = random_closed_form(rs, s, 3);
        const MapJet phi = darboux_reduce(SymplecticFormJet(w));
        const auto rep = check_pullback(phi, w, standard_form(s, 3));
        good += rep.ok && rep.residual.is_zero() && rep.certified_order == 3;
    }
    return {good == 100, count_line(good, 100, "forms (n = 1, 2, N = 4) reduce with zero residual to order 3")};
}

Outcome diffeo_round_trip()
{
    const unsigned order = 5;
    RationalSampler rs(202);
    int good = 0;
    for (int t = 0; t < 100; ++t) {
        const unsigned n = t % 2 == 0 ? 1 : 2;
        const auto s = VariableSpace::symplectic(n);
        const MapJet nf_map = random_normal_shaped(rs, n, order);
        const MapJet psi = random_symplectomorphism(rs.raw(), 4, s, order);
        const auto out = normalize_diffeo(compose_maps(nf_map, psi));
        bool ok = out.certification.ok && out.certification.residual.is_zero() &&
                  out.certification.certified_order >= order - 1;
        for (unsigned i = 1; i <= n; ++i) {
            ok = ok && equal_to_order(out.q_tilde[i - 1], nf_map[2 * i - 1], order - 1);
            if (i >= 2) {
                const Jet p_i = nf_map[2 * i - 2] - Jet::variable(s, order, s.p_index(i));
                ok = ok && equal_to_order(out.p_tilde[i - 1], p_i, order - 1);
            }
        }
        good += ok;
    }
    return {good == 100, count_line(good, 100, "normal forms recovered to order 4 with certified normalizers")};
}

Outcome diffeo_separation()
{
    const unsigned order = 5;
    RationalSampler rs(303);
    int good = 0;
    int made = 0;
    while (made < 50) {
        const unsigned n = made % 2 == 0 ? 1 : 2;
        const auto s = VariableSpace::symplectic(n);
        const MapJet nf_map = random_normal_shaped(rs, n, order);
        // One random invariant coefficient: Q_i (component 2i - 1, ideal I_{2i-1}) or P_i, i >= 2
        // (component 2i - 2, ideal I_{2i-2}).
        const unsigned comp = n == 1 ? 1 : static_cast<unsigned>(1 + rs.raw() % 3);
        const unsigned gens = comp;
        const unsigned degree = static_cast<unsigned>(1 + rs.raw() % (order - 1));
        std::vector<unsigned> exps(s.dim(), 0);
        for (unsigned d = 0; d < degree; ++d) {
            ++exps[rs.raw() % s.dim()];
        }
        const Jet mono = Jet::monomial(s, order, exps, rs.nonzero());
        if (!ideal_membership(mono, IdealSpec::omega(s, gens))) {
            continue;
        }
        std::vector<Jet> comps = nf_map.components();
        comps[comp] += mono;
        const MapJet other(s, std::move(comps));
        if (is_zero(determinant(other.linear_part())) ||
            (comp % 2 == 1 && is_zero(other[comp].linear_coeff(s.q_index((comp + 1) / 2))))) {
            continue;
        }
        ++made;
        const auto a = normalize_diffeo(compose_maps(nf_map, random_symplectomorphism(rs.raw(), 4, s, order)));
        const auto b = normalize_diffeo(compose_maps(other, random_symplectomorphism(rs.raw(), 4, s, order)));
        bool differ = false;
        for (unsigned i = 0; i < n; ++i) {
            differ = differ || !equal_to_order(a.q_tilde[i], b.q_tilde[i], order - 1) ||
                     !equal_to_order(a.p_tilde[i], b.p_tilde[i], order - 1);
        }
        good += differ;
    }
    return {good == 50, count_line(good, 50, "pairs differing in one invariant coefficient are separated")};
}

Outcome pair_worked_example()
{
    const unsigned order = 6;
    const auto s = VariableSpace::constrained(1);
    const Jet x = Jet::variable(s, order, 0), y = Jet::variable(s, order, 1);
    const Jet p = Jet::variable(s, order, s.p_index(1)), q = Jet::variable(s, order, s.q_index(1));
    const auto nf = normalize_glancing_pair(y, x * x + y + p + q * y);
    const auto w = VariableSpace::quasi(1);
    const auto t = VariableSpace::symplectic(1);
    const bool r_ok = nf.r == Jet::variable(w, nf.r.order(), 0);
    const bool q_ok = nf.q_tilde[0] == Jet::variable(t, nf.q_tilde[0].order(), t.q_index(1));
    const bool phi_ok = nf.phi.is_zero();
    const bool cert = nf.certification.ok && nf.certification.residual.is_zero();
    bool generic_error = false;
    try {
        normalize_glancing_pair(y, x * x + y + p);
    } catch (const Error &e) {
        generic_error = e.kind() == ErrorKind::GenericityViolation;
    }
    const bool glancing = check_glancing(y, x * x + y + p).in_s1;
    std::ostringstream d;
    d << "r = y " << (r_ok ? "yes" : "no") << ", Q1 = q1 " << (q_ok ? "yes" : "no") << ", phi = 0 "
      << (phi_ok ? "yes" : "no") << ", normalizer certified " << (cert ? "yes" : "no")
      << ", Melrose pair GenericityViolation " << (generic_error ? "yes" : "no") << ", in S1 "
      << (glancing ? "yes" : "no");
    return {r_ok && q_ok && phi_ok && cert && generic_error && glancing, d.str()};
}

Outcome pair_invariance()
{
    const unsigned order = 6;
    const auto s = VariableSpace::constrained(1);
    const Jet x = Jet::variable(s, order, 0), y = Jet::variable(s, order, 1);
    const Jet p = Jet::variable(s, order, s.p_index(1)), q = Jet::variable(s, order, s.q_index(1));
    const Jet f = y + Rational(1, 3) * p * q + y * y;
    const Jet h = x * x + y + p + q * y + 2 * p * p - y * q * q + x * x * x * y;
    const auto base = normalize_glancing_pair(f, h);
    RationalSampler rs(505);
    int good = 0;
    for (int t = 0; t < 50; ++t) {
        const MapJet psi = random_symplectomorphism(rs.raw(), 3, s, order);
        const Jet u = random_unit(rs, s, order);
        const auto other = normalize_glancing_pair(jet_compose(f, psi), jet_compose(h, psi) * u);
        good += other.certification.ok && same(base.r, other.r) && same(base.q_tilde[0], other.q_tilde[0]) &&
                same(base.phi, other.phi) && other.r.order() == base.r.order() &&
                other.phi.order() == base.phi.order();
    }
    // A degree-7 term is invisible in the 6-jet; if it moves the invariants below order 5, no
    // procedure can return them to order 5 from 6-jets.
    const unsigned big = 12;
    const Jet xb = Jet::variable(s, big, 0), yb = Jet::variable(s, big, 1);
    const Jet hb = xb * xb + yb + Jet::variable(s, big, s.p_index(1)) + Jet::variable(s, big, s.q_index(1)) * yb;
    const auto plain = normalize_glancing_pair(yb, hb);
    const auto moved = normalize_glancing_pair(yb, hb + jet_power(xb, 7));
    unsigned first_change = 0;
    while (first_change <= plain.r.order() && equal_to_order(plain.r, moved.r, first_change)) {
        ++first_change;
    }
    const bool literal = base.r.order() >= order - 1 && base.q_tilde[0].order() >= order - 1 &&
                         base.phi.order() >= order - 1;
    std::ostringstream d;
    d << good << "/50 transformed pairs give identical invariants to their determined orders (r " << base.r.order()
      << ", Q1 " << base.q_tilde[0].order() << ", phi " << base.phi.order() << "); order " << order - 1
      << " is not reached because 6-jets do not determine it: adding x^7 changes r at degree " << first_change;
    return {good == 50 && literal, d.str()};
}

Outcome planar_case()
{
    const unsigned order = 6;
    const auto s = VariableSpace::constrained(0);
    const Jet x = Jet::variable(s, order, 0), y = Jet::variable(s, order, 1);
    const Jet h = x * x + 2 * x * y + y;
    const auto base = normalize_glancing_pair(y, h);
    const auto w = VariableSpace::quasi(0);
    const Jet yw = Jet::variable(w, base.r.order(), 0);
    const bool exact = base.r == yw - yw * yw && base.certification.ok;
    int good = 0;
    RationalSampler rs(606);
    for (int t = 0; t < 25; ++t) {
        const MapJet psi = random_symplectomorphism(rs.raw(), 3, s, order);
        const auto other = normalize_glancing_pair(jet_compose(y, psi), jet_compose(h, psi));
        good += other.certification.ok && other.r.order() == base.r.order() && same(other.r, base.r);
    }
    std::ostringstream d;
    d << "r = y - y^2 to order " << base.r.order() << (exact ? "" : " FAILED") << ", "
      << count_line(good, 25, "planar symplectomorphisms leave r unchanged");
    return {exact && good == 25, d.str()};
}

Outcome moduli_dimensions()
{
    bool first = true;
    for (unsigned n = 1; n <= 4; ++n) {
        first = first && normal_form_coefficient_count(n, 1) == n * (2 * n - 1) &&
                orbit_dimension_rank(n, 1, 7) == n * (2 * n - 1);
    }
    bool methods = true;
    for (unsigned n = 1; n <= 2; ++n) {
        for (unsigned k = 1; k <= 3; ++k) {
            const auto samples = orbit_rank_samples(n, k, 7);
            methods = methods && samples.seeds_agree && orbit_dimension_rank(n, k, 7) == normal_form_coefficient_count(n, k);
        }
    }
    const auto one = poincare_series(1, 6, 7);
    bool series = one.dims == one.series_dims;
    const auto two = poincare_series(2, 2, 7);
    const bool flagged = two.dims[2] == 26 && two.rank_dims[1] == 26 && two.series_dims[2] == 30 && !two.agrees[1];
    std::ostringstream d;
    d << "dim M_1 = n(2n-1) for n <= 4 " << (first ? "yes" : "no") << ", rank = count for n <= 2, k <= 3 "
      << (methods ? "yes" : "no") << ", n = 1 series = t/(1-t)^2 to k = 6 " << (series ? "yes" : "no")
      << ", n = 2 k = 2: " << two.dims[2] << " by both methods vs closed form " << two.series_dims[2]
      << (flagged ? " (flagged)" : "");
    return {first && methods && series && flagged, d.str()};
}

Outcome parametrization_round_trip()
{
    const auto s = VariableSpace::symplectic(2);
    RationalSampler rs(808);
    int good = 0;
    for (int t = 0; t < 50; ++t) {
        const FormJet w = random_closed_form(rs, s, 3);
        const auto param = parametrize_symplectic_form(SymplecticFormJet(w));
        const FormJet rebuilt = parametrized_form(param.q_bar, param.p_bar);
        bool ok = param.certification.ok && param.certification.residual.is_zero() && equal_to_order(rebuilt, w, 3);
        for (unsigned i = 1; i <= 2; ++i) {
            ok = ok && ideal_membership(param.q_bar[i - 1], IdealSpec::omega(s, 2 * i - 1));
            if (i >= 2) {
                ok = ok && ideal_membership(param.p_bar[i - 1], IdealSpec::omega(s, 2 * i - 2));
            }
        }
        good += ok;
    }
    return {good == 50, count_line(good, 50, "forms (n = 2, N = 4) rebuilt exactly with ideal memberships")};
}

Outcome calculus_laws()
{
    RationalSampler rs(909);
    int dd = 0, functorial = 0, antideriv = 0, jacobi = 0;
    for (int t = 0; t < 200; ++t) {
        const auto s = VariableSpace::symplectic(t % 2 == 0 ? 1 : 2);
        const FormJet a = random_form(rs, s, 1, 4);
        dd += exterior_derivative(exterior_derivative(a)).is_zero() &&
              exterior_derivative(FormJet::differential(random_jet(rs, s, 4, 0))).is_zero();

        const MapJet m1 = random_diffeo(rs, s, 4), m2 = random_diffeo(rs, s, 4);
        const FormJet b = random_form(rs, s, 2, 3);
        functorial += same(pullback(compose_maps(m1, m2), b), pullback(m2, pullback(m1, b)));

        std::vector<Jet> vc;
        for (std::size_t i = 0; i < s.dim(); ++i) {
            vc.push_back(random_jet(rs, s, 3, 0, 2));
        }
        const VectorFieldJet v(vc);
        const FormJet a3 = random_form(rs, s, 1, 3);
        const FormJet lhs = contract(v, wedge(a3, b));
        const FormJet rhs = wedge(contract(v, a3), b) - wedge(a3, contract(v, b));
        antideriv += same(lhs, rhs);

        const FormJet omega = random_closed_form(rs, s, 4);
        const Jet f = random_jet(rs, s, 4, 1), g = random_jet(rs, s, 4, 1), h = random_jet(rs, s, 4, 1);
        const Jet sum = poisson_bracket(f, poisson_bracket(g, h, omega), omega) +
                        poisson_bracket(g, poisson_bracket(h, f, omega), omega) +
                        poisson_bracket(h, poisson_bracket(f, g, omega), omega);
        jacobi += sum.is_zero() && sum.order() >= 2;
    }
    std::ostringstream d;
    d << "d^2 = 0 " << dd << "/200, pullback functoriality " << functorial << "/200, contraction antiderivation "
      << antideriv << "/200, Jacobi " << jacobi << "/200";
    return {dd == 200 && functorial == 200 && antideriv == 200 && jacobi == 200, d.str()};
}

} // namespace

std::string format_result(const CriterionResult &r)
{
    char timing[64];
    std::snprintf(timing, sizeof timing, " (%.1f s, limit %.0f s)", r.seconds, r.limit_seconds);
    return std::string(r.pass ? "PASS" : "FAIL") + "  " + std::to_string(r.id) + "  " + r.title + ": " + r.detail +
           timing;
}

std::vector<CriterionResult> run_acceptance(const std::function<void(const CriterionResult &)> &on_result)
{
    struct Entry {
        const char *title;
        double limit;
        Outcome (*run)();
    };
    const Entry entries[] = {
        {"Darboux certification", 30, darboux_certification},
        {"diffeo normal form round trip", 120, diffeo_round_trip},
        {"diffeo normal form separates orbits", 30, diffeo_separation},
        {"pair normal form worked example", 10, pair_worked_example},
        {"pair normal form invariance", 120, pair_invariance},
        {"planar case", 30, planar_case},
        {"moduli dimensions", 60, moduli_dimensions},
        {"form parametrization round trip", 60, parametrization_round_trip},
        {"calculus laws", 60, calculus_laws},
    };
    std::vector<CriterionResult> out;
    unsigned id = 0;
    for (const auto &e : entries) {
        CriterionResult r;
        r.id = ++id;
        r.title = e.title;
        r.limit_seconds = e.limit;
        const auto start = std::chrono::steady_clock::now();
        try {
            const Outcome o = e.run();
            r.pass = o.pass;
            r.detail = o.detail;
        } catch (const std::exception &ex) {
            r.pass = false;
            r.detail = std::string("exception: ") + ex.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (r.seconds > r.limit_seconds) {
            r.pass = false;
            r.detail += "; over the time limit";
        }
        if (on_result) {
            on_result(r);
        }
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace sympjet
