#include <sympjet/normal_forms.hpp>

#include <sympjet/linalg.hpp>

#include <algorithm>

namespace sympjet
{

namespace
{

// Sum of the monomials of f whose degree in the variables other than x is j.
Jet other_degree_part(const Jet &f, std::size_t x, unsigned j)
{
    Jet r(f.space(), f.order());
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!is_zero(f.coeff(i)) && f.table().degree(i) - f.table().exponent(i, x) == j) {
            r.coeff(i) = f.coeff(i);
        }
    }
    return r;
}

// Monomials with x-exponent exactly k (k < 0: at least -k), divided by x^|k|.
Jet x_slice(const Jet &f, std::size_t x, int k, unsigned order)
{
    Jet r(f.space(), order);
    const unsigned shift = static_cast<unsigned>(k < 0 ? -k : k);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const unsigned e = f.table().exponent(i, x);
        if (is_zero(f.coeff(i)) || (k >= 0 && e != shift) || (k < 0 && e < shift)) {
            continue;
        }
        if (f.table().degree(i) - shift > order) {
            continue;
        }
        std::vector<unsigned> exps(f.nvars());
        for (std::size_t v = 0; v < f.nvars(); ++v) {
            exps[v] = f.table().exponent(i, v);
        }
        exps[x] -= shift;
        r.set_coefficient(exps, f.coeff(i));
    }
    return r;
}

Jet reciprocal(const Jet &u)
{
    const Rational c = u.constant_term();
    if (is_zero(c)) {
        fail(ErrorKind::SingularAtOrigin, "reciprocal of a jet vanishing at the origin");
    }
    const Jet one = Jet::constant(u.space(), u.order(), 1);
    const Jet e = u * (1 / c) - one;
    Jet r = one;
    for (unsigned k = 0; k < u.order(); ++k) {
        r = one - (e * r).truncated(u.order());
    }
    return r * (1 / c);
}

Jet y_power_sum(const std::vector<Jet> &coeffs, const Jet &y, std::size_t from)
{
    Jet acc(y.space(), y.order());
    Jet pw = Jet::constant(y.space(), y.order(), 1);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (k >= from) {
            acc += (coeffs[k] * pw);
            pw = pw * y;
        }
    }
    return acc;
}

std::vector<int> drop_first(std::size_t dim)
{
    std::vector<int> placement{-1};
    for (std::size_t k = 1; k < dim; ++k) {
        placement.push_back(static_cast<int>(k - 1));
    }
    return placement;
}

// Map on `outer` = (x, inner(rest)).
MapJet extend_fixing_first(const MapJet &inner, const VariableSpace &outer, unsigned order)
{
    std::vector<int> placement;
    for (std::size_t k = 0; k < inner.source().dim(); ++k) {
        placement.push_back(static_cast<int>(k + 1));
    }
    std::vector<Jet> comps{Jet::variable(outer, order, 0)};
    for (const auto &c : inner.components()) {
        comps.push_back(remap_variables(c, outer, placement).truncated(order));
    }
    return MapJet(outer, std::move(comps));
}

} // namespace

GlancingReport check_glancing(const Jet &f, const Jet &h)
{
    const VariableSpace s = f.space();
    if (s.kind() != SpaceKind::Constrained || h.space() != s) {
        fail(ErrorKind::SpaceMismatch, "check_glancing needs f and h on a constrained space");
    }
    const unsigned order = std::min(f.order(), h.order());
    if (order < 3) {
        fail(ErrorKind::CertificationFailure, "check_glancing needs jets of order at least 3");
    }
    const FormJet w = standard_form(s, order - 1);
    GlancingReport rep;
    const Jet fh = poisson_bracket(f, h, w);
    rep.fh = fh.constant_term();
    rep.f_fh = poisson_bracket(f, fh, w).constant_term();
    rep.h_fh = poisson_bracket(h, fh, w).constant_term();
    rep.wedge_nonzero = !wedge(FormJet::differential(f), FormJet::differential(h)).truncated(0).is_zero();
    // In the plane {f,h}(0) = 0 forces dh(0) to be a multiple of df(0), so
    // the wedge condition only applies from dimension 4 on.
    rep.in_s1 = is_zero(rep.fh) && !is_zero(rep.f_fh) && !is_zero(rep.h_fh) && (rep.wedge_nonzero || s.n() == 0);
    return rep;
}

namespace
{

// Division of h read as a polynomial; every output is exact for that
// polynomial to the order of h (minus the degree it is multiplied by).
WeierstrassResult divide_quadratic(const Jet &h, std::size_t x)
{
    const VariableSpace s = h.space();
    const unsigned order = h.order();
    if (x >= s.dim() || order < 2) {
        fail(ErrorKind::SpaceMismatch, "weierstrass_quadratic: bad variable or order");
    }
    std::vector<unsigned> e1(s.dim(), 0), e2(s.dim(), 0);
    e1[x] = 1;
    e2[x] = 2;
    if (!is_zero(h.constant_term()) || !is_zero(h.coefficient(e1)) || is_zero(h.coefficient(e2))) {
        fail(ErrorKind::DegenerateDirection, "weierstrass_quadratic needs h = c x^2 + ... with c != 0");
    }
    const Jet xv = Jet::variable(s, order, x);
    // Solve h = u (x^2 + a x + b) by degree in the other variables:
    // h_j = u_j x^2 + u_0 (a_j x + b_j) + sum_{0<i<j} u_i (a_{j-i} x + b_{j-i}).
    std::vector<Jet> u{x_slice(other_degree_part(h, x, 0), x, -2, order)};
    const Jet u0_inv = reciprocal(u[0]);
    std::vector<Jet> a{Jet(s, order)}, b{Jet(s, order)};
    for (unsigned j = 1; j <= order; ++j) {
        Jet rhs = other_degree_part(h, x, j);
        for (unsigned i = 1; i < j; ++i) {
            rhs -= u[i] * (a[j - i] * xv + b[j - i]);
        }
        const Jet d = other_degree_part(rhs * u0_inv, x, j);
        b.push_back(x_slice(d, x, 0, order));
        a.push_back(x_slice(d, x, 1, order));
        u.push_back(u[0] * x_slice(d, x, -2, order));
    }
    WeierstrassResult res{Jet(s, order), Jet(s, order), Jet(s, order)};
    for (unsigned j = 0; j <= order; ++j) {
        res.unit += u[j];
        res.a += a[j];
        res.b += b[j];
    }
    res.unit = res.unit.truncated(order - 2);
    res.a = res.a.truncated(order - 1);
    return res;
}

} // namespace

WeierstrassResult weierstrass_quadratic(const Jet &h, std::size_t x)
{
    // With x of weight 1 and the other variables of weight 2, an N-jet fixes h
    // up to weight N, which fixes b to degree N/2, a to (N-1)/2 and u to (N-2)/2.
    WeierstrassResult res = divide_quadratic(h, x);
    const unsigned order = h.order();
    res.unit = res.unit.truncated((order - 2) / 2);
    res.a = res.a.truncated((order - 1) / 2);
    res.b = res.b.truncated(order / 2);
    return res;
}

PairNormalForm normalize_quasi_pair(const Jet &f, const Jet &g)
{
    const VariableSpace w = f.space();
    if (w.kind() != SpaceKind::Quasi || g.space() != w) {
        fail(ErrorKind::SpaceMismatch, "normalize_quasi_pair needs f and g on a quasi space");
    }
    const unsigned n = w.n();
    const unsigned order = std::min(f.order(), g.order());
    if (order < 2 * n + 1) {
        fail(ErrorKind::CertificationFailure, "normalize_quasi_pair needs order at least 2n + 1");
    }
    if (!is_zero(f.constant_term()) || !is_zero(g.constant_term())) {
        fail(ErrorKind::NonOriginPreserving, "normalize_quasi_pair: f and g must vanish at the origin");
    }
    if (is_zero(f.linear_coeff(0))) {
        fail(ErrorKind::TransversalityFailure, "df does not see the kernel direction: df/dy(0) = 0");
    }
    const Jet y = Jet::variable(w, order, 0);

    // f -> y by a change of y alone, which preserves sum dp^dq.
    std::vector<Jet> m0c{implicit_solve(f.truncated(order), y, 0)};
    for (std::size_t k = 1; k < w.dim(); ++k) {
        m0c.push_back(Jet::variable(w, order, k));
    }
    const MapJet m0(w, std::move(m0c));
    const Jet g1 = jet_compose(g.truncated(order), m0);

    std::vector<std::size_t> pq;
    for (std::size_t k = 1; k < w.dim(); ++k) {
        pq.push_back(k);
    }
    PairNormalForm nf;
    nf.r = substitute_zero(g1, pq);
    if (is_zero(nf.r.linear_coeff(0))) {
        fail(ErrorKind::TransversalityFailure, "dg/dy(0) = 0 after normalizing f");
    }
    nf.normalized_f = y;
    nf.notes.push_back("odd powers y^{2i-1} carry Q_i for i = 1..n");

    if (n == 0) {
        nf.normalizer = m0;
        nf.g = g1;
        nf.phi = Jet(w, order);
        nf.normalized_h = g1;
        nf.certified_order = order;
        nf.certification = check_pullback(m0, standard_form(w, order - 1), standard_form(w, order - 1));
        return nf;
    }

    const auto coeffs = coefficient_expansion(g1 - nf.r, 0);
    const VariableSpace t = VariableSpace::symplectic(n);
    const unsigned t_order = order - (2 * n - 1);
    const auto placement = drop_first(w.dim());
    std::vector<Jet> comps;
    for (unsigned k = 0; k < 2 * n; ++k) {
        comps.push_back(remap_variables(coeffs[k], t, placement).truncated(t_order));
    }
    const MapJet big_phi(t, std::move(comps));
    if (is_zero(determinant(big_phi.linear_part()))) {
        fail(ErrorKind::GenericityViolation, "dP1^dQ1^...^dQn(0) = 0: the pair is outside the generic set");
    }
    try {
        nf.inner = normalize_diffeo_core(big_phi);
    } catch (const Error &e) {
        if (e.kind() == ErrorKind::TransversalityFailure || e.kind() == ErrorKind::PivotFailure) {
            fail(ErrorKind::GenericityViolation, std::string("coefficient map fails a diffeo normal form hypothesis: ") + e.what());
        }
        throw;
    }
    nf.q_tilde = nf.inner.q_tilde;
    nf.p_tilde = nf.inner.p_tilde;

    const MapJet ext = extend_fixing_first(nf.inner.normalizer, w, order);
    nf.normalizer = compose_maps(m0, ext);
    // Composing coefficient by coefficient keeps the y^k part to order N - k, which a single
    // composition with the shorter inner normalizer would lose.
    std::vector<Jet> ncoeffs;
    unsigned g_order = order;
    for (unsigned k = 0; k < coeffs.size(); ++k) {
        ncoeffs.push_back(jet_compose(coeffs[k], ext));
        g_order = std::min(g_order, ncoeffs.back().order() + k);
    }
    nf.g = (nf.r + y_power_sum(ncoeffs, y, 0)).truncated(g_order);
    nf.phi = y_power_sum(ncoeffs, y.truncated(order - 2 * n), 2 * n);
    nf.normalized_h = nf.g;
    nf.certified_order = std::min(nf.phi.order(), nf.inner.certified_order);
    for (unsigned k = 0; k < 2 * n; ++k) {
        const Jet expected = remap_variables(nf.inner.normalized[k], w, [&] {
            std::vector<int> back;
            for (std::size_t v = 0; v < t.dim(); ++v) {
                back.push_back(static_cast<int>(v + 1));
            }
            return back;
        }());
        const unsigned o = std::min(expected.order(), ncoeffs[k].order());
        if (!equal_to_order(expected, ncoeffs[k], o)) {
            fail(ErrorKind::CertificationFailure, "quasi pair normal form: normalized coefficients disagree with the diffeo normal form");
        }
    }
    nf.certification = check_pullback(nf.normalizer, standard_form(w, order - 1), standard_form(w, order - 1));
    if (!equal_to_order(jet_compose(f.truncated(order), nf.normalizer), y, nf.normalizer.order())) {
        fail(ErrorKind::CertificationFailure, "quasi pair normal form: f does not pull back to y");
    }
    return nf;
}

PairNormalForm normalize_glancing_pair(const Jet &f, const Jet &h)
{
    const VariableSpace c = f.space();
    const GlancingReport gl = check_glancing(f, h);
    if (!gl.in_s1) {
        fail(ErrorKind::NotGlancing, "glancing conditions fail: {f,h}(0) = " + to_string(gl.fh) + ", {f,{f,h}}(0) = " +
                                         to_string(gl.f_fh) + ", {h,{f,h}}(0) = " + to_string(gl.h_fh) +
                                         (gl.wedge_nonzero ? "" : ", df^dh(0) = 0"));
    }
    const unsigned order = std::min(f.order(), h.order());
    const std::size_t n = c.n();
    // The Weierstrass data of an N-jet is only fixed up to weighted degree N with x of weight 1 and the
    // other variables of weight 2, so g is determined to degree N / 2 and no further.
    const unsigned determined = order / 2;
    if (order < 2 * n + 3 || determined < 2 * n + 1) {
        fail(ErrorKind::CertificationFailure, "normalize_glancing_pair needs order at least max(2n + 3, 4n + 2)");
    }
    const FormJet wplus = standard_form(c, order - 1);

    // Flow box for Z_f with the flow coordinate placed first.
    const VectorFieldJet zf = hamiltonian_vf(f, wplus);
    std::size_t axis = 0;
    while (axis < c.dim() && is_zero(zf[axis].constant_term())) {
        ++axis;
    }
    const MapJet r = rectify(zf, axis);
    std::vector<Jet> swap;
    for (std::size_t k = 0; k < c.dim(); ++k) {
        const std::size_t src = k == 0 ? axis : (k == axis ? 0 : k);
        swap.push_back(Jet::variable(c, order, src));
    }
    const MapJet phi1 = compose_maps(r, MapJet(c, std::move(swap))).truncated(order);
    const Jet f1 = jet_compose(f, phi1);
    const Jet h1 = jet_compose(h, phi1);
    if (depends_on(f1, 0)) {
        fail(ErrorKind::CertificationFailure, "pair normal form: f is not invariant along its own flow");
    }
    const Jet xv = Jet::variable(c, order, 0);
    const FormJet dxdf = wedge(FormJet::differential(xv), FormJet::differential(f1));
    const FormJet rest = pullback(phi1, wplus) - dxdf;

    // H = {x^2 + a x + b = 0}; completing the square moves C_{f,h} to {x = 0}.
    // The exact division of the given polynomial; the invariants derived from it are
    // cut to the determined order below.
    const WeierstrassResult wr = divide_quadratic(h1, 0);
    const Jet half_a = wr.a * Rational(1, 2);
    std::vector<Jet> shift{xv.truncated(half_a.order()) - half_a};
    for (std::size_t k = 1; k < c.dim(); ++k) {
        shift.push_back(Jet::variable(c, half_a.order(), k));
    }
    const MapJet sh(c, std::move(shift));
    const FormJet rest2 = rest - wedge(FormJet::differential(half_a), FormJet::differential(f1));
    const Jet g = wr.b - half_a * half_a;

    const VariableSpace w = VariableSpace::quasi(static_cast<unsigned>(n));
    const auto placement = drop_first(c.dim());
    for (const auto &[idx, coeff] : rest2.terms()) {
        if (idx[0] == 0 || depends_on(coeff, 0)) {
            fail(ErrorKind::CertificationFailure, "pair normal form: reduced form still involves x");
        }
    }
    const FormJet rest_w = remap_form(rest2, w, placement);
    const Jet f_w = remap_variables(f1, w, placement);
    const MapJet a = quasi_darboux(QuasiSymplecticFormJet(rest_w), f_w);
    const Jet g_w = jet_compose(remap_variables(g, w, placement), a).truncated(determined);

    PairNormalForm nf = normalize_quasi_pair(Jet::variable(w, a.order(), 0), g_w);
    const MapJet inner = compose_maps(a, nf.normalizer);
    const unsigned out_order = inner.order();
    nf.normalizer = compose_maps(compose_maps(phi1, sh), extend_fixing_first(inner, c, out_order));

    // Residuals against the original data.
    const Jet x_out = Jet::variable(c, out_order, 0);
    const Jet y_out = Jet::variable(c, out_order, 1);
    std::vector<int> up;
    for (std::size_t k = 0; k < w.dim(); ++k) {
        up.push_back(static_cast<int>(k + 1));
    }
    const Jet g_c = remap_variables(nf.g, c, up);
    nf.normalized_f = y_out;
    nf.normalized_h = (x_out * x_out + g_c).truncated(g_c.order());
    nf.certification = is_symplectomorphism(nf.normalizer, standard_form(c, out_order - 1));
    if (!equal_to_order(jet_compose(f, nf.normalizer), y_out, out_order)) {
        fail(ErrorKind::CertificationFailure, "pair normal form: f does not pull back to y");
    }
    const WeierstrassResult check = weierstrass_quadratic(jet_compose(h, nf.normalizer), 0);
    const unsigned go = std::min(check.b.order(), g_c.order());
    if (!check.a.is_zero() || !equal_to_order(check.b, g_c, go)) {
        fail(ErrorKind::CertificationFailure, "pair normal form: H does not pull back to {x^2 + g = 0}");
    }
    nf.notes.push_back("C_{f,h} = {x = 0} on H after normalization");
    return nf;
}

FlattenedTripleForm derive_flattened_triple_form(const PairNormalForm &nf)
{
    const VariableSpace w = nf.g.space();
    if (w.kind() != SpaceKind::Quasi) {
        fail(ErrorKind::SpaceMismatch, "derive_flattened_triple_form needs quasi-level data");
    }
    const unsigned n = w.n();
    const unsigned order = nf.g.order();
    const Jet y = Jet::variable(w, order, 0);
    // y-hat = g(y, p, q); solve back for y as a function of (y-hat, p, q).
    const Jet big_y = implicit_solve(nf.g, y, 0);
    std::vector<std::size_t> pq;
    for (std::size_t k = 1; k < w.dim(); ++k) {
        pq.push_back(k);
    }
    FlattenedTripleForm km;
    km.r_hat = substitute_zero(big_y, pq);
    if (is_zero(km.r_hat.linear_coeff(0))) {
        fail(ErrorKind::CertificationFailure, "derive_flattened_triple_form: r_hat has zero derivative");
    }
    if (n == 0) {
        km.f_hat = big_y;
        km.psi = Jet(w, order);
        km.certified_order = order;
        return km;
    }
    const auto e = coefficient_expansion(big_y, 0);
    const auto r_coeffs = coefficient_expansion(km.r_hat, 0);
    const VariableSpace t = VariableSpace::symplectic(n);
    const auto placement = drop_first(w.dim());
    const unsigned t_order = order - (2 * n - 1);
    std::vector<Jet> comps;
    for (unsigned k = 0; k < 2 * n; ++k) {
        comps.push_back(remap_variables(e[k] - r_coeffs[k], t, placement).truncated(t_order));
    }
    const MapJet coords(t, std::move(comps));
    const MapJet back = map_invert(coords);
    km.coordinates = coords;
    km.omega_tilde = pullback(back, standard_form(t, t_order - 1));
    const MapJet ext = extend_fixing_first(back, w, t_order);
    km.f_hat = jet_compose(big_y.truncated(t_order), ext);
    const auto fc = coefficient_expansion(km.f_hat, 0);
    km.psi = y_power_sum(fc, y.truncated(t_order - 2 * n), 2 * n);
    km.certified_order = std::min(km.psi.order(), km.omega_tilde.order());
    return km;
}

} // namespace sympjet
