#include <sympjet/normal_forms.hpp>

#include <sympjet/linalg.hpp>

#include <algorithm>
#include <functional>

namespace sympjet
{

namespace
{

void require_pair_space(const VariableSpace &s, const char *where)
{
    if (s.kind() != SpaceKind::Symplectic || s.n() == 0) {
        fail(ErrorKind::SpaceMismatch, std::string(where) + " needs a symplectic space, got " + s.name());
    }
}

// Identity on the first `fixed` variables of `outer`, inner map on the rest.
MapJet extend_tail(const MapJet &inner, const VariableSpace &outer, std::size_t fixed, unsigned order)
{
    std::vector<int> placement;
    for (std::size_t k = 0; k < inner.source().dim(); ++k) {
        placement.push_back(static_cast<int>(k + fixed));
    }
    std::vector<Jet> comps;
    for (std::size_t k = 0; k < fixed; ++k) {
        comps.push_back(Jet::variable(outer, order, k));
    }
    for (const auto &c : inner.components()) {
        comps.push_back(remap_variables(c, outer, placement).truncated(order));
    }
    return MapJet(outer, std::move(comps));
}

// Restriction to the coordinates after the first `fixed` ones.
Jet restrict_tail(const Jet &f, const VariableSpace &sub, std::size_t fixed)
{
    std::vector<int> placement;
    for (std::size_t k = 0; k < f.nvars(); ++k) {
        placement.push_back(k < fixed ? -1 : static_cast<int>(k - fixed));
    }
    return remap_variables(f, sub, placement);
}

} // namespace

PairStraightening straighten_pair(const Jet &p, const Jet &q)
{
    const VariableSpace s = p.space();
    require_pair_space(s, "straighten_pair");
    if (q.space() != s) {
        fail(ErrorKind::SpaceMismatch, "straighten_pair: P and Q live on different spaces");
    }
    const unsigned order = std::min(p.order(), q.order());
    if (order == 0) {
        fail(ErrorKind::CertificationFailure, "straighten_pair at order 0");
    }
    PairStraightening res;
    res.normalizer = straighten_pair(standard_form(s, order - 1), p, q);
    res.p = jet_compose(p, res.normalizer);
    res.q = jet_compose(q, res.normalizer);
    return res;
}

bool isotropy_shape_check(const MapJet &psi)
{
    const VariableSpace s = psi.source();
    if (psi.target() != s || s.kind() != SpaceKind::Symplectic || s.n() == 0) {
        return false;
    }
    const unsigned order = psi.order();
    if (!(psi[0] == Jet::variable(s, order, 0)) || !(psi[1] == Jet::variable(s, order, 1))) {
        return false;
    }
    const VariableSpace sub = VariableSpace::symplectic(s.n() - 1);
    std::vector<Jet> rest;
    for (std::size_t k = 2; k < s.dim(); ++k) {
        if (depends_on(psi[k], 0) || depends_on(psi[k], 1)) {
            return false;
        }
        rest.push_back(restrict_tail(psi[k], sub, 2));
    }
    if (sub.dim() == 0 || order == 0) {
        return true;
    }
    const MapJet b(sub, std::move(rest));
    return is_symplectomorphism(b, standard_form(sub, order - 1)).ok;
}

bool Relabeling::is_identity() const
{
    for (std::size_t i = 0; i < target_pairs.size(); ++i) {
        if (target_pairs[i] != i || source_pairs[i] != i || twisted[i]) {
            return false;
        }
    }
    for (std::size_t k = 0; k < target_components.size(); ++k) {
        if (target_components[k] != k) {
            return false;
        }
    }
    return true;
}

RenumerateResult renumerate(const MapJet &phi)
{
    const VariableSpace s = phi.source();
    require_pair_space(s, "renumerate");
    if (phi.target() != s) {
        fail(ErrorKind::SpaceMismatch, "renumerate needs a self-map");
    }
    const RationalMatrix a = phi.linear_part();
    if (is_zero(determinant(a))) {
        fail(ErrorKind::SingularLinearPart, "renumerate: linear part is not invertible");
    }
    const std::size_t n = s.n();
    std::vector<std::size_t> sigma(n), pi(n);
    std::vector<bool> tw(n), used_t(n), used_s(n);

    // Pair i of the result: P = Phi_{sigma(i)} o S, Q likewise; its diagonal
    // entries depend only on (sigma(i), pi(i), twist(i)).
    std::function<bool(std::size_t)> search = [&](std::size_t i) {
        if (i == n) {
            return true;
        }
        for (std::size_t t = 0; t < n; ++t) {
            if (used_t[t]) {
                continue;
            }
            for (std::size_t src = 0; src < n; ++src) {
                if (used_s[src]) {
                    continue;
                }
                for (int twist = 0; twist < 2; ++twist) {
                    const Rational dp = twist ? a[2 * t][2 * src + 1] : a[2 * t][2 * src];
                    const Rational dq = twist ? a[2 * t + 1][2 * src] : a[2 * t + 1][2 * src + 1];
                    if (is_zero(dp) || is_zero(dq)) {
                        continue;
                    }
                    sigma[i] = t;
                    pi[i] = src;
                    tw[i] = twist != 0;
                    used_t[t] = used_s[src] = true;
                    if (search(i + 1)) {
                        return true;
                    }
                    used_t[t] = used_s[src] = false;
                }
            }
        }
        return false;
    };
    // The target carries no structure, so when no pair relabeling works the
    // target components may be permuted freely; det != 0 guarantees a
    // permutation with nonzero diagonal.
    std::vector<std::size_t> free_perm(2 * n);
    std::vector<bool> used_row(2 * n);
    std::function<bool(std::size_t)> search_free = [&](std::size_t col) {
        if (col == 2 * n) {
            return true;
        }
        for (std::size_t row = 0; row < 2 * n; ++row) {
            if (used_row[row] || is_zero(a[row][col])) {
                continue;
            }
            free_perm[col] = row;
            used_row[row] = true;
            if (search_free(col + 1)) {
                return true;
            }
            used_row[row] = false;
        }
        return false;
    };
    std::vector<std::size_t> target_components;
    if (search(0)) {
        for (std::size_t i = 0; i < n; ++i) {
            target_components.push_back(2 * sigma[i]);
            target_components.push_back(2 * sigma[i] + 1);
        }
    } else if (search_free(0)) {
        target_components = free_perm;
        for (std::size_t i = 0; i < n; ++i) {
            sigma[i] = pi[i] = i;
            tw[i] = false;
        }
    } else {
        fail(ErrorKind::PivotFailure, "no relabeling makes the diagonal of the linear part nonzero");
    }

    RationalMatrix sm = zero_matrix(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        if (tw[i]) {
            sm[2 * pi[i]][2 * i + 1] = -1;
            sm[2 * pi[i] + 1][2 * i] = 1;
        } else {
            sm[2 * pi[i]][2 * i] = 1;
            sm[2 * pi[i] + 1][2 * i + 1] = 1;
        }
    }
    RenumerateResult res;
    res.relabeling.target_pairs = sigma;
    res.relabeling.target_components = target_components;
    res.relabeling.source_pairs = pi;
    res.relabeling.twisted = tw;
    res.relabeling.source_map = MapJet::linear(s, s, sm, phi.order());
    std::vector<Jet> comps;
    for (const std::size_t k : target_components) {
        comps.push_back(jet_compose(phi[k], res.relabeling.source_map));
    }
    res.map = MapJet(s, std::move(comps));
    return res;
}

std::vector<Jet> ideal_split(const Jet &f, const IdealSpec &ideal)
{
    const auto &gens = ideal.generators();
    if (f.order() == 0) {
        fail(ErrorKind::CertificationFailure, "ideal_split of an order-0 jet");
    }
    std::vector<Jet> parts(gens.size(), Jet(f.space(), f.order() - 1));
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (is_zero(f.coeff(i))) {
            continue;
        }
        std::vector<unsigned> exps(f.nvars());
        for (std::size_t v = 0; v < f.nvars(); ++v) {
            exps[v] = f.table().exponent(i, v);
        }
        bool placed = false;
        for (std::size_t g = 0; g < gens.size() && !placed; ++g) {
            if (exps[gens[g]] > 0) {
                --exps[gens[g]];
                parts[g].set_coefficient(exps, f.coeff(i));
                placed = true;
            }
        }
        if (!placed) {
            fail(ErrorKind::CertificationFailure, "ideal_split: jet is not in the ideal");
        }
    }
    return parts;
}

DiffeoNormalForm normalize_diffeo_core(const MapJet &phi)
{
    const VariableSpace s = phi.source();
    require_pair_space(s, "normalize_diffeo");
    if (phi.target() != s) {
        fail(ErrorKind::SpaceMismatch, "the diffeo normal form needs a self-map");
    }
    if (!phi.is_origin_preserving()) {
        fail(ErrorKind::NonOriginPreserving, "diffeo normal form: map moves the origin");
    }
    const unsigned order = phi.order();
    const std::size_t n = s.n();
    DiffeoNormalForm nf;
    MapJet cur = phi;
    MapJet total = MapJet::identity(s, order);
    for (std::size_t i = 1; i <= n; ++i) {
        const std::size_t fixed = 2 * (i - 1);
        const VariableSpace sub = VariableSpace::symplectic(n - i + 1);
        const Jet pr = restrict_tail(cur[fixed], sub, fixed);
        const Jet qr = restrict_tail(cur[fixed + 1], sub, fixed);
        const PairStraightening step = straighten_pair(pr, qr);
        if (i > 1) {
            // The step seen one level up fixes (p_{i-1}, q_{i-1}).
            const VariableSpace up = VariableSpace::symplectic(n - i + 2);
            nf.isotropy_steps_ok = nf.isotropy_steps_ok && isotropy_shape_check(extend_tail(step.normalizer, up, 2, order));
        }
        const MapJet ext = extend_tail(step.normalizer, s, fixed, order);
        cur = compose_maps(cur, ext);
        total = compose_maps(total, ext);
    }
    nf.normalizer = total;
    nf.normalized = cur;
    nf.certified_order = order;
    if (!(cur[0] == Jet::variable(s, order, 0))) {
        fail(ErrorKind::CertificationFailure, "diffeo normal form: first component is not p1");
    }
    for (std::size_t i = 1; i <= n; ++i) {
        const Jet qt = cur[2 * i - 1];
        const Jet pt = i == 1 ? Jet(s, order) : cur[2 * i - 2] - Jet::variable(s, order, 2 * i - 2);
        const IdealSpec iq = IdealSpec::omega(s, static_cast<unsigned>(2 * i - 1));
        if (!ideal_membership(qt, iq) || is_zero(qt.linear_coeff(2 * i - 1))) {
            fail(ErrorKind::CertificationFailure, "diffeo normal form: Q_" + std::to_string(i) + " has the wrong shape");
        }
        nf.q_tilde.push_back(qt);
        nf.q_split.push_back(ideal_split(qt, iq));
        if (i == 1) {
            nf.p_tilde.push_back(pt);
            nf.p_split.emplace_back();
        } else {
            const IdealSpec ip = IdealSpec::omega(s, static_cast<unsigned>(2 * i - 2));
            if (!ideal_membership(pt, ip)) {
                fail(ErrorKind::CertificationFailure, "diffeo normal form: P_" + std::to_string(i) + " has the wrong shape");
            }
            nf.p_tilde.push_back(pt);
            nf.p_split.push_back(ideal_split(pt, ip));
        }
    }
    nf.certification = is_symplectomorphism(total, standard_form(s, order - 1));
    return nf;
}

DiffeoNormalForm normalize_diffeo(const MapJet &phi)
{
    // The diagonal conditions are only a convenient sufficient condition;
    // when the recursion already works in the given labels, keep them so that
    // the invariants refer to the caller's target order.
    try {
        DiffeoNormalForm nf = normalize_diffeo_core(phi);
        nf.relabeling = renumerate(MapJet::identity(phi.source(), phi.order())).relabeling;
        return nf;
    } catch (const Error &e) {
        if (e.kind() != ErrorKind::TransversalityFailure && e.kind() != ErrorKind::PivotFailure) {
            throw;
        }
    }
    const RenumerateResult rn = renumerate(phi);
    DiffeoNormalForm nf = normalize_diffeo_core(rn.map);
    nf.relabeling = rn.relabeling;
    if (!rn.relabeling.is_identity()) {
        nf.normalizer = compose_maps(rn.relabeling.source_map, nf.normalizer);
        nf.certification = is_symplectomorphism(nf.normalizer, standard_form(phi.source(), nf.certified_order - 1));
    }
    return nf;
}

FormJet parametrized_form(const std::vector<Jet> &q_bar, const std::vector<Jet> &p_bar)
{
    if (q_bar.empty() || q_bar.size() != p_bar.size()) {
        fail(ErrorKind::SpaceMismatch, "parametrized_form needs n functions Q and n functions P");
    }
    const VariableSpace s = q_bar[0].space();
    FormJet w;
    for (std::size_t i = 0; i < q_bar.size(); ++i) {
        const Jet pi = Jet::variable(s, p_bar[i].order(), 2 * i) + p_bar[i];
        const FormJet term = wedge(FormJet::differential(pi), FormJet::differential(q_bar[i]));
        if (i == 0) {
            w = term;
        } else {
            w += term;
        }
    }
    return w;
}

SymplecticParam parametrize_symplectic_form(const SymplecticFormJet &omega)
{
    const FormJet &w = omega.form();
    const VariableSpace s = w.space();
    require_pair_space(s, "parametrize_symplectic_form");
    const MapJet d = darboux_reduce(omega);
    const DiffeoNormalForm nf = normalize_diffeo_core(d);
    const MapJet g = map_invert(nf.normalized);
    SymplecticParam res;
    const unsigned order = g.order();
    for (std::size_t i = 1; i <= s.n(); ++i) {
        const Jet qb = g[2 * i - 1];
        const Jet pb = g[2 * i - 2] - Jet::variable(s, order, 2 * i - 2);
        if (!ideal_membership(qb, IdealSpec::omega(s, static_cast<unsigned>(2 * i - 1))) ||
            (i > 1 && !ideal_membership(pb, IdealSpec::omega(s, static_cast<unsigned>(2 * i - 2)))) ||
            (i == 1 && !pb.is_zero())) {
            fail(ErrorKind::CertificationFailure, "form parametrization: inverse map is not normal-shaped");
        }
        res.q_bar.push_back(qb);
        res.p_bar.push_back(pb);
    }
    res.reconstruction = parametrized_form(res.q_bar, res.p_bar);
    res.certification.residual = res.reconstruction - w;
    res.certification.certified_order = res.certification.residual.order();
    res.certification.ok = res.certification.residual.is_zero();
    return res;
}

} // namespace sympjet
