#include <sympjet/symplectic.hpp>

#include <sympjet/linalg.hpp>

#include <algorithm>
#include <random>

namespace sympjet
{

namespace
{

RationalMatrix constant_part(const JetMatrix &m)
{
    RationalMatrix r(m.size(), std::vector<Rational>(m.empty() ? 0 : m[0].size()));
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m[i].size(); ++j) {
            r[i][j] = m[i][j].constant_term();
        }
    }
    return r;
}

void require_closed(const FormJet &omega)
{
    if (omega.order() == 0) {
        return;
    }
    if (!exterior_derivative(omega).is_zero()) {
        fail(ErrorKind::NotClosed, "2-form is not closed");
    }
}

void require_two_form(const FormJet &omega)
{
    if (omega.degree() != 2) {
        fail(ErrorKind::SpaceMismatch, "expected a 2-form, got degree " + std::to_string(omega.degree()));
    }
}

// Jet of a polynomial, padded with zeros or truncated to the given order.
Jet at_order(const Jet &f, unsigned order)
{
    if (f.order() >= order) {
        return f.truncated(order);
    }
    Jet r(f.space(), order);
    for (std::size_t i = 0; i < f.size(); ++i) {
        r.coeff(i) = f.coeff(i);
    }
    return r;
}

} // namespace

FormJet standard_form(const VariableSpace &space, unsigned order)
{
    FormJet r(space, 2, order);
    const Jet one = Jet::constant(space, order, 1);
    if (space.kind() == SpaceKind::Constrained) {
        r.add_term({0, 1}, one);
    }
    for (unsigned i = 1; i <= space.n(); ++i) {
        r.add_term({space.p_index(i), space.q_index(i)}, one);
    }
    return r;
}

SymplecticFormJet::SymplecticFormJet(FormJet form) : m_form(std::move(form))
{
    require_two_form(m_form);
    const std::size_t dim = m_form.space().dim();
    if (dim % 2 != 0) {
        fail(ErrorKind::SpaceMismatch, "symplectic form on odd-dimensional space " + m_form.space().name());
    }
    if (rank_bareiss(constant_part(two_form_matrix(m_form))) != dim) {
        fail(ErrorKind::DegenerateForm, "2-form is degenerate at the origin");
    }
    require_closed(m_form);
}

QuasiSymplecticFormJet::QuasiSymplecticFormJet(FormJet form) : m_form(std::move(form))
{
    require_two_form(m_form);
    const std::size_t dim = m_form.space().dim();
    if (dim % 2 != 1) {
        fail(ErrorKind::SpaceMismatch, "quasi-symplectic form on even-dimensional space " + m_form.space().name());
    }
    if (rank_bareiss(constant_part(two_form_matrix(m_form))) != dim - 1) {
        fail(ErrorKind::DegenerateForm, "2-form does not have maximal rank at the origin");
    }
    require_closed(m_form);
}

std::vector<Jet> jet_solve(const JetMatrix &m, const std::vector<Jet> &rhs)
{
    const std::size_t k = m.size();
    if (rhs.size() != k) {
        fail(ErrorKind::SpaceMismatch, "jet_solve: right-hand side has the wrong length");
    }
    if (k == 0) {
        return {};
    }
    const auto inv0 = inverse(constant_part(m));
    if (!inv0) {
        fail(ErrorKind::DegenerateForm, "jet_solve: matrix is singular at the origin");
    }
    const VariableSpace space = rhs[0].space();
    unsigned order = max_jet_order;
    for (const auto &row : m) {
        for (const auto &e : row) {
            order = std::min(order, e.order());
        }
    }
    for (const auto &r : rhs) {
        order = std::min(order, r.order());
    }
    // x = inv0 rhs - E x with E = inv0 m - I, which has no constant part.
    JetMatrix e(k, std::vector<Jet>(k, Jet(space, order)));
    std::vector<Jet> b(k, Jet(space, order));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            const Rational &a = (*inv0)[i][j];
            if (is_zero(a)) {
                continue;
            }
            b[i] += rhs[j].truncated(order) * a;
            for (std::size_t l = 0; l < k; ++l) {
                e[i][l] += m[j][l].truncated(order) * a;
            }
        }
        e[i][i] -= Jet::constant(space, order, 1);
    }
    std::vector<Jet> x = b;
    for (unsigned pass = 0; pass <= order; ++pass) {
        std::vector<Jet> next = b;
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t l = 0; l < k; ++l) {
                if (!e[i][l].is_zero() && !x[l].is_zero()) {
                    next[i] -= (e[i][l] * x[l]).truncated(order);
                }
            }
        }
        if (next == x) {
            break;
        }
        x = std::move(next);
    }
    return x;
}

JetMatrix jet_matrix_inverse(const JetMatrix &m)
{
    const std::size_t k = m.size();
    if (k == 0) {
        return {};
    }
    const VariableSpace space = m[0][0].space();
    unsigned order = max_jet_order;
    for (const auto &row : m) {
        for (const auto &e : row) {
            order = std::min(order, e.order());
        }
    }
    JetMatrix inv(k, std::vector<Jet>(k));
    for (std::size_t col = 0; col < k; ++col) {
        std::vector<Jet> unit;
        for (std::size_t i = 0; i < k; ++i) {
            unit.push_back(Jet::constant(space, order, i == col ? 1 : 0));
        }
        const auto x = jet_solve(m, unit);
        for (std::size_t i = 0; i < k; ++i) {
            inv[i][col] = x[i];
        }
    }
    return inv;
}

VectorFieldJet hamiltonian_vf(const Jet &f, const FormJet &omega)
{
    require_two_form(omega);
    if (f.space() != omega.space()) {
        fail(ErrorKind::SpaceMismatch, "hamiltonian_vf: function and form live on different spaces");
    }
    const auto om = two_form_matrix(omega);
    const std::size_t n = om.size();
    JetMatrix mt(n, std::vector<Jet>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            mt[i][j] = om[j][i];
        }
    }
    std::vector<Jet> grad;
    for (std::size_t j = 0; j < n; ++j) {
        grad.push_back(partial_derivative(f, j));
    }
    return VectorFieldJet(jet_solve(mt, grad));
}

Jet poisson_bracket(const Jet &f, const Jet &g, const FormJet &omega)
{
    return apply(hamiltonian_vf(f, omega), g);
}

CertificationReport check_pullback(const MapJet &m, const FormJet &from, const FormJet &to)
{
    CertificationReport rep;
    const FormJet pulled = pullback(m, from);
    rep.residual = pulled - to;
    rep.certified_order = rep.residual.order();
    rep.ok = rep.residual.is_zero();
    return rep;
}

CertificationReport is_symplectomorphism(const MapJet &m, const FormJet &omega)
{
    if (m.source() != omega.space() || m.target() != omega.space()) {
        fail(ErrorKind::SpaceMismatch, "is_symplectomorphism needs a self-map of the form's space");
    }
    return check_pullback(m, omega, omega);
}

namespace
{

MapJet darboux_impl(const FormJet &omega);
MapJet quasi_impl(const FormJet &omega, const Jet &p);

std::size_t first_nonzero_linear(const Jet &f, std::size_t preferred)
{
    if (preferred < f.nvars() && !is_zero(f.linear_coeff(preferred))) {
        return preferred;
    }
    for (std::size_t j = 0; j < f.nvars(); ++j) {
        if (!is_zero(f.linear_coeff(j))) {
            return j;
        }
    }
    fail(ErrorKind::SingularAtOrigin, "function has vanishing differential at the origin");
}

// Coordinates in which f becomes the coordinate at `slot`: the remaining
// slots take the original variables except one with nonzero df component.
MapJet coordinates_with(const Jet &f, std::size_t slot, unsigned order)
{
    const VariableSpace &s = f.space();
    const std::size_t j = first_nonzero_linear(f, slot);
    std::vector<Jet> comps;
    std::size_t next = 0;
    for (std::size_t k = 0; k < s.dim(); ++k) {
        if (k == slot) {
            comps.push_back(f.truncated(order));
            continue;
        }
        if (next == j) {
            ++next;
        }
        comps.push_back(Jet::variable(s, order, next++));
    }
    return MapJet(s, std::move(comps));
}

// v written in the coordinates y = d(x), as a field in y.
VectorFieldJet field_in_coordinates(const VectorFieldJet &v, const MapJet &d, const MapJet &d_inverse)
{
    std::vector<Jet> comps;
    for (const auto &dk : d.components()) {
        comps.push_back(jet_compose(apply(v, dk), d_inverse));
    }
    return VectorFieldJet(std::move(comps));
}

// The form must neither contain d(x_var) nor depend on x_var.
void require_reduced(const FormJet &a, std::size_t var, const char *where)
{
    for (const auto &[idx, c] : a.terms()) {
        if (std::find(idx.begin(), idx.end(), var) != idx.end() || depends_on(c, var)) {
            fail(ErrorKind::CertificationFailure, std::string(where) + ": reduced form is not basic");
        }
    }
}

// Map on `outer` acting as the identity on `fixed` slots and as `inner` on
// the rest (in increasing order).
MapJet extend_map(const MapJet &inner, const VariableSpace &outer, const std::vector<std::size_t> &fixed,
                  unsigned order)
{
    std::vector<int> placement;
    for (std::size_t k = 0; k < outer.dim(); ++k) {
        if (std::find(fixed.begin(), fixed.end(), k) == fixed.end()) {
            placement.push_back(static_cast<int>(k));
        }
    }
    std::vector<Jet> comps;
    std::size_t next = 0;
    for (std::size_t k = 0; k < outer.dim(); ++k) {
        if (std::find(fixed.begin(), fixed.end(), k) != fixed.end()) {
            comps.push_back(Jet::variable(outer, order, k));
        } else {
            comps.push_back(remap_variables(inner[next++], outer, placement).truncated(order));
        }
    }
    return MapJet(outer, std::move(comps));
}

// Placement dropping `var` and shifting later variables down.
std::vector<int> drop_variable(std::size_t dim, std::size_t var)
{
    std::vector<int> placement;
    for (std::size_t k = 0; k < dim; ++k) {
        placement.push_back(k == var ? -1 : static_cast<int>(k < var ? k : k - 1));
    }
    return placement;
}

MapJet straighten_impl(const FormJet &omega_in, const Jet &p_in, const Jet &q_in)
{
    const VariableSpace s = omega_in.space();
    const std::size_t dim = s.dim();
    if (dim % 2 != 0 || dim == 0) {
        fail(ErrorKind::SpaceMismatch, "pair straightening needs a positive even dimension");
    }
    const unsigned order = std::min({omega_in.order() + 1, p_in.order(), q_in.order()});
    if (order == 0) {
        fail(ErrorKind::CertificationFailure, "pair straightening at order 0");
    }
    if (!is_zero(p_in.constant_term()) || !is_zero(q_in.constant_term())) {
        fail(ErrorKind::NonOriginPreserving, "pair does not vanish at the origin");
    }
    const FormJet omega = omega_in.truncated(order - 1);
    const Jet p = p_in.truncated(order);
    const Jet q = q_in.truncated(order);

    const VectorFieldJet zp = hamiltonian_vf(p, omega);
    if (is_zero(apply(zp, q).constant_term())) {
        fail(ErrorKind::TransversalityFailure, "{P, Q} vanishes at the origin");
    }
    // Flow box for -Z_P in coordinates where Q is the second coordinate:
    // P becomes independent of that coordinate and omega splits off dP ^ dz1.
    const MapJet d = coordinates_with(q, 1, order);
    const MapJet c = map_invert(d);
    const MapJet r = rectify(field_in_coordinates(-zp, d, c), 1);
    const MapJet m1 = compose_maps(c, r).truncated(order);

    const Jet p1 = jet_compose(p, m1);
    if (depends_on(p1, 1)) {
        fail(ErrorKind::CertificationFailure, "P is not invariant along the straightened flow");
    }
    FormJet rest = pullback(m1, omega);
    rest -= wedge(FormJet::differential(p1), FormJet::differential(Jet::variable(s, order, 1)));
    require_reduced(rest, 1, "pair straightening");

    const VariableSpace w = VariableSpace::quasi(dim / 2 - 1);
    const auto placement = drop_variable(dim, 1);
    const MapJet a = quasi_impl(remap_form(rest, w, placement), remap_variables(p1, w, placement));
    return compose_maps(m1, extend_map(a, s, {1}, order));
}

MapJet quasi_impl(const FormJet &omega_in, const Jet &p_in)
{
    const VariableSpace w = omega_in.space();
    const std::size_t dim = w.dim();
    const unsigned order = std::min(omega_in.order() + 1, p_in.order());
    if (order == 0) {
        fail(ErrorKind::CertificationFailure, "quasi-Darboux reduction at order 0");
    }
    if (!is_zero(p_in.constant_term())) {
        fail(ErrorKind::NonOriginPreserving, "function does not vanish at the origin");
    }
    const FormJet omega = omega_in.truncated(order - 1);
    const Jet p = p_in.truncated(order);

    // Kernel field K of omega normalized by dP(K) = 1. Pick rows of
    // omega^T that stay independent of dP at the origin.
    const auto om = two_form_matrix(omega);
    std::vector<Jet> grad;
    for (std::size_t j = 0; j < dim; ++j) {
        grad.push_back(partial_derivative(p, j));
    }
    JetMatrix sys{grad};
    RationalMatrix sys0{constant_part(JetMatrix{grad})[0]};
    RationalMatrix form_rows;
    for (std::size_t i = 0; i < dim && sys.size() < dim; ++i) {
        std::vector<Jet> row;
        std::vector<Rational> row0;
        for (std::size_t j = 0; j < dim; ++j) {
            row.push_back(om[j][i]);
            row0.push_back(om[j][i].constant_term());
        }
        form_rows.push_back(row0);
        sys0.push_back(row0);
        if (rank_bareiss(sys0) == sys0.size()) {
            sys.push_back(row);
        } else {
            sys0.pop_back();
        }
    }
    if (rank_bareiss(form_rows) + 1 < dim) {
        fail(ErrorKind::DegenerateForm, "2-form does not have maximal rank at the origin");
    }
    if (sys.size() < dim) {
        fail(ErrorKind::TransversalityFailure, "dP vanishes on the kernel of the form at the origin");
    }
    std::vector<Jet> rhs;
    for (std::size_t i = 0; i < dim; ++i) {
        rhs.push_back(Jet::constant(w, order - 1, i == 0 ? 1 : 0));
    }
    const VectorFieldJet k(jet_solve(sys, rhs));
    if (!contract(k, omega).is_zero()) {
        fail(ErrorKind::NotClosed, "kernel of the form is not a line field");
    }

    const MapJet d = coordinates_with(p, 0, order);
    const MapJet c = map_invert(d);
    const MapJet r = rectify(field_in_coordinates(k, d, c), 0);
    const MapJet m = compose_maps(c, r).truncated(order);
    const FormJet base = pullback(m, omega);
    require_reduced(base, 0, "quasi-Darboux reduction");

    const VariableSpace b = VariableSpace::symplectic(dim / 2);
    const auto placement = drop_variable(dim, 0);
    const MapJet inner = darboux_impl(remap_form(base, b, placement));
    return compose_maps(m, extend_map(inner, w, {0}, order));
}

MapJet darboux_impl(const FormJet &omega)
{
    const VariableSpace s = omega.space();
    const unsigned order = omega.order() + 1;
    if (s.dim() == 0) {
        return MapJet(s, {});
    }
    const Jet p = Jet::variable(s, order, 0);
    const VectorFieldJet zp = hamiltonian_vf(p, omega);
    std::size_t j = 1;
    if (is_zero(zp[1].constant_term())) {
        for (j = 2; j < s.dim() && is_zero(zp[j].constant_term()); ++j) {
        }
    }
    return straighten_impl(omega, p, Jet::variable(s, order, j));
}

} // namespace

MapJet straighten_pair(const FormJet &omega, const Jet &p, const Jet &q)
{
    require_two_form(omega);
    return straighten_impl(omega, p, q);
}

MapJet darboux_reduce(const SymplecticFormJet &omega)
{
    if (omega.form().order() + 1 > max_jet_order) {
        fail(ErrorKind::SpaceMismatch, "darboux_reduce: order exceeds the supported jet order");
    }
    return darboux_impl(omega.form());
}

MapJet quasi_darboux(const QuasiSymplecticFormJet &omega, const Jet &p)
{
    if (p.space() != omega.form().space()) {
        fail(ErrorKind::SpaceMismatch, "quasi_darboux: function and form live on different spaces");
    }
    return quasi_impl(omega.form(), p);
}

MapJet hamiltonian_flow(const Jet &h_in, unsigned order)
{
    const VariableSpace s = h_in.space();
    const Jet h = at_order(h_in, order + 1);
    for (std::size_t j = 0; j < s.dim(); ++j) {
        if (!is_zero(h.linear_coeff(j))) {
            fail(ErrorKind::NonOriginPreserving, "Hamiltonian with linear terms moves the origin");
        }
    }
    const VectorFieldJet z = hamiltonian_vf(h, standard_form(s, order + 1));
    const unsigned cap = order * static_cast<unsigned>(s.dim()) + 2;
    std::vector<Jet> comps;
    for (std::size_t i = 0; i < s.dim(); ++i) {
        Jet term = Jet::variable(s, order, i);
        Jet acc = term;
        unsigned k = 1;
        for (; k <= cap; ++k) {
            term = apply(z, term).truncated(order);
            if (term.is_zero()) {
                break;
            }
            acc += term * (1 / factorial(k));
        }
        if (k > cap) {
            fail(ErrorKind::DegenerateDirection, "flow series does not terminate; linear part is not nilpotent");
        }
        comps.push_back(at_order(acc, order));
    }
    return MapJet(s, std::move(comps));
}

MapJet random_symplectomorphism(std::uint64_t seed, unsigned max_degree, const VariableSpace &space, unsigned order)
{
    if (space.kind() == SpaceKind::Quasi) {
        fail(ErrorKind::SpaceMismatch, "random_symplectomorphism needs an even-dimensional space");
    }
    if (order == 0 || order >= max_jet_order) {
        fail(ErrorKind::SpaceMismatch, "random_symplectomorphism: unsupported order");
    }
    std::mt19937_64 rng(seed);
    auto pick = [&rng](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
    const std::size_t dim = space.dim();
    const std::size_t pairs = dim / 2;

    // Linear part: scaling times two symmetric shears, in canonical pairs
    // (x_{2i}, x_{2i+1}).
    RationalMatrix lin = identity_matrix(dim);
    for (int shear = 0; shear < 2; ++shear) {
        RationalMatrix a = identity_matrix(dim);
        for (std::size_t i = 0; i < pairs; ++i) {
            for (std::size_t j = i; j < pairs; ++j) {
                const int v = rng() % 3 == 0 ? pick(-2, 2) : 0;
                // shear 0: q += S p; shear 1: p += S q
                const std::size_t row_i = shear == 0 ? 2 * i + 1 : 2 * i;
                const std::size_t col_j = shear == 0 ? 2 * j : 2 * j + 1;
                const std::size_t row_j = shear == 0 ? 2 * j + 1 : 2 * j;
                const std::size_t col_i = shear == 0 ? 2 * i : 2 * i + 1;
                a[row_i][col_j] += v;
                if (i != j) {
                    a[row_j][col_i] += v;
                }
            }
        }
        lin = multiply(a, lin);
    }
    for (std::size_t i = 0; i < pairs; ++i) {
        static const int scales[] = {1, 2, -1, 3, -2};
        Rational sc(scales[rng() % 5]);
        if (rng() % 2 == 0) {
            sc = 1 / sc;
        }
        for (std::size_t j = 0; j < dim; ++j) {
            lin[2 * i][j] *= sc;
            lin[2 * i + 1][j] /= sc;
        }
    }
    MapJet result = MapJet::linear(space, space, lin, order);

    if (max_degree >= 3 && order >= 2) {
        for (int flow = 0; flow < 2; ++flow) {
            Jet h(space, order + 1);
            const int terms = pick(2, 4);
            for (int t = 0; t < terms; ++t) {
                const unsigned deg = static_cast<unsigned>(pick(3, static_cast<int>(std::min(max_degree, order + 1))));
                std::vector<unsigned> exps(dim, 0);
                for (unsigned e = 0; e < deg; ++e) {
                    ++exps[rng() % dim];
                }
                Rational coef(pick(-2, 2));
                coef /= pick(1, 3);
                if (is_zero(coef)) {
                    coef = 1;
                }
                h.set_coefficient(exps, h.coefficient(exps) + coef);
            }
            result = compose_maps(result, hamiltonian_flow(h, order));
        }
    }
    return result;
}

} // namespace sympjet
