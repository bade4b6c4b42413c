#include <sympjet/forms.hpp>

#include <algorithm>
#include <sstream>

namespace sympjet
{

namespace
{

// Sorts idx in place; returns the permutation sign, or 0 on a repeated index.
int normalize_tuple(IndexTuple &idx)
{
    int sign = 1;
    for (std::size_t i = 1; i < idx.size(); ++i) {
        for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
            if (idx[j - 1] == idx[j]) {
                return 0;
            }
            std::swap(idx[j - 1], idx[j]);
            sign = -sign;
        }
    }
    return sign;
}

void check_space(const VariableSpace &a, const VariableSpace &b, const char *op)
{
    if (a != b) {
        fail(ErrorKind::SpaceMismatch, std::string(op) + ": " + a.name() + " vs " + b.name());
    }
}

} // namespace

FormJet::FormJet(VariableSpace space, unsigned degree, unsigned order)
    : m_space(space), m_degree(degree), m_order(order)
{
}

FormJet FormJet::differential(const Jet &f)
{
    if (f.order() == 0) {
        fail(ErrorKind::CertificationFailure, "differential of an order-0 jet");
    }
    FormJet r(f.space(), 1, f.order() - 1);
    for (std::size_t i = 0; i < f.nvars(); ++i) {
        r.add_term({i}, partial_derivative(f, i));
    }
    return r;
}

FormJet FormJet::one_form(const std::vector<Jet> &coeffs)
{
    if (coeffs.empty()) {
        fail(ErrorKind::SpaceMismatch, "one_form needs coefficients");
    }
    unsigned order = max_jet_order;
    for (const auto &c : coeffs) {
        order = std::min(order, c.order());
    }
    FormJet r(coeffs[0].space(), 1, order);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        r.add_term({i}, coeffs[i]);
    }
    return r;
}

FormJet FormJet::zero_form(const Jet &f)
{
    FormJet r(f.space(), 0, f.order());
    r.add_term({}, f);
    return r;
}

Jet FormJet::coefficient(const IndexTuple &idx) const
{
    auto it = m_terms.find(idx);
    if (it == m_terms.end()) {
        return Jet(m_space, m_order);
    }
    return it->second;
}

void FormJet::lower_order(unsigned order)
{
    if (order >= m_order) {
        return;
    }
    m_order = order;
    for (auto &[idx, c] : m_terms) {
        c = c.truncated(order);
    }
}

void FormJet::add_term(IndexTuple idx, const Jet &c)
{
    check_space(m_space, c.space(), "add_term");
    if (idx.size() != m_degree) {
        fail(ErrorKind::SpaceMismatch, "form term of wrong degree");
    }
    for (auto i : idx) {
        if (i >= m_space.dim()) {
            fail(ErrorKind::SpaceMismatch, "form index out of range");
        }
    }
    const int sign = normalize_tuple(idx);
    if (sign == 0) {
        return;
    }
    lower_order(c.order());
    Jet term = c.truncated(m_order);
    if (sign < 0) {
        term = -term;
    }
    auto it = m_terms.find(idx);
    if (it == m_terms.end()) {
        if (!term.is_zero()) {
            m_terms.emplace(std::move(idx), std::move(term));
        }
    } else {
        it->second += term;
        if (it->second.is_zero()) {
            m_terms.erase(it);
        }
    }
}

bool FormJet::is_zero() const
{
    return std::all_of(m_terms.begin(), m_terms.end(), [](const auto &t) { return t.second.is_zero(); });
}

FormJet FormJet::truncated(unsigned order) const
{
    FormJet r = *this;
    r.lower_order(order);
    for (auto it = r.m_terms.begin(); it != r.m_terms.end();) {
        it = it->second.is_zero() ? r.m_terms.erase(it) : std::next(it);
    }
    return r;
}

FormJet &FormJet::operator+=(const FormJet &other)
{
    check_space(m_space, other.m_space, "form add");
    if (m_degree != other.m_degree) {
        fail(ErrorKind::SpaceMismatch, "adding forms of different degree");
    }
    lower_order(other.m_order);
    for (const auto &[idx, c] : other.m_terms) {
        add_term(idx, c);
    }
    return *this;
}

FormJet &FormJet::operator-=(const FormJet &other)
{
    check_space(m_space, other.m_space, "form subtract");
    if (m_degree != other.m_degree) {
        fail(ErrorKind::SpaceMismatch, "subtracting forms of different degree");
    }
    lower_order(other.m_order);
    for (const auto &[idx, c] : other.m_terms) {
        add_term(idx, -c);
    }
    return *this;
}

FormJet operator*(const Jet &f, const FormJet &a)
{
    FormJet r(a.space(), a.degree(), a.order());
    for (const auto &[idx, c] : a.terms()) {
        r.add_term(idx, f * c);
    }
    if (a.terms().empty()) {
        r.lower_order(f.order());
    }
    return r;
}

FormJet operator*(const Rational &c, const FormJet &a)
{
    FormJet r(a.space(), a.degree(), a.order());
    for (const auto &[idx, coeff] : a.terms()) {
        r.add_term(idx, coeff * c);
    }
    return r;
}

bool equal_to_order(const FormJet &a, const FormJet &b, unsigned order)
{
    if (a.space() != b.space() || a.degree() != b.degree() || a.order() < order || b.order() < order) {
        return false;
    }
    return (a - b).truncated(order).is_zero();
}

std::string to_string(const FormJet &a)
{
    const auto names = a.space().variable_names();
    std::ostringstream os;
    bool first = true;
    for (const auto &[idx, c] : a.terms()) {
        if (!first) {
            os << " + ";
        }
        first = false;
        os << "(" << to_string(c) << ")";
        for (std::size_t k = 0; k < idx.size(); ++k) {
            os << (k == 0 ? " d" : "^d") << names[idx[k]];
        }
    }
    if (first) {
        os << "0";
    }
    return os.str();
}

// ---------------------------------------------------------------------------

VectorFieldJet::VectorFieldJet(std::vector<Jet> components) : m_components(std::move(components))
{
    if (m_components.empty()) {
        return;
    }
    m_space = m_components[0].space();
    if (m_components.size() != m_space.dim()) {
        fail(ErrorKind::SpaceMismatch, "vector field component count differs from the space dimension");
    }
    for (const auto &c : m_components) {
        check_space(m_space, c.space(), "vector field");
    }
}

VectorFieldJet VectorFieldJet::coordinate(VariableSpace space, unsigned order, std::size_t axis, const Rational &scale)
{
    std::vector<Jet> comps;
    for (std::size_t i = 0; i < space.dim(); ++i) {
        comps.push_back(Jet::constant(space, order, i == axis ? scale : Rational(0)));
    }
    return VectorFieldJet(std::move(comps));
}

unsigned VectorFieldJet::order() const
{
    unsigned o = max_jet_order;
    for (const auto &c : m_components) {
        o = std::min(o, c.order());
    }
    return o;
}

VectorFieldJet VectorFieldJet::operator-() const
{
    std::vector<Jet> comps;
    for (const auto &c : m_components) {
        comps.push_back(-c);
    }
    return VectorFieldJet(std::move(comps));
}

Jet apply(const VectorFieldJet &v, const Jet &f)
{
    check_space(v.space(), f.space(), "apply");
    if (f.order() == 0) {
        fail(ErrorKind::CertificationFailure, "derivative of an order-0 jet");
    }
    Jet r(f.space(), f.order() - 1);
    bool first = true;
    for (std::size_t i = 0; i < v.size(); ++i) {
        // Even a zero d_i f limits the order through its unknown tail times v_i.
        const Jet d = partial_derivative(f, i);
        const Jet term = v[i] * d;
        if (first) {
            r = term;
            first = false;
        } else {
            r += term;
        }
    }
    return r;
}

FormJet exterior_derivative(const FormJet &a)
{
    if (a.order() == 0) {
        fail(ErrorKind::CertificationFailure, "exterior derivative of an order-0 form");
    }
    FormJet r(a.space(), a.degree() + 1, a.order() - 1);
    for (const auto &[idx, c] : a.terms()) {
        for (std::size_t j = 0; j < a.space().dim(); ++j) {
            IndexTuple t{j};
            t.insert(t.end(), idx.begin(), idx.end());
            r.add_term(std::move(t), partial_derivative(c, j));
        }
    }
    return r;
}

FormJet wedge(const FormJet &a, const FormJet &b)
{
    check_space(a.space(), b.space(), "wedge");
    FormJet r(a.space(), a.degree() + b.degree(), std::min(a.order(), b.order()));
    for (const auto &[ia, ca] : a.terms()) {
        for (const auto &[ib, cb] : b.terms()) {
            IndexTuple t = ia;
            t.insert(t.end(), ib.begin(), ib.end());
            r.add_term(std::move(t), ca * cb);
        }
    }
    return r;
}

FormJet contract(const VectorFieldJet &v, const FormJet &a)
{
    check_space(v.space(), a.space(), "contract");
    if (a.degree() == 0) {
        fail(ErrorKind::SpaceMismatch, "contraction into a 0-form");
    }
    FormJet r(a.space(), a.degree() - 1, std::min(a.order(), v.order()));
    for (const auto &[idx, c] : a.terms()) {
        for (std::size_t s = 0; s < idx.size(); ++s) {
            IndexTuple rest;
            for (std::size_t k = 0; k < idx.size(); ++k) {
                if (k != s) {
                    rest.push_back(idx[k]);
                }
            }
            Jet term = v[idx[s]] * c;
            if (s % 2 == 1) {
                term = -term;
            }
            r.add_term(std::move(rest), term);
        }
    }
    return r;
}

FormJet pullback(const MapJet &m, const FormJet &a)
{
    check_space(m.target(), a.space(), "pullback");
    if (!m.is_origin_preserving()) {
        fail(ErrorKind::NonOriginPreserving, "pullback by a map that moves the origin");
    }
    if (a.degree() == 0) {
        FormJet r(m.source(), 0, std::min(a.order(), m.order()));
        for (const auto &[idx, c] : a.terms()) {
            r.add_term({}, jet_compose(c, m));
        }
        return r;
    }
    std::vector<FormJet> dm;
    for (const auto &c : m.components()) {
        dm.push_back(FormJet::differential(c));
    }
    const unsigned order = std::min(a.order(), m.order() - 1);
    FormJet r(m.source(), a.degree(), order);
    for (const auto &[idx, c] : a.terms()) {
        FormJet acc = FormJet::zero_form(jet_compose(c, m));
        for (auto i : idx) {
            acc = wedge(acc, dm[i]);
        }
        r += acc;
    }
    return r;
}

FormJet remap_form(const FormJet &a, const VariableSpace &target, const std::vector<int> &placement)
{
    if (placement.size() != a.space().dim()) {
        fail(ErrorKind::SpaceMismatch, "remap_form placement has the wrong length");
    }
    FormJet r(target, a.degree(), a.order());
    for (const auto &[idx, c] : a.terms()) {
        IndexTuple t;
        bool dropped = false;
        for (auto i : idx) {
            if (placement[i] < 0) {
                dropped = true;
                break;
            }
            t.push_back(static_cast<std::size_t>(placement[i]));
        }
        if (!dropped) {
            r.add_term(std::move(t), remap_variables(c, target, placement));
        }
    }
    return r;
}

Rational evaluate_at_origin(const FormJet &a, const std::vector<std::vector<Rational>> &vectors)
{
    if (vectors.size() != a.degree()) {
        fail(ErrorKind::SpaceMismatch, "evaluate_at_origin needs one vector per form degree");
    }
    FormJet cur = a.truncated(0);
    for (const auto &vec : vectors) {
        std::vector<Jet> comps;
        for (std::size_t i = 0; i < a.space().dim(); ++i) {
            comps.push_back(Jet::constant(a.space(), 0, vec.at(i)));
        }
        cur = contract(VectorFieldJet(std::move(comps)), cur);
    }
    return cur.coefficient({}).constant_term();
}

std::vector<std::vector<Jet>> two_form_matrix(const FormJet &a)
{
    if (a.degree() != 2) {
        fail(ErrorKind::SpaceMismatch, "two_form_matrix needs a 2-form");
    }
    const std::size_t n = a.space().dim();
    std::vector<std::vector<Jet>> m(n, std::vector<Jet>(n, Jet(a.space(), a.order())));
    for (const auto &[idx, c] : a.terms()) {
        m[idx[0]][idx[1]] = c;
        m[idx[1]][idx[0]] = -c;
    }
    return m;
}

MapJet rectify(const VectorFieldJet &v, std::size_t axis)
{
    const VariableSpace &space = v.space();
    if (axis >= space.dim()) {
        fail(ErrorKind::SpaceMismatch, "rectify axis out of range");
    }
    if (is_zero(v[axis].constant_term())) {
        fail(ErrorKind::SingularAtOrigin, "rectify: field is not transversal to the section at the origin");
    }
    const unsigned order = v.order() + 1;
    if (order > max_jet_order) {
        fail(ErrorKind::SpaceMismatch, "rectify: order exceeds the supported jet order");
    }
    std::vector<Jet> comps;
    for (std::size_t i = 0; i < space.dim(); ++i) {
        Jet term = Jet::variable(space, order, i);
        Jet acc = substitute_zero(term, {axis});
        Jet xa_pow = Jet::constant(space, order, 1);
        const Jet xa = Jet::variable(space, order, axis);
        for (unsigned k = 1; k <= order; ++k) {
            term = apply(v, term);
            xa_pow = xa_pow * xa;
            const Jet on_section = substitute_zero(term, {axis});
            if (!on_section.is_zero()) {
                acc += (xa_pow * on_section) * (1 / factorial(k));
            }
            if (term.order() == 0) {
                break;
            }
        }
        comps.push_back(acc.truncated(order));
    }
    return MapJet(space, std::move(comps));
}

MapJet rectify(const VectorFieldJet &v)
{
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!is_zero(v[i].constant_term())) {
            return rectify(v, i);
        }
    }
    fail(ErrorKind::SingularAtOrigin, "rectify: field vanishes at the origin");
}

VectorFieldJet pushforward_residual(const MapJet &phi, const VectorFieldJet &v, std::size_t axis)
{
    std::vector<Jet> comps;
    for (std::size_t i = 0; i < phi.size(); ++i) {
        comps.push_back(partial_derivative(phi[i], axis) - jet_compose(v[i], phi));
    }
    return VectorFieldJet(std::move(comps));
}

} // namespace sympjet
