#include <sympjet/jet.hpp>
#include <sympjet/linalg.hpp>

#include <algorithm>
#include <optional>
#include <sstream>

namespace sympjet
{

namespace
{

void check_same_space(const Jet &a, const Jet &b, const char *op)
{
    if (a.space() != b.space()) {
        fail(ErrorKind::SpaceMismatch, std::string(op) + ": " + a.space().name() + " vs " + b.space().name());
    }
}

} // namespace

Jet::Jet(VariableSpace space, unsigned order)
    : m_space(space), m_order(order), m_table(MonomialTable::get(space.dim(), order)),
      m_coeffs(m_table->count_up_to(order))
{
}

Jet Jet::constant(VariableSpace space, unsigned order, const Rational &c)
{
    Jet j(space, order);
    j.m_coeffs[0] = c;
    return j;
}

Jet Jet::variable(VariableSpace space, unsigned order, std::size_t var)
{
    if (var >= space.dim()) {
        fail(ErrorKind::SpaceMismatch, "variable index out of range");
    }
    Jet j(space, order);
    if (order >= 1) {
        j.m_coeffs[j.m_table->index(key_unit(var))] = 1;
    }
    return j;
}

Jet Jet::monomial(VariableSpace space, unsigned order, const std::vector<unsigned> &exps, const Rational &c)
{
    Jet j(space, order);
    j.set_coefficient(exps, c);
    return j;
}

Rational Jet::coefficient(const std::vector<unsigned> &exps) const
{
    if (exps.size() != nvars()) {
        fail(ErrorKind::SpaceMismatch, "exponent vector length does not match the space");
    }
    unsigned deg = 0;
    for (auto e : exps) {
        deg += e;
    }
    if (deg > m_order) {
        return 0;
    }
    return m_coeffs[m_table->index(pack_exponents(exps))];
}

void Jet::set_coefficient(const std::vector<unsigned> &exps, const Rational &c)
{
    if (exps.size() != nvars()) {
        fail(ErrorKind::SpaceMismatch, "exponent vector length does not match the space");
    }
    unsigned deg = 0;
    for (auto e : exps) {
        deg += e;
    }
    if (deg > m_order) {
        return;
    }
    m_coeffs[m_table->index(pack_exponents(exps))] = c;
}

const Rational &Jet::linear_coeff(std::size_t var) const
{
    static const Rational zero;
    if (m_order == 0) {
        return zero;
    }
    return m_coeffs[m_table->index(key_unit(var))];
}

bool Jet::is_zero() const
{
    return std::all_of(m_coeffs.begin(), m_coeffs.end(), [](const Rational &q) { return sympjet::is_zero(q); });
}

unsigned Jet::valuation() const
{
    for (std::size_t i = 0; i < m_coeffs.size(); ++i) {
        if (!sympjet::is_zero(m_coeffs[i])) {
            return m_table->degree(i);
        }
    }
    return m_order + 1;
}

std::size_t Jet::nonzero_count() const
{
    return static_cast<std::size_t>(
        std::count_if(m_coeffs.begin(), m_coeffs.end(), [](const Rational &q) { return !sympjet::is_zero(q); }));
}

Jet Jet::truncated(unsigned order) const
{
    if (order >= m_order) {
        return *this;
    }
    Jet r(m_space, order);
    std::copy(m_coeffs.begin(), m_coeffs.begin() + static_cast<std::ptrdiff_t>(r.m_coeffs.size()), r.m_coeffs.begin());
    return r;
}

Jet Jet::homogeneous_part(unsigned degree) const
{
    Jet r(m_space, m_order);
    if (degree > m_order) {
        return r;
    }
    for (std::size_t i = m_table->offset(degree); i < m_table->count_up_to(degree); ++i) {
        r.m_coeffs[i] = m_coeffs[i];
    }
    return r;
}

Jet &Jet::operator+=(const Jet &other)
{
    check_same_space(*this, other, "add");
    if (other.m_order < m_order) {
        *this = truncated(other.m_order);
    }
    for (std::size_t i = 0; i < m_coeffs.size(); ++i) {
        m_coeffs[i] += other.m_coeffs[i];
    }
    return *this;
}

Jet &Jet::operator-=(const Jet &other)
{
    check_same_space(*this, other, "subtract");
    if (other.m_order < m_order) {
        *this = truncated(other.m_order);
    }
    for (std::size_t i = 0; i < m_coeffs.size(); ++i) {
        m_coeffs[i] -= other.m_coeffs[i];
    }
    return *this;
}

Jet &Jet::operator*=(const Rational &c)
{
    for (auto &q : m_coeffs) {
        q *= c;
    }
    return *this;
}

Jet Jet::operator-() const
{
    Jet r = *this;
    for (auto &q : r.m_coeffs) {
        q = -q;
    }
    return r;
}

Jet operator*(const Jet &a, const Jet &b)
{
    return jet_multiply(a, b);
}

bool operator==(const Jet &a, const Jet &b)
{
    return a.m_space == b.m_space && a.m_order == b.m_order && a.m_coeffs == b.m_coeffs;
}

bool equal_to_order(const Jet &a, const Jet &b, unsigned order)
{
    if (a.space() != b.space() || a.order() < order || b.order() < order) {
        return false;
    }
    const std::size_t n = a.table().count_up_to(order);
    for (std::size_t i = 0; i < n; ++i) {
        if (a.coeff(i) != b.coeff(i)) {
            return false;
        }
    }
    return true;
}

std::string to_string(const Jet &f)
{
    std::ostringstream os;
    const auto names = f.space().variable_names();
    bool first = true;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const Rational &c = f.coeff(i);
        if (is_zero(c)) {
            continue;
        }
        const bool neg = sgn(c) < 0;
        const Rational mag = abs(c);
        os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
        first = false;
        std::string mono;
        for (std::size_t v = 0; v < f.nvars(); ++v) {
            const unsigned e = f.table().exponent(i, v);
            if (e == 0) {
                continue;
            }
            if (!mono.empty()) {
                mono += "*";
            }
            mono += names[v];
            if (e > 1) {
                mono += "^" + std::to_string(e);
            }
        }
        if (mono.empty()) {
            os << to_string(mag);
        } else if (mag == 1) {
            os << mono;
        } else {
            os << to_string(mag) << "*" << mono;
        }
    }
    if (first) {
        os << "0";
    }
    return os.str();
}

Jet jet_multiply(const Jet &a, const Jet &b)
{
    check_same_space(a, b, "multiply");
    const unsigned va = a.valuation();
    const unsigned vb = b.valuation();
    const unsigned order = std::min(std::min(a.order() + vb, b.order() + va), std::max(a.order(), b.order()));
    Jet r(a.space(), order);
    const MonomialTable &table = r.table();

    std::vector<std::size_t> bnz;
    for (std::size_t j = 0; j < b.size(); ++j) {
        if (!is_zero(b.coeff(j))) {
            bnz.push_back(j);
        }
    }
    Rational tmp;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Rational &ca = a.coeff(i);
        if (is_zero(ca)) {
            continue;
        }
        const unsigned di = a.table().degree(i);
        if (di > order) {
            break;
        }
        const MonomialKey ki = a.table().key(i);
        for (std::size_t j : bnz) {
            // b's nonzeros are sorted by degree.
            if (di + b.table().degree(j) > order) {
                break;
            }
            mpq_mul(tmp.get_mpq_t(), ca.get_mpq_t(), b.coeff(j).get_mpq_t());
            r.coeff(table.index(ki + b.table().key(j))) += tmp;
        }
    }
    return r;
}

Jet jet_power(const Jet &a, unsigned k)
{
    Jet r = Jet::constant(a.space(), a.order(), 1);
    for (unsigned i = 0; i < k; ++i) {
        r = jet_multiply(r, a);
    }
    return r;
}

Jet partial_derivative(const Jet &f, std::size_t var)
{
    if (var >= f.nvars()) {
        fail(ErrorKind::SpaceMismatch, "derivative variable out of range");
    }
    if (f.order() == 0) {
        fail(ErrorKind::CertificationFailure, "derivative of an order-0 jet has no certified coefficients");
    }
    Jet r(f.space(), f.order() - 1);
    const MonomialKey unit = key_unit(var);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const unsigned e = f.table().exponent(i, var);
        if (e == 0 || is_zero(f.coeff(i))) {
            continue;
        }
        r.coeff(r.table().index(f.table().key(i) - unit)) = f.coeff(i) * e;
    }
    return r;
}

Jet substitute_zero(const Jet &f, const std::vector<std::size_t> &vars)
{
    Jet r = f;
    for (std::size_t i = 0; i < r.size(); ++i) {
        for (auto v : vars) {
            if (r.table().exponent(i, v) != 0) {
                r.coeff(i) = 0;
                break;
            }
        }
    }
    return r;
}

Jet remap_variables(const Jet &f, const VariableSpace &target, const std::vector<int> &placement)
{
    if (placement.size() != f.nvars()) {
        fail(ErrorKind::SpaceMismatch, "placement length does not match the source space");
    }
    Jet r(target, f.order());
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (is_zero(f.coeff(i))) {
            continue;
        }
        MonomialKey key = 0;
        bool dropped = false;
        for (std::size_t v = 0; v < f.nvars(); ++v) {
            const unsigned e = f.table().exponent(i, v);
            if (e == 0) {
                continue;
            }
            if (placement[v] < 0) {
                dropped = true;
                break;
            }
            key += MonomialKey(e) << (4u * static_cast<unsigned>(placement[v]));
        }
        if (!dropped) {
            r.coeff(r.table().index(key)) += f.coeff(i);
        }
    }
    return r;
}

bool depends_on(const Jet &f, std::size_t var)
{
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f.table().exponent(i, var) != 0 && !is_zero(f.coeff(i))) {
            return true;
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// MapJet

MapJet::MapJet(VariableSpace source, VariableSpace target, std::vector<Jet> components)
    : m_source(source), m_target(target), m_components(std::move(components))
{
    if (m_components.size() != m_target.dim()) {
        fail(ErrorKind::SpaceMismatch, "map has " + std::to_string(m_components.size()) + " components, target "
                                           + m_target.name() + " needs " + std::to_string(m_target.dim()));
    }
    for (const auto &c : m_components) {
        if (c.space() != m_source) {
            fail(ErrorKind::SpaceMismatch, "map component lives in " + c.space().name() + ", expected "
                                               + m_source.name());
        }
    }
}

MapJet MapJet::identity(VariableSpace space, unsigned order)
{
    std::vector<Jet> comps;
    for (std::size_t i = 0; i < space.dim(); ++i) {
        comps.push_back(Jet::variable(space, order, i));
    }
    return MapJet(space, std::move(comps));
}

MapJet MapJet::linear(VariableSpace source, VariableSpace target, const std::vector<std::vector<Rational>> &a,
                      unsigned order)
{
    std::vector<Jet> comps;
    for (std::size_t i = 0; i < target.dim(); ++i) {
        Jet c(source, order);
        for (std::size_t j = 0; j < source.dim(); ++j) {
            if (!is_zero(a[i][j])) {
                c += Jet::variable(source, order, j) * a[i][j];
            }
        }
        comps.push_back(std::move(c));
    }
    return MapJet(source, target, std::move(comps));
}

unsigned MapJet::order() const
{
    unsigned o = max_jet_order;
    for (const auto &c : m_components) {
        o = std::min(o, c.order());
    }
    return o;
}

std::vector<std::vector<Rational>> MapJet::linear_part() const
{
    std::vector<std::vector<Rational>> a(m_components.size(), std::vector<Rational>(m_source.dim()));
    for (std::size_t i = 0; i < m_components.size(); ++i) {
        for (std::size_t j = 0; j < m_source.dim(); ++j) {
            a[i][j] = m_components[i].linear_coeff(j);
        }
    }
    return a;
}

bool MapJet::is_origin_preserving() const
{
    return std::all_of(m_components.begin(), m_components.end(),
                       [](const Jet &c) { return is_zero(c.constant_term()); });
}

MapJet MapJet::truncated(unsigned order) const
{
    std::vector<Jet> comps;
    for (const auto &c : m_components) {
        comps.push_back(c.truncated(order));
    }
    return MapJet(m_source, m_target, std::move(comps));
}

bool equal_to_order(const MapJet &a, const MapJet &b, unsigned order)
{
    if (a.source() != b.source() || a.target() != b.target()) {
        return false;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!equal_to_order(a[i], b[i], order)) {
            return false;
        }
    }
    return true;
}

Jet jet_compose(const Jet &f, const MapJet &m)
{
    if (f.space() != m.target()) {
        fail(ErrorKind::SpaceMismatch, "compose: jet lives in " + f.space().name() + ", map targets "
                                           + m.target().name());
    }
    if (!m.is_origin_preserving()) {
        fail(ErrorKind::NonOriginPreserving, "compose: map has a nonzero constant term");
    }
    const unsigned order = std::min(f.order(), m.order());
    const MapJet mt = m.truncated(order);
    Jet result = Jet::constant(m.source(), order, f.constant_term());

    // Powers m^alpha memoized along the graded-lex prefix.
    const MonomialTable &ftab = f.table();
    std::vector<std::optional<Jet>> powers(ftab.count_up_to(order));
    powers[0] = Jet::constant(m.source(), order, 1);
    auto power = [&](auto &&self, std::size_t idx) -> const Jet & {
        if (!powers[idx]) {
            const MonomialKey key = ftab.key(idx);
            std::size_t v = 0;
            while (key_exponent(key, v) == 0) {
                ++v;
            }
            const Jet &prev = self(self, ftab.index(key - key_unit(v)));
            powers[idx] = jet_multiply(prev, mt[v]).truncated(order);
        }
        return *powers[idx];
    };
    for (std::size_t i = 1; i < powers.size(); ++i) {
        if (is_zero(f.coeff(i))) {
            continue;
        }
        result += power(power, i) * f.coeff(i);
    }
    return result.truncated(order);
}

MapJet compose_maps(const MapJet &outer, const MapJet &inner)
{
    std::vector<Jet> comps;
    comps.reserve(outer.size());
    for (const auto &c : outer.components()) {
        comps.push_back(jet_compose(c, inner));
    }
    return MapJet(inner.source(), outer.target(), std::move(comps));
}

MapJet map_invert(const MapJet &m)
{
    if (m.source().dim() != m.target().dim()) {
        fail(ErrorKind::SingularLinearPart, "map between spaces of different dimension");
    }
    if (!m.is_origin_preserving()) {
        fail(ErrorKind::NonOriginPreserving, "invert: map has a nonzero constant term");
    }
    const auto a = m.linear_part();
    const auto ainv = inverse(a);
    if (!ainv) {
        fail(ErrorKind::SingularLinearPart, "invert: linear part is singular");
    }
    const unsigned order = m.order();
    const VariableSpace &y = m.target();

    // Nonlinear part h = m - A x.
    std::vector<Jet> h;
    for (std::size_t i = 0; i < m.size(); ++i) {
        Jet c = m[i].truncated(order);
        for (std::size_t j = 0; j < m.source().dim(); ++j) {
            if (order >= 1) {
                c.coeff(c.table().index(key_unit(j))) = 0;
            }
        }
        h.push_back(std::move(c));
    }
    const MapJet hmap(m.source(), m.target(), h);

    // g = A^-1 (y - h o g), each pass fixes one more degree.
    auto apply_ainv = [&](const std::vector<Jet> &rhs) {
        std::vector<Jet> out;
        for (std::size_t i = 0; i < rhs.size(); ++i) {
            Jet c(y, order);
            for (std::size_t j = 0; j < rhs.size(); ++j) {
                if (!is_zero((*ainv)[i][j])) {
                    c += rhs[j] * (*ainv)[i][j];
                }
            }
            out.push_back(std::move(c));
        }
        return MapJet(y, m.source(), std::move(out));
    };
    const MapJet ident = MapJet::identity(y, order);
    MapJet g = apply_ainv(ident.components());
    for (unsigned pass = 1; pass < order; ++pass) {
        const MapJet hg = compose_maps(hmap, g);
        std::vector<Jet> rhs;
        for (std::size_t i = 0; i < hg.size(); ++i) {
            rhs.push_back(ident[i] - hg[i]);
        }
        g = apply_ainv(rhs);
    }
    return g;
}

Jet implicit_solve(const Jet &f, const Jet &rhs, std::size_t var)
{
    check_same_space(f, rhs, "implicit_solve");
    const Rational c = f.linear_coeff(var);
    if (is_zero(c)) {
        fail(ErrorKind::DegenerateDirection, "implicit_solve: derivative along the solved variable vanishes at 0");
    }
    if (f.constant_term() != rhs.constant_term()) {
        fail(ErrorKind::NonOriginPreserving, "implicit_solve: f(0) differs from rhs(0)");
    }
    const unsigned order = std::min(f.order(), rhs.order());
    const VariableSpace &space = f.space();
    const Rational inv_c = 1 / c;
    Jet y(space, order);
    for (unsigned pass = 0; pass <= order; ++pass) {
        std::vector<Jet> comps;
        for (std::size_t i = 0; i < space.dim(); ++i) {
            comps.push_back(i == var ? y : Jet::variable(space, order, i));
        }
        const Jet err = rhs.truncated(order) - jet_compose(f, MapJet(space, std::move(comps)));
        if (err.is_zero()) {
            break;
        }
        y += err * inv_c;
    }
    return y;
}

// ---------------------------------------------------------------------------
// Ideals and expansions

IdealSpec::IdealSpec(VariableSpace space, std::vector<std::size_t> generators)
    : m_space(space), m_generators(std::move(generators))
{
    for (auto g : m_generators) {
        if (g >= m_space.dim()) {
            fail(ErrorKind::SpaceMismatch, "ideal generator out of range");
        }
    }
}

IdealSpec IdealSpec::omega(const VariableSpace &space, unsigned i)
{
    const unsigned n = space.n();
    if (n == 0 || i < 1 || i > 2 * n - 1) {
        fail(ErrorKind::SpaceMismatch, "I_" + std::to_string(i) + " is not defined for n = " + std::to_string(n));
    }
    std::vector<std::size_t> gens;
    for (unsigned k = 0; k < i; ++k) {
        const unsigned pair = k / 2 + 1;
        gens.push_back(k % 2 == 0 ? space.q_index(pair) : space.p_index(pair));
    }
    return IdealSpec(space, std::move(gens));
}

bool ideal_membership(const Jet &f, const IdealSpec &ideal)
{
    if (f.space() != ideal.space()) {
        fail(ErrorKind::SpaceMismatch, "ideal_membership: jet and ideal live in different spaces");
    }
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (is_zero(f.coeff(i))) {
            continue;
        }
        const bool divisible = std::any_of(ideal.generators().begin(), ideal.generators().end(),
                                           [&](std::size_t g) { return f.table().exponent(i, g) > 0; });
        if (!divisible) {
            return false;
        }
    }
    return true;
}

std::vector<Jet> coefficient_expansion(const Jet &f, std::size_t var)
{
    if (var >= f.nvars()) {
        fail(ErrorKind::SpaceMismatch, "coefficient_expansion: variable out of range");
    }
    std::vector<Jet> out;
    for (unsigned k = 0; k <= f.order(); ++k) {
        out.emplace_back(f.space(), f.order() - k);
    }
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (is_zero(f.coeff(i))) {
            continue;
        }
        const unsigned e = f.table().exponent(i, var);
        const MonomialKey rest = f.table().key(i) - MonomialKey(e) * key_unit(var);
        Jet &c = out[e];
        c.coeff(c.table().index(rest)) += f.coeff(i);
    }
    return out;
}

} // namespace sympjet
