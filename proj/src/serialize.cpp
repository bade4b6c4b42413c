#include <sympjet/serialize.hpp>

#include <cctype>

namespace sympjet
{

namespace
{

class PolyParser
{
public:
    PolyParser(const std::string &text, const VariableSpace &space, unsigned order)
        : m_text(text), m_space(space), m_order(order)
    {
    }

    Jet parse()
    {
        Jet r = expr();
        skip();
        if (m_pos != m_text.size()) {
            error("unexpected '" + std::string(1, m_text[m_pos]) + "'");
        }
        return r;
    }

private:
    [[noreturn]] void error(const std::string &what) const
    {
        fail(ErrorKind::ParseError, "polynomial \"" + m_text + "\", column " + std::to_string(m_pos + 1) + ": " + what);
    }

    void skip()
    {
        while (m_pos < m_text.size() && std::isspace(static_cast<unsigned char>(m_text[m_pos]))) {
            ++m_pos;
        }
    }

    bool accept(char c)
    {
        skip();
        if (m_pos < m_text.size() && m_text[m_pos] == c) {
            ++m_pos;
            return true;
        }
        return false;
    }

    Jet expr()
    {
        skip();
        Jet acc(m_space, m_order);
        bool negate = false;
        if (accept('-')) {
            negate = true;
        } else {
            accept('+');
        }
        Jet t = term();
        acc = negate ? acc - t : acc + t;
        for (;;) {
            if (accept('+')) {
                acc += term();
            } else if (accept('-')) {
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    Jet term()
    {
        Jet acc = power();
        for (;;) {
            if (accept('*')) {
                acc = (acc * power()).truncated(m_order);
            } else if (accept('/')) {
                const Jet d = power();
                for (std::size_t i = 1; i < d.size(); ++i) {
                    if (!is_zero(d.coeff(i))) {
                        error("division by a non-constant");
                    }
                }
                if (is_zero(d.constant_term())) {
                    error("division by zero");
                }
                acc = (Rational(1) / d.constant_term()) * acc;
            } else {
                return acc;
            }
        }
    }

    Jet power()
    {
        Jet base = atom();
        if (accept('^')) {
            skip();
            const std::size_t start = m_pos;
            while (m_pos < m_text.size() && std::isdigit(static_cast<unsigned char>(m_text[m_pos]))) {
                ++m_pos;
            }
            if (start == m_pos || m_pos - start > 4) {
                m_pos = start;
                error("expected a small non-negative integer exponent");
            }
            base = jet_power(base, static_cast<unsigned>(std::stoul(m_text.substr(start, m_pos - start))));
        }
        return base;
    }

    Jet atom()
    {
        skip();
        if (m_pos >= m_text.size()) {
            error("unexpected end of input");
        }
        const char c = m_text[m_pos];
        if (c == '(') {
            ++m_pos;
            Jet r = expr();
            if (!accept(')')) {
                error("expected ')'");
            }
            return r;
        }
        if (c == '-') {
            ++m_pos;
            return Rational(-1) * power();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::size_t start = m_pos;
            while (m_pos < m_text.size() && std::isdigit(static_cast<unsigned char>(m_text[m_pos]))) {
                ++m_pos;
            }
            return Jet::constant(m_space, m_order, Rational(m_text.substr(start, m_pos - start)));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = m_pos;
            while (m_pos < m_text.size() && std::isalnum(static_cast<unsigned char>(m_text[m_pos]))) {
                ++m_pos;
            }
            const std::string name = m_text.substr(start, m_pos - start);
            const auto names = m_space.variable_names();
            for (std::size_t i = 0; i < names.size(); ++i) {
                if (names[i] == name) {
                    return Jet::variable(m_space, m_order, i);
                }
            }
            m_pos = start;
            error("unknown variable '" + name + "' for space " + m_space.name());
        }
        error("unexpected '" + std::string(1, c) + "'");
    }

    std::string m_text;
    VariableSpace m_space;
    unsigned m_order;
    std::size_t m_pos = 0;
};

bool non_negative(const Json &v)
{
    return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

Rational rational_from_json(const Json &num, const Json &den, const std::string &where)
{
    if (!num.is_string() || !den.is_string()) {
        fail(ErrorKind::ParseError, where + ": coefficients must be decimal strings");
    }
    Rational r;
    try {
        r = Rational(num.get<std::string>() + "/" + den.get<std::string>());
    } catch (const std::invalid_argument &) {
        fail(ErrorKind::ParseError, where + ": not a rational number");
    }
    if (r.get_den() == 0) {
        fail(ErrorKind::ParseError, where + ": zero denominator");
    }
    r.canonicalize();
    return r;
}

Jet terms_from_json(const Json &terms, const VariableSpace &space, unsigned order)
{
    Jet f(space, order);
    for (std::size_t t = 0; t < terms.size(); ++t) {
        const std::string where = "term " + std::to_string(t);
        const Json &e = terms[t];
        if (!e.is_array() || e.size() != 3 || !e[2].is_array() || e[2].size() != space.dim()) {
            fail(ErrorKind::ParseError, where + ": expected [\"num\", \"den\", [" + std::to_string(space.dim()) +
                                            " exponents]]");
        }
        std::vector<unsigned> exps;
        unsigned deg = 0;
        for (const auto &x : e[2]) {
            if (!non_negative(x)) {
                fail(ErrorKind::ParseError, where + ": exponents must be non-negative integers");
            }
            exps.push_back(x.get<unsigned>());
            deg += exps.back();
        }
        const Rational c = rational_from_json(e[0], e[1], where);
        if (deg <= order) {
            f.set_coefficient(exps, f.coefficient(exps) + c);
        }
    }
    return f;
}

} // namespace

Jet parse_polynomial(const std::string &text, const VariableSpace &space, unsigned order)
{
    return PolyParser(text, space, order).parse();
}

Json rational_to_json(const Rational &r)
{
    return Json::array({r.get_num().get_str(), r.get_den().get_str()});
}

Json jet_to_json(const Jet &f)
{
    Json terms = Json::array();
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (is_zero(f.coeff(i))) {
            continue;
        }
        Json exps = Json::array();
        for (std::size_t v = 0; v < f.nvars(); ++v) {
            exps.push_back(f.table().exponent(i, v));
        }
        terms.push_back(Json::array({f.coeff(i).get_num().get_str(), f.coeff(i).get_den().get_str(), exps}));
    }
    Json out;
    out["space"] = f.space().name();
    out["order"] = f.order();
    out["terms"] = std::move(terms);
    return out;
}

Jet jet_from_json(const Json &j, const VariableSpace &space, unsigned order)
{
    if (j.is_string()) {
        return parse_polynomial(j.get<std::string>(), space, order);
    }
    if (j.is_array()) {
        return terms_from_json(j, space, order);
    }
    if (j.is_object() && j.contains("terms")) {
        if (j.contains("space") && j["space"] != space.name()) {
            fail(ErrorKind::ParseError, "jet lives in " + j["space"].dump() + ", expected " + space.name());
        }
        unsigned o = order;
        if (j.contains("order")) {
            if (!non_negative(j["order"])) {
                fail(ErrorKind::ParseError, "jet order must be a non-negative integer");
            }
            o = j["order"].get<unsigned>();
        }
        if (!j["terms"].is_array()) {
            fail(ErrorKind::ParseError, "jet terms must be an array");
        }
        return terms_from_json(j["terms"], space, o);
    }
    fail(ErrorKind::ParseError, "a jet is a polynomial string, a terms array or {\"order\", \"terms\"}");
}

VariableSpace space_from_name(const std::string &name)
{
    const auto dash = name.rfind('-');
    if (dash != std::string::npos) {
        const std::string kind = name.substr(0, dash);
        unsigned dim = 0;
        try {
            dim = static_cast<unsigned>(std::stoul(name.substr(dash + 1)));
        } catch (const std::exception &) {
            fail(ErrorKind::ParseError, "bad space name " + name);
        }
        if (kind == "symplectic" && dim % 2 == 0 && dim >= 2) {
            return VariableSpace::symplectic(dim / 2);
        }
        if (kind == "quasi" && dim % 2 == 1) {
            return VariableSpace::quasi(dim / 2);
        }
        if (kind == "constrained" && dim % 2 == 0 && dim >= 2) {
            return VariableSpace::constrained(dim / 2 - 1);
        }
    }
    fail(ErrorKind::ParseError, "bad space name " + name);
}

Json form_to_json(const FormJet &a)
{
    Json terms = Json::array();
    for (const auto &[idx, c] : a.terms()) {
        if (c.is_zero()) {
            continue;
        }
        terms.push_back(Json::array({Json(idx), jet_to_json(c)}));
    }
    Json out;
    out["space"] = a.space().name();
    out["degree"] = a.degree();
    out["order"] = a.order();
    out["terms"] = std::move(terms);
    return out;
}

FormJet form_from_json(const Json &j, const VariableSpace &space, unsigned order)
{
    if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array()) {
        fail(ErrorKind::ParseError, "a form is {\"degree\", \"order\", \"terms\": [[[i, j], jet], ...]}");
    }
    const unsigned degree = j.value("degree", 2u);
    const unsigned o = j.value("order", order);
    FormJet a(space, degree, o);
    for (const auto &t : j["terms"]) {
        if (!t.is_array() || t.size() != 2 || !t[0].is_array() || t[0].size() != degree) {
            fail(ErrorKind::ParseError, "form term must be [[indices], jet] with " + std::to_string(degree) + " indices");
        }
        IndexTuple idx;
        for (const auto &i : t[0]) {
            if (!non_negative(i) || i.get<std::size_t>() >= space.dim()) {
                fail(ErrorKind::ParseError, "form index out of range for space " + space.name());
            }
            idx.push_back(i.get<std::size_t>());
        }
        a.add_term(idx, jet_from_json(t[1], space, o));
    }
    return a;
}

Json map_to_json(const MapJet &m)
{
    Json comps = Json::array();
    for (const auto &c : m.components()) {
        comps.push_back(jet_to_json(c));
    }
    Json out;
    out["source"] = m.source().name();
    out["target"] = m.target().name();
    out["order"] = m.order();
    out["components"] = std::move(comps);
    return out;
}

MapJet map_from_json(const Json &j, const VariableSpace &source, const VariableSpace &target, unsigned order)
{
    const Json *comps = &j;
    if (j.is_object()) {
        if (!j.contains("components")) {
            fail(ErrorKind::ParseError, "a map needs \"components\"");
        }
        comps = &j["components"];
    }
    if (!comps->is_array() || comps->size() != target.dim()) {
        fail(ErrorKind::ParseError, "a map into " + target.name() + " needs " + std::to_string(target.dim()) +
                                        " components");
    }
    std::vector<Jet> cs;
    for (const auto &c : *comps) {
        cs.push_back(jet_from_json(c, source, order));
    }
    return MapJet(source, target, std::move(cs));
}

} // namespace sympjet
