#include <sympjet/error.hpp>
#include <sympjet/rational.hpp>
#include <sympjet/space.hpp>

#include <cctype>

namespace sympjet
{

std::string_view error_kind_name(ErrorKind kind) noexcept
{
    switch (kind) {
        case ErrorKind::SpaceMismatch:
            return "SpaceMismatch";
        case ErrorKind::NonOriginPreserving:
            return "NonOriginPreserving";
        case ErrorKind::SingularLinearPart:
            return "SingularLinearPart";
        case ErrorKind::DegenerateDirection:
            return "DegenerateDirection";
        case ErrorKind::SingularAtOrigin:
            return "SingularAtOrigin";
        case ErrorKind::DegenerateForm:
            return "DegenerateForm";
        case ErrorKind::NotClosed:
            return "NotClosed";
        case ErrorKind::TransversalityFailure:
            return "TransversalityFailure";
        case ErrorKind::PivotFailure:
            return "PivotFailure";
        case ErrorKind::GenericityViolation:
            return "GenericityViolation";
        case ErrorKind::NotGlancing:
            return "NotGlancing";
        case ErrorKind::CertificationFailure:
            return "CertificationFailure";
        case ErrorKind::ParseError:
            return "ParseError";
    }
    return "Unknown";
}

Rational parse_rational(const std::string &text)
{
    auto valid_int = [](const std::string &s) {
        std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (i == s.size()) {
            return false;
        }
        for (; i < s.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
                return false;
            }
        }
        return true;
    };
    const auto slash = text.find('/');
    std::string num = text.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
    if (!num.empty() && num[0] == '+') {
        num.erase(0, 1);
    }
    if (!valid_int(num) || !valid_int(den)) {
        fail(ErrorKind::ParseError, "malformed rational '" + text + "'");
    }
    Rational q{Integer(num, 10), Integer(den, 10)};
    if (sgn(q.get_den()) == 0) {
        fail(ErrorKind::ParseError, "zero denominator in '" + text + "'");
    }
    q.canonicalize();
    return q;
}

std::string to_string(const Rational &q)
{
    return q.get_str(10);
}

Rational factorial(unsigned k)
{
    Integer r = 1;
    for (unsigned i = 2; i <= k; ++i) {
        r *= i;
    }
    return Rational(r);
}

std::size_t VariableSpace::dim() const noexcept
{
    return 2 * static_cast<std::size_t>(m_n) + pair_offset();
}

std::size_t VariableSpace::pair_offset() const noexcept
{
    switch (m_kind) {
        case SpaceKind::Symplectic:
            return 0;
        case SpaceKind::Quasi:
            return 1;
        case SpaceKind::Constrained:
            return 2;
    }
    return 0;
}

std::size_t VariableSpace::p_index(unsigned i) const
{
    if (i == 0 || i > m_n) {
        fail(ErrorKind::SpaceMismatch, "pair index out of range in " + name());
    }
    return pair_offset() + 2 * (i - 1);
}

std::size_t VariableSpace::q_index(unsigned i) const
{
    return p_index(i) + 1;
}

std::vector<std::string> VariableSpace::variable_names() const
{
    std::vector<std::string> names;
    if (m_kind == SpaceKind::Constrained) {
        names.emplace_back("x");
    }
    if (m_kind != SpaceKind::Symplectic) {
        names.emplace_back("y");
    }
    for (unsigned i = 1; i <= m_n; ++i) {
        names.push_back("p" + std::to_string(i));
        names.push_back("q" + std::to_string(i));
    }
    return names;
}

std::string to_string(SpaceKind kind)
{
    switch (kind) {
        case SpaceKind::Symplectic:
            return "symplectic";
        case SpaceKind::Quasi:
            return "quasi";
        case SpaceKind::Constrained:
            return "constrained";
    }
    return "?";
}

SpaceKind parse_space_kind(const std::string &text)
{
    if (text == "symplectic") {
        return SpaceKind::Symplectic;
    }
    if (text == "quasi") {
        return SpaceKind::Quasi;
    }
    if (text == "constrained") {
        return SpaceKind::Constrained;
    }
    fail(ErrorKind::ParseError, "unknown space kind '" + text + "'");
}

std::string VariableSpace::name() const
{
    return to_string(m_kind) + "-" + std::to_string(dim());
}

std::size_t VariableSpace::index_of(const std::string &var) const
{
    const auto names = variable_names();
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == var) {
            return i;
        }
    }
    fail(ErrorKind::ParseError, "variable '" + var + "' does not belong to " + name());
}

} // namespace sympjet
