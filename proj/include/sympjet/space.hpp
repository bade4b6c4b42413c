#ifndef SYMPJET_SPACE_HPP
#define SYMPJET_SPACE_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace sympjet
{

enum class SpaceKind {
    Symplectic,  // p1,q1,...,pn,qn
    Quasi,       // y,p1,q1,...,pn,qn
    Constrained, // x,y,p1,q1,...,pn,qn
};

// Ordered coordinate system shared by every jet of one computation.
class VariableSpace
{
public:
    VariableSpace() = default;
    VariableSpace(SpaceKind kind, unsigned n) : m_kind(kind), m_n(n) {}

    static VariableSpace symplectic(unsigned n)
    {
        return {SpaceKind::Symplectic, n};
    }
    static VariableSpace quasi(unsigned n)
    {
        return {SpaceKind::Quasi, n};
    }
    static VariableSpace constrained(unsigned n)
    {
        return {SpaceKind::Constrained, n};
    }

    SpaceKind kind() const noexcept
    {
        return m_kind;
    }
    unsigned n() const noexcept
    {
        return m_n;
    }
    std::size_t dim() const noexcept;

    // Number of leading variables that are not part of a (p_i, q_i) pair.
    std::size_t pair_offset() const noexcept;
    std::size_t p_index(unsigned i) const; // 1-based i
    std::size_t q_index(unsigned i) const;

    std::vector<std::string> variable_names() const;
    std::string name() const;
    // Index of a variable by name ("p1", "q2", "x", "y"); throws ParseError.
    std::size_t index_of(const std::string &var) const;

    friend bool operator==(const VariableSpace &, const VariableSpace &) = default;

private:
    SpaceKind m_kind = SpaceKind::Symplectic;
    unsigned m_n = 0;
};

std::string to_string(SpaceKind kind);
SpaceKind parse_space_kind(const std::string &text);

} // namespace sympjet

#endif
