#ifndef SYMPJET_MONOMIAL_HPP
#define SYMPJET_MONOMIAL_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

namespace sympjet
{

// Exponent vectors are packed 4 bits per variable into a 64-bit key, so jets
// are limited to 16 variables and truncation degree 15. Adding two keys adds
// the exponent vectors as long as the total degree stays within that bound.
using MonomialKey = std::uint64_t;

inline constexpr std::size_t max_variables = 16;
inline constexpr unsigned max_jet_order = 15;

inline unsigned key_exponent(MonomialKey key, std::size_t var) noexcept
{
    return static_cast<unsigned>((key >> (4u * var)) & 0xFu);
}

inline MonomialKey key_unit(std::size_t var) noexcept
{
    return MonomialKey(1) << (4u * var);
}

MonomialKey pack_exponents(const std::vector<unsigned> &exps);
std::vector<unsigned> unpack_exponents(MonomialKey key, std::size_t nvars);

// Monomials in a fixed number of variables, listed in graded lexicographic
// order: by total degree, then lexicographically descending in the canonical
// variable order (x1^d first). Monomials of degree <= k form the prefix
// [0, count_up_to(k)), which lets jets of different orders share indices.
//
// Tables are immutable once built and handed out as shared pointers.
class MonomialTable
{
public:
    static std::shared_ptr<const MonomialTable> get(std::size_t nvars, unsigned degree);

    std::size_t nvars() const noexcept
    {
        return m_nvars;
    }
    unsigned max_degree() const noexcept
    {
        return m_max_degree;
    }
    std::size_t count_up_to(unsigned degree) const noexcept
    {
        return m_offsets[degree + 1];
    }
    std::size_t offset(unsigned degree) const noexcept
    {
        return m_offsets[degree];
    }
    MonomialKey key(std::size_t idx) const noexcept
    {
        return m_keys[idx];
    }
    unsigned degree(std::size_t idx) const noexcept
    {
        return m_degrees[idx];
    }
    unsigned exponent(std::size_t idx, std::size_t var) const noexcept
    {
        return key_exponent(m_keys[idx], var);
    }
    // Index of a monomial of degree <= max_degree().
    std::size_t index(MonomialKey key) const;

    MonomialTable(std::size_t nvars, unsigned degree);

private:
    std::size_t m_nvars;
    unsigned m_max_degree;
    std::vector<MonomialKey> m_keys;
    std::vector<unsigned char> m_degrees;
    std::vector<std::size_t> m_offsets;
    std::unordered_map<MonomialKey, std::size_t> m_index;
};

// Number of monomials of exact degree d in m variables.
std::uint64_t monomials_of_degree(unsigned d, unsigned m);

} // namespace sympjet

#endif
