#include <sympjet/error.hpp>
#include <sympjet/monomial.hpp>

#include <map>
#include <mutex>
#include <string>

namespace sympjet
{

MonomialKey pack_exponents(const std::vector<unsigned> &exps)
{
    if (exps.size() > max_variables) {
        fail(ErrorKind::SpaceMismatch, "too many variables");
    }
    MonomialKey key = 0;
    for (std::size_t i = 0; i < exps.size(); ++i) {
        if (exps[i] > max_jet_order) {
            fail(ErrorKind::SpaceMismatch, "exponent exceeds the supported jet order");
        }
        key |= MonomialKey(exps[i]) << (4u * i);
    }
    return key;
}

std::vector<unsigned> unpack_exponents(MonomialKey key, std::size_t nvars)
{
    std::vector<unsigned> exps(nvars);
    for (std::size_t i = 0; i < nvars; ++i) {
        exps[i] = key_exponent(key, i);
    }
    return exps;
}

std::uint64_t monomials_of_degree(unsigned d, unsigned m)
{
    if (m == 0) {
        return d == 0 ? 1 : 0;
    }
    // C(d + m - 1, m - 1)
    std::uint64_t r = 1;
    for (unsigned i = 1; i < m; ++i) {
        r = r * (d + i) / i;
    }
    return r;
}

namespace
{

void enumerate_degree(std::size_t var, std::size_t nvars, unsigned remaining, MonomialKey prefix,
                      std::vector<MonomialKey> &out)
{
    if (var + 1 == nvars) {
        out.push_back(prefix | (MonomialKey(remaining) << (4u * var)));
        return;
    }
    for (unsigned e = remaining + 1; e-- > 0;) {
        enumerate_degree(var + 1, nvars, remaining - e, prefix | (MonomialKey(e) << (4u * var)), out);
    }
}

} // namespace

MonomialTable::MonomialTable(std::size_t nvars, unsigned degree) : m_nvars(nvars), m_max_degree(degree)
{
    m_offsets.push_back(0);
    for (unsigned d = 0; d <= degree; ++d) {
        if (nvars == 0) {
            if (d == 0) {
                m_keys.push_back(0);
            }
        } else {
            enumerate_degree(0, nvars, d, 0, m_keys);
        }
        m_degrees.resize(m_keys.size(), static_cast<unsigned char>(d));
        m_offsets.push_back(m_keys.size());
    }
    m_index.reserve(m_keys.size());
    for (std::size_t i = 0; i < m_keys.size(); ++i) {
        m_index.emplace(m_keys[i], i);
    }
}

std::size_t MonomialTable::index(MonomialKey key) const
{
    return m_index.at(key);
}

std::shared_ptr<const MonomialTable> MonomialTable::get(std::size_t nvars, unsigned degree)
{
    if (nvars > max_variables || degree > max_jet_order) {
        fail(ErrorKind::SpaceMismatch, "jet exceeds " + std::to_string(max_variables) + " variables or order "
                                           + std::to_string(max_jet_order));
    }
    static std::mutex mutex;
    static std::map<std::size_t, std::shared_ptr<const MonomialTable>> cache;
    std::lock_guard lock(mutex);
    auto &slot = cache[nvars];
    if (!slot || slot->max_degree() < degree) {
        slot = std::make_shared<const MonomialTable>(nvars, degree);
    }
    return slot;
}

} // namespace sympjet
