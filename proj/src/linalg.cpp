#include <sympjet/linalg.hpp>

#include <utility>

namespace sympjet
{

RationalMatrix identity_matrix(std::size_t n)
{
    auto m = zero_matrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m[i][i] = 1;
    }
    return m;
}

RationalMatrix zero_matrix(std::size_t rows, std::size_t cols)
{
    return RationalMatrix(rows, std::vector<Rational>(cols));
}

RationalMatrix multiply(const RationalMatrix &a, const RationalMatrix &b)
{
    const std::size_t inner = b.size();
    const std::size_t cols = inner == 0 ? 0 : b[0].size();
    auto c = zero_matrix(a.size(), cols);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t k = 0; k < inner; ++k) {
            if (is_zero(a[i][k])) {
                continue;
            }
            for (std::size_t j = 0; j < cols; ++j) {
                c[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    return c;
}

RationalMatrix transpose(const RationalMatrix &a)
{
    const std::size_t cols = a.empty() ? 0 : a[0].size();
    auto t = zero_matrix(cols, a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            t[j][i] = a[i][j];
        }
    }
    return t;
}

std::optional<RationalMatrix> inverse(const RationalMatrix &a)
{
    const std::size_t n = a.size();
    RationalMatrix m = a;
    RationalMatrix inv = identity_matrix(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && is_zero(m[pivot][col])) {
            ++pivot;
        }
        if (pivot == n) {
            return std::nullopt;
        }
        std::swap(m[pivot], m[col]);
        std::swap(inv[pivot], inv[col]);
        const Rational scale = 1 / m[col][col];
        for (std::size_t j = 0; j < n; ++j) {
            m[col][j] *= scale;
            inv[col][j] *= scale;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || is_zero(m[i][col])) {
                continue;
            }
            const Rational f = m[i][col];
            for (std::size_t j = 0; j < n; ++j) {
                m[i][j] -= f * m[col][j];
                inv[i][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

Rational determinant(const RationalMatrix &a)
{
    const std::size_t n = a.size();
    RationalMatrix m = a;
    Rational det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && is_zero(m[pivot][col])) {
            ++pivot;
        }
        if (pivot == n) {
            return 0;
        }
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (std::size_t i = col + 1; i < n; ++i) {
            if (is_zero(m[i][col])) {
                continue;
            }
            const Rational f = m[i][col] / m[col][col];
            for (std::size_t j = col; j < n; ++j) {
                m[i][j] -= f * m[col][j];
            }
        }
    }
    return det;
}

std::size_t rank_bareiss(std::vector<std::vector<Integer>> m)
{
    const std::size_t rows = m.size();
    if (rows == 0) {
        return 0;
    }
    const std::size_t cols = m[0].size();
    Integer prev = 1;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && sgn(m[pivot][col]) == 0) {
            ++pivot;
        }
        if (pivot == rows) {
            continue;
        }
        std::swap(m[pivot], m[rank]);
        const Integer p = m[rank][col];
        for (std::size_t i = rank + 1; i < rows; ++i) {
            const Integer lead = m[i][col];
            for (std::size_t j = col; j < cols; ++j) {
                // Exact division is guaranteed by Sylvester's identity.
                Integer v = p * m[i][j] - lead * m[rank][j];
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                m[i][j] = std::move(v);
            }
        }
        prev = p;
        ++rank;
    }
    return rank;
}

std::size_t rank_bareiss(const RationalMatrix &a)
{
    std::vector<std::vector<Integer>> m;
    m.reserve(a.size());
    for (const auto &row : a) {
        Integer lcm = 1;
        for (const auto &q : row) {
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
        }
        std::vector<Integer> irow;
        irow.reserve(row.size());
        for (const auto &q : row) {
            irow.push_back(q.get_num() * (lcm / q.get_den()));
        }
        m.push_back(std::move(irow));
    }
    return rank_bareiss(std::move(m));
}

} // namespace sympjet
