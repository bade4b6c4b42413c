#ifndef SYMPJET_LINALG_HPP
#define SYMPJET_LINALG_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include <sympjet/rational.hpp>

namespace sympjet
{

using RationalMatrix = std::vector<std::vector<Rational>>;

RationalMatrix identity_matrix(std::size_t n);
RationalMatrix zero_matrix(std::size_t rows, std::size_t cols);
RationalMatrix multiply(const RationalMatrix &a, const RationalMatrix &b);
RationalMatrix transpose(const RationalMatrix &a);

// Gauss-Jordan over Q; nullopt when singular.
std::optional<RationalMatrix> inverse(const RationalMatrix &a);
Rational determinant(const RationalMatrix &a);

// Rank by fraction-free (Bareiss) elimination; rows are first scaled to
// integers by their common denominator.
std::size_t rank_bareiss(const RationalMatrix &a);
std::size_t rank_bareiss(std::vector<std::vector<Integer>> m);

} // namespace sympjet

#endif
