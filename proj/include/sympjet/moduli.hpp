#ifndef SYMPJET_MODULI_HPP
#define SYMPJET_MODULI_HPP

#include <cstdint>
#include <vector>

namespace sympjet
{

// dim M_k for M_k = J^k Diff(2n) / Symp(2n): the jet dimension of origin-fixing
// diffeomorphisms minus the rank of the infinitesimal action Z_H -> DPhi . Z_H
// at a random base jet Phi. Three derived seeds are tried and the largest
// (generic) rank is used.
std::uint64_t orbit_dimension_rank(unsigned n, unsigned k, std::uint64_t seed);

struct OrbitRankSamples {
    std::uint64_t jet_dimension = 0; // 2n * sum_{d=1}^k T(d, 2n)
    std::uint64_t group_dimension = 0; // sum_{d=2}^{k+1} T(d, 2n)
    std::vector<std::uint64_t> ranks; // one per sampled base jet
    bool seeds_agree = true;
};
OrbitRankSamples orbit_rank_samples(unsigned n, unsigned k, std::uint64_t seed);

// Free coefficients of degree <= k in the diffeo normal form: for
// j = 1..2n-1, monomials of degree 1..k lying in the ideal of the first j
// generators q1, p1, q2, ...
std::uint64_t normal_form_coefficient_count(unsigned n, unsigned k);

// Dimension of closed 2-forms on R^{2n} with homogeneous coefficients of
// degree d, from the rank of d on homogeneous 1-forms of degree d + 1.
std::uint64_t closed_two_form_dimension(unsigned n, unsigned d);

struct SeriesCoeffs {
    unsigned n = 0;
    unsigned max_order = 0;
    std::vector<std::uint64_t> dims; // dim M_0 .. dim M_K
    std::vector<std::uint64_t> increments; // dims[k] - dims[k-1], index 0 unused
    // t n(2n-1) / (1-t)^{2n}: coefficients and their partial sums.
    std::vector<std::uint64_t> series_increments;
    std::vector<std::uint64_t> series_dims;
    std::vector<bool> agrees; // per k = 1..K, dims[k] == series_dims[k]
    // Cross-check against the rank method for k <= min(K, 3).
    std::vector<std::uint64_t> rank_dims;
    bool methods_agree = true;
    // P_M = t P_S: closed 2-form dimensions S_d against increments[d + 1].
    std::vector<std::uint64_t> closed_form_dims;
    bool shift_identity_holds = true;
};

SeriesCoeffs poincare_series(unsigned n, unsigned max_order, std::uint64_t seed = 1);

} // namespace sympjet

#endif
