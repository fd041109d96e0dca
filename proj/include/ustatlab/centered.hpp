#ifndef USTATLAB_CENTERED_HPP
#define USTATLAB_CENTERED_HPP

#include "ustatlab/bigmath.hpp"
#include "ustatlab/dyadic.hpp"
#include "ustatlab/stats.hpp"

#include <cstdint>
#include <vector>

// Reconstruction of the second counterexample: weights a_k = k^{3/2} -
// (k-1)^{3/2} couple lag-k pairs through G_k = {(x, T^k x) : T^k x >= 1/2},
// and the centered normalized U-statistic collapses to the weighted
// martingale-difference sum
//   Y_n = C(n,2)^-1 sum_{j=2..n} (j-1)^{3/2} (b_{j+1}(x) - 1/2),
// which is asymptotically N(0, 1/4) yet not convergent in probability.

namespace ustatlab::centered {

// a_1 = 1, a_k = k^{3/2} - (k-1)^{3/2}. Throws RangeError for k = 0.
double weight(std::size_t k);

// E h(X_i, X_{i+k}) = a_k / 2.
double lag_mean(std::size_t k);

// Y_n evaluated directly from digits in O(n); never forms the pair sum.
// Needs digits up to index n+1.
double y_n(const dyadic::BitStream& point, std::size_t n);

// Martingale-difference row d_{n,1} = 0, d_{n,j} = C(n,2)^-1 (j-1)^{3/2}
// (b_{j+1} - 1/2); sums to Y_n.
std::vector<double> martingale_row(const dyadic::BitStream& point, std::size_t n);

// O(n^2) evaluation of the centered normalized pair sum from the G_k
// membership definition (digit-window orbit matching, candidates k <= n),
// centering each pair by a_{j-i}/2. Agrees with y_n to accumulation error.
double pair_sum_oracle(const dyadic::BitStream& point, std::size_t n,
                       std::uint64_t guard_digits = 128);

// Raw h(X_i, X_j) from the membership definition (uncentered), for lag-mean
// checks.
double pair_value(const dyadic::BitStream& point, std::size_t i, std::size_t j,
                  std::uint64_t guard_digits = 128);

struct McleishDiagnostics {
    // max_j |d_{n,j}| = sqrt((n-1)^3) / (2 C(n,2)), reported exactly as the
    // radicand/denominator pair plus a floating rendering.
    BigInt max_abs_radicand;   // (n-1)^3
    BigInt max_abs_denom;      // 2 C(n,2)
    double max_abs = 0.0;
    // sum_j d_{n,j}^2; equals 1/4 for every n since (b - 1/2)^2 = 1/4 and
    // sum_{j=2..n} (j-1)^3 = C(n,2)^2.
    BigRational sum_squares;
};

// Deterministic: independent of the sample point.
McleishDiagnostics mcleish_diagnostics(std::size_t n);

struct DistributionSummary {
    std::size_t n = 0;
    std::size_t reps = 0;
    std::uint64_t seed = 0;
    std::vector<double> samples; // Y_n per replicate, replicate order
    double mean = 0.0;
    double variance = 0.0;
    double ks = 0.0; // distance to N(0, 1/4) on the first ks_reps samples
    std::size_t ks_reps = 0;
    stats::Histogram hist;
};

// M independent points, Y_n for each. Deterministic in (n, reps, seed) and
// independent of thread count.
DistributionSummary sample_distribution(std::size_t n, std::size_t reps, std::uint64_t seed,
                                        std::size_t ks_subsample = 5000, int threads = 0);

struct GapStatistics {
    std::size_t n = 0;
    std::size_t reps = 0;
    std::uint64_t seed = 0;
    std::vector<double> samples; // Y_{2n} - Y_n on the same stream
    double empirical_variance = 0.0;
    double exact_variance = 0.0; // (1/4) sum_j c_j^2 by direct summation
    double variance_std_error = 0.0; // moment-based SE of the empirical variance
};

// The non-convergence witness: Var(Y_{2n} - Y_n) stays bounded away from 0.
GapStatistics gap_statistic(std::size_t n, std::size_t reps, std::uint64_t seed,
                            int threads = 0);

// Exact variance of Y_{2n} - Y_n alone (direct summation, no sampling).
double gap_exact_variance(std::size_t n);

struct LagMeanRow {
    std::size_t j = 0;   // second index of the pair (X_1, X_j)
    double mean_abs = 0; // E|h(X_1, X_j)| = a_{j-1}/2
};

// Tabulates E|h(X_1, X_j)| = a_{j-1}/2 for 2 <= j <= j_max; the sequence is
// nondecreasing and unbounded, so sup_j E|h(X_1, X_j)| is infinite.
std::vector<LagMeanRow> unbounded_mean_table(std::size_t j_max);

} // namespace ustatlab::centered

#endif
