#ifndef USTATLAB_OSCILLATE_HPP
#define USTATLAB_OSCILLATE_HPP

#include "ustatlab/bigmath.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <string>
#include <vector>

// Reconstruction of the first counterexample: an index ladder (N_l, N'_l)
// drives a lag set I = union of integer intervals (N'_l, N_{l+1}]; the
// kernel fires exactly when the pair gap lies in I, so the U-statistic has
// an exact closed form whose normalized values oscillate between separated
// limits along the two subsequences. All arithmetic is exact (unbounded
// integers / rationals); floating point appears only in report rendering.

namespace ustatlab::oscillate {

// Interleaved index sequences N_1 < N'_1 < N_2 < ... with N'_0 = 1,
// N'_l >= l * N_l, and N_{l+1}/N'_l strictly increasing.
struct IndexLadder {
    std::vector<BigInt> big_n;    // N_1..N_L
    std::vector<BigInt> n_prime;  // N'_0..N'_L

    std::size_t depth() const { return big_n.size(); }

    // Every invariant violation, one message each; empty means valid.
    std::vector<std::string> violations() const;
    // Throws ConfigError listing all violations.
    void validate() const;

    nlohmann::json to_json() const;
    static IndexLadder from_json(const nlohmann::json& j);
};

// Canonical ladder: N_1 = 2, N'_l = max(l,2) N_l, N_{l+1} = 2^l N'_l.
// Then N'_l/N_l >= l and N_{l+1}/N'_l = 2^l.
IndexLadder default_ladder(std::size_t levels);

// Lag set I = union_{l>=0} I_l, I_l = { k : N'_l < k <= N_{l+1} }.
// Membership is decidable for any k <= N'_L: lags in (N_L, N'_L] are below
// the start of the unbuilt interval I_L, hence not in I.
class LagSet {
public:
    explicit LagSet(IndexLadder ladder); // validates
    const IndexLadder& ladder() const { return ladder_; }

    // True iff k lies in some I_l. Throws RangeError outside [1, max_lag()]
    // rather than silently answering.
    bool contains(const BigInt& k) const;

    // Largest k with decidable membership (= N'_L).
    const BigInt& max_lag() const { return ladder_.n_prime.back(); }

private:
    IndexLadder ladder_;
};

struct ExactSum {
    BigInt s;               // S(n) = sum_{k<n} (n-k) 1{k in I}
    BigRational u_norm;     // S / C(n,2)
    BigRational paper_norm; // S / (n(n-1)) = u_norm / 2
};

// Per-interval arithmetic-series evaluation, O(L) regardless of n.
// Requires 2 <= n <= max_lag().
ExactSum exact_sum(const BigInt& n, const LagSet& lags);

struct AbDecomposition {
    BigRational a; // intervals I_0..I_{l-2}, normalized by N_l(N_l - 1)
    BigRational b; // interval I_{l-1}
};

// Splits the normalized sum at n = N_level into the vanishing head and the
// dominant last-interval part; a + b equals exact_sum(N_level).paper_norm
// exactly. Requires 3 <= level <= depth.
AbDecomposition ab_decomposition(std::size_t level, const LagSet& lags);

struct OscillationRow {
    std::size_t level = 0;
    BigInt n;
    std::string which; // "N" or "N'"
    BigInt s;
    BigRational u_norm;
    BigRational paper_norm;
};

// Exact values along both subsequences, two rows per level.
std::vector<OscillationRow> oscillation_report(const LagSet& lags);

struct Mismatch {
    std::size_t i = 0;
    std::size_t j = 0;
    std::uint64_t lag = 0; // candidate k that fired (0 = none where one was expected)
    std::string note;
};

struct SimulateCheckResult {
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::uint64_t guard_digits = 0;
    std::vector<Mismatch> mismatches;
    BigInt pair_sum;     // sum of directly evaluated h over pairs
    BigInt expected_sum; // exact_sum(n).s
    bool ok = false;     // no mismatches and pair_sum == expected_sum

    // U-statistic of the direct evaluation, exact.
    BigRational u_value() const;
};

// Evaluates h(X_i, X_j) from the orbit-membership definition on a sampled
// point: (X_i, X_j) in G iff the digits of T^{i+k} x match those of T^j x
// over a guard window for some k in I. Candidates scan I cap [1, n] (a true
// match inside a length-n window has k = j-i; wider lags can only collide
// with probability 2^-guard). Each pair is compared against 1{j-i in I}.
SimulateCheckResult simulate_check(std::size_t n, std::uint64_t seed, const LagSet& lags,
                                   std::uint64_t guard_digits = 128);

} // namespace ustatlab::oscillate

#endif
