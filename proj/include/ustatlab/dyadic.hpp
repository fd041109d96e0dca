#ifndef USTATLAB_DYADIC_HPP
#define USTATLAB_DYADIC_HPP

#include "ustatlab/bigmath.hpp"

#include <cstdint>
#include <memory>
#include <vector>

// Exact representation of points of [0,1) by their binary digits. The
// doubling map x -> 2x mod 1 acts as a one-digit left shift, so iterating it
// never loses precision: orbits live on digit indices, not on floats (a
// 53-bit float collapses to 0 after at most 53 doublings).

namespace ustatlab::dyadic {

// A point of [0,1) as a lazily extendable digit sequence b_1, b_2, ...
// with x = sum_m b_m 2^-m.
//
// Digits are a pure function of (seed, index): digit blocks come from a
// counter-based generator, so re-reading any digit returns the same bit and
// two streams with equal seeds agree everywhere, independent of request
// order. Copies share the underlying digit store; a shifted view reuses it
// with an index offset, so T^k costs nothing.
//
// Materialized digits are immutable and freely shareable across threads;
// extension (reading past materialized()) is single-writer. Experiments
// parallelize per replicate, never inside one stream.
class BitStream {
public:
    // Digit materialization cap; guards against runaway memory from
    // mis-configured experiments.
    static constexpr std::uint64_t kMaxDigits = std::uint64_t{1} << 24;

    // Point with i.i.d. fair digits determined by `seed`.
    static BitStream from_seed(std::uint64_t seed);

    // Point with the given leading digits, all later digits 0. Used for
    // hand-checked fixtures; sampled points never hit such sequences
    // (dyadic rationals have probability zero).
    static BitStream from_bits(const std::vector<int>& bits);

    // m-th binary digit (m >= 1), extending the stream if needed.
    // Throws RangeError for m = 0, ResourceError past kMaxDigits.
    int digit(std::uint64_t m) const;

    // View of T^k applied to this point: digit(result, m) == digit(*this, m+k).
    // No digits are copied.
    BitStream shifted(std::uint64_t k) const;

    // Value of the first m digits as an exact rational in [0,1);
    // |approx(m) - x| < 2^-m.
    BigRational approx(std::uint64_t m) const;

    // Same prefix value rounded to double. Uses an integer fast path for
    // m <= 64, exact-rational conversion beyond.
    double approx_double(std::uint64_t m) const;

    std::uint64_t seed() const;
    std::uint64_t offset() const { return offset_; }

    // Count of digits generated so far (absolute indices, ignoring offset).
    std::uint64_t materialized() const;

private:
    struct State;
    BitStream(std::shared_ptr<State> state, std::uint64_t offset)
        : state_(std::move(state)), offset_(offset) {}

    std::shared_ptr<State> state_;
    std::uint64_t offset_ = 0;
};

// Half-open dyadic interval I_{j,l} = [(l-1)/2^j, l/2^j), 1 <= l <= 2^j.
// Level-j intervals partition [0,1).
struct DyadicInterval {
    int level = 1;           // j >= 1 (<= 62 so indices fit a word)
    std::uint64_t index = 1; // l

    double lower() const;
    double upper() const;
};

BitStream make_point(std::uint64_t seed);
BitStream shift(const BitStream& p, std::uint64_t k);
int digit(const BitStream& p, std::uint64_t m);
BigRational approx(const BitStream& p, std::uint64_t m);
double approx_double(const BitStream& p, std::uint64_t m);

// True iff p lies in iv; reads exactly iv.level digits.
bool in_interval(const BitStream& p, const DyadicInterval& iv);

// 1-based index l of the level-j interval containing p (reads j digits).
std::uint64_t interval_index(const BitStream& p, int level);

// Digit-for-digit equality of the first `ndigits` digits of a and b.
bool window_equal(const BitStream& a, const BitStream& b, std::uint64_t ndigits);

} // namespace ustatlab::dyadic

#endif
