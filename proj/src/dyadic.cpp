#include "ustatlab/dyadic.hpp"

#include "ustatlab/errors.hpp"
#include "ustatlab/rng.hpp"

#include <cmath>
#include <string>

namespace ustatlab::dyadic {

// Digits are packed 64 per block, digit 1 in bit 0 of block 0. For seeded
// streams block i is rng::block(seed, i); for fixed-digit streams the blocks
// are materialized up front and reads past the end return 0.
struct BitStream::State {
    std::uint64_t seed = 0;
    bool counter_based = true;
    std::vector<std::uint64_t> blocks;

    void ensure_block(std::uint64_t b) {
        if (!counter_based) return; // fixed streams are complete; tail is zero
        while (blocks.size() <= b) {
            blocks.push_back(rng::block(seed, blocks.size()));
        }
    }

    int bit(std::uint64_t m) { // m >= 1
        const std::uint64_t b = (m - 1) >> 6;
        if (!counter_based && b >= blocks.size()) return 0;
        ensure_block(b);
        return static_cast<int>((blocks[b] >> ((m - 1) & 63)) & 1u);
    }
};

BitStream BitStream::from_seed(std::uint64_t seed) {
    auto st = std::make_shared<State>();
    st->seed = seed;
    st->counter_based = true;
    return BitStream(std::move(st), 0);
}

BitStream BitStream::from_bits(const std::vector<int>& bits) {
    auto st = std::make_shared<State>();
    st->counter_based = false;
    st->blocks.assign((bits.size() + 63) / 64, 0);
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] != 0 && bits[i] != 1) {
            throw ConfigError("BitStream::from_bits: digit must be 0 or 1");
        }
        if (bits[i]) st->blocks[i >> 6] |= std::uint64_t{1} << (i & 63);
    }
    return BitStream(std::move(st), 0);
}

int BitStream::digit(std::uint64_t m) const {
    if (m == 0) throw RangeError("BitStream::digit: index must be >= 1");
    const std::uint64_t abs = m + offset_;
    if (abs < m || abs > kMaxDigits) {
        throw ResourceError("BitStream::digit: index " + std::to_string(m) + " (+offset " +
                            std::to_string(offset_) + ") exceeds the materialization cap");
    }
    return state_->bit(abs);
}

BitStream BitStream::shifted(std::uint64_t k) const {
    return BitStream(state_, offset_ + k);
}

std::uint64_t BitStream::seed() const { return state_->seed; }

std::uint64_t BitStream::materialized() const {
    return state_->blocks.size() * 64;
}

BigRational BitStream::approx(std::uint64_t m) const {
    if (m == 0) throw RangeError("BitStream::approx: need at least one digit");
    BigInt num = 0;
    for (std::uint64_t i = 1; i <= m; ++i) {
        num <<= 1;
        num |= digit(i);
    }
    BigInt den = BigInt(1) << static_cast<unsigned>(m);
    return BigRational(num, den);
}

double BitStream::approx_double(std::uint64_t m) const {
    if (m == 0) throw RangeError("BitStream::approx_double: need at least one digit");
    if (m <= 64) {
        std::uint64_t num = 0;
        for (std::uint64_t i = 1; i <= m; ++i) {
            num = (num << 1) | static_cast<std::uint64_t>(digit(i));
        }
        return std::ldexp(static_cast<double>(num), -static_cast<int>(m));
    }
    return to_double(approx(m));
}

double DyadicInterval::lower() const {
    return std::ldexp(static_cast<double>(index - 1), -level);
}

double DyadicInterval::upper() const {
    return std::ldexp(static_cast<double>(index), -level);
}

BitStream make_point(std::uint64_t seed) { return BitStream::from_seed(seed); }
BitStream shift(const BitStream& p, std::uint64_t k) { return p.shifted(k); }
int digit(const BitStream& p, std::uint64_t m) { return p.digit(m); }
BigRational approx(const BitStream& p, std::uint64_t m) { return p.approx(m); }
double approx_double(const BitStream& p, std::uint64_t m) { return p.approx_double(m); }

static void check_interval(const DyadicInterval& iv) {
    if (iv.level < 1 || iv.level > 62) {
        throw RangeError("DyadicInterval: level must be in [1, 62]");
    }
    if (iv.index < 1 || iv.index > (std::uint64_t{1} << iv.level)) {
        throw RangeError("DyadicInterval: index out of [1, 2^level]");
    }
}

bool in_interval(const BitStream& p, const DyadicInterval& iv) {
    check_interval(iv);
    // x in I_{j,l} iff the first j digits encode l-1.
    std::uint64_t prefix = 0;
    for (int i = 1; i <= iv.level; ++i) {
        prefix = (prefix << 1) | static_cast<std::uint64_t>(p.digit(i));
    }
    return prefix == iv.index - 1;
}

std::uint64_t interval_index(const BitStream& p, int level) {
    check_interval(DyadicInterval{level, 1});
    std::uint64_t prefix = 0;
    for (int i = 1; i <= level; ++i) {
        prefix = (prefix << 1) | static_cast<std::uint64_t>(p.digit(i));
    }
    return prefix + 1;
}

bool window_equal(const BitStream& a, const BitStream& b, std::uint64_t ndigits) {
    for (std::uint64_t m = 1; m <= ndigits; ++m) {
        if (a.digit(m) != b.digit(m)) return false;
    }
    return true;
}

} // namespace ustatlab::dyadic
