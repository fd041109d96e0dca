#ifndef USTATLAB_BIGMATH_HPP
#define USTATLAB_BIGMATH_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace ustatlab {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// n(n-1)/2 without overflow for unbounded n.
inline BigInt binom2(const BigInt& n) {
    return n * (n - 1) / 2;
}

inline double to_double(const BigRational& q) {
    return q.convert_to<double>();
}

// Decimal rendering with a fixed number of fractional places, round half
// away from zero. Deterministic across platforms; used for CSV cells.
std::string decimal_string(const BigRational& q, int places = 12);

// Canonical "num/den" form ("0" when zero, "n" when integral).
std::string fraction_string(const BigRational& q);

} // namespace ustatlab

#endif
