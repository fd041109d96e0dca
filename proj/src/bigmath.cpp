#include "ustatlab/bigmath.hpp"

namespace ustatlab {

std::string decimal_string(const BigRational& q, int places) {
    BigInt num = boost::multiprecision::numerator(q);
    BigInt den = boost::multiprecision::denominator(q);
    bool neg = num < 0;
    if (neg) num = -num;

    BigInt scale = 1;
    for (int i = 0; i < places; ++i) scale *= 10;

    // round half away from zero at the last kept place
    BigInt scaled = (num * scale * 2 + den) / (den * 2);
    BigInt whole = scaled / scale;
    BigInt frac = scaled % scale;

    std::string f = frac.str();
    if (static_cast<int>(f.size()) < places) f.insert(0, places - f.size(), '0');

    std::string out;
    if (neg && (whole != 0 || frac != 0)) out += '-';
    out += whole.str();
    if (places > 0) {
        out += '.';
        out += f;
    }
    return out;
}

std::string fraction_string(const BigRational& q) {
    BigInt num = boost::multiprecision::numerator(q);
    BigInt den = boost::multiprecision::denominator(q);
    if (num == 0) return "0";
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

} // namespace ustatlab
