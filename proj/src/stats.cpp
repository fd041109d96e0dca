#include "ustatlab/stats.hpp"

#include "ustatlab/errors.hpp"

#include <algorithm>
#include <cmath>

namespace ustatlab::stats {

double mean(std::span<const double> xs) {
    if (xs.empty()) throw RangeError("mean: empty sample");
    KahanSum s;
    for (double x : xs) s.add(x);
    return s.value() / static_cast<double>(xs.size());
}

double variance(std::span<const double> xs) {
    if (xs.size() < 2) throw RangeError("variance: need at least two samples");
    const double m = mean(xs);
    KahanSum s;
    for (double x : xs) s.add((x - m) * (x - m));
    return s.value() / static_cast<double>(xs.size() - 1);
}

double autocorrelation(std::span<const double> xs, std::size_t lag) {
    if (xs.size() <= lag + 1) throw RangeError("autocorrelation: sample too short for lag");
    const double m = mean(xs);
    KahanSum num, den;
    for (std::size_t i = 0; i + lag < xs.size(); ++i) {
        num.add((xs[i] - m) * (xs[i + lag] - m));
    }
    for (double x : xs) den.add((x - m) * (x - m));
    return num.value() / den.value();
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

// Rational approximation (relative error ~1.15e-9) followed by one Halley
// step against erfc, which brings the result to near machine precision.
double inverse_normal_cdf(double p) {
    if (!(p > 0.0 && p < 1.0)) throw RangeError("inverse_normal_cdf: p must be in (0,1)");

    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};

    const double p_low = 0.02425;
    double x;
    if (p < p_low) {
        double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        double q = p - 0.5;
        double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
    const double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
    x = x - u / (1.0 + x * u / 2.0);
    return x;
}

double ks_distance_normal(std::vector<double> samples, double mu, double sigma) {
    if (samples.empty()) throw RangeError("ks_distance_normal: empty sample");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = normal_cdf((samples[i] - mu) / sigma);
        const double lo = static_cast<double>(i) / n;
        const double hi = static_cast<double>(i + 1) / n;
        d = std::max(d, std::max(hi - f, f - lo));
    }
    return d;
}

double ks_distance_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw RangeError("ks_distance_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t ia = 0, ib = 0;
    double d = 0.0;
    while (ia < a.size() && ib < b.size()) {
        const double x = std::min(a[ia], b[ib]);
        while (ia < a.size() && a[ia] <= x) ++ia;
        while (ib < b.size() && b[ib] <= x) ++ib;
        d = std::max(d, std::fabs(static_cast<double>(ia) / na - static_cast<double>(ib) / nb));
    }
    return d;
}

Histogram histogram(std::span<const double> xs, double lo, double hi, std::size_t bins) {
    if (bins == 0 || !(hi > lo)) throw ConfigError("histogram: need bins > 0 and hi > lo");
    Histogram h;
    h.lo = lo;
    h.hi = hi;
    h.counts.assign(bins, 0);
    const double w = (hi - lo) / static_cast<double>(bins);
    for (double x : xs) {
        if (x < lo) {
            ++h.underflow;
        } else if (x >= hi) {
            ++h.overflow;
        } else {
            auto idx = static_cast<std::size_t>((x - lo) / w);
            if (idx >= bins) idx = bins - 1;
            ++h.counts[idx];
        }
    }
    return h;
}

} // namespace ustatlab::stats
