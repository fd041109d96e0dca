#ifndef USTATLAB_STATS_HPP
#define USTATLAB_STATS_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace ustatlab::stats {

// Kahan compensated accumulator; keeps long pair sums within a few ulp.
class KahanSum {
public:
    void add(double x) {
        double y = x - c_;
        double t = sum_ + y;
        c_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double c_ = 0.0;
};

double mean(std::span<const double> xs);

// Unbiased sample variance (denominator n-1).
double variance(std::span<const double> xs);

// Lag-k sample autocorrelation.
double autocorrelation(std::span<const double> xs, std::size_t lag);

// Standard normal CDF.
double normal_cdf(double x);

// Inverse standard normal CDF: rational approximation refined by one Halley
// step, accurate to ~1e-15 over (0,1).
double inverse_normal_cdf(double p);

// One-sample Kolmogorov-Smirnov distance sup_x |F_n(x) - Phi((x-mu)/sigma)|.
double ks_distance_normal(std::vector<double> samples, double mu, double sigma);

// Two-sample Kolmogorov-Smirnov distance.
double ks_distance_two_sample(std::vector<double> a, std::vector<double> b);

struct Histogram {
    double lo = 0.0;
    double hi = 1.0;
    std::vector<std::uint64_t> counts;
    std::uint64_t underflow = 0;
    std::uint64_t overflow = 0;
};

Histogram histogram(std::span<const double> xs, double lo, double hi, std::size_t bins);

} // namespace ustatlab::stats

#endif
