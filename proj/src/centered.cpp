#include "ustatlab/centered.hpp"

#include "ustatlab/errors.hpp"
#include "ustatlab/parallel.hpp"
#include "ustatlab/rng.hpp"

#include <cmath>

namespace ustatlab::centered {

double weight(std::size_t k) {
    if (k == 0) throw RangeError("weight: k must be >= 1");
    if (k == 1) return 1.0;
    const double kd = static_cast<double>(k);
    return kd * std::sqrt(kd) - (kd - 1.0) * std::sqrt(kd - 1.0);
}

double lag_mean(std::size_t k) { return 0.5 * weight(k); }

namespace {

double binom2_d(std::size_t n) {
    return 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
}

double weight_partial(std::size_t j) { // (j-1)^{3/2}
    const double m = static_cast<double>(j - 1);
    return m * std::sqrt(m);
}

} // namespace

double y_n(const dyadic::BitStream& point, std::size_t n) {
    if (n < 2) throw RangeError("y_n: need n >= 2");
    stats::KahanSum s;
    for (std::size_t j = 2; j <= n; ++j) {
        const double sign = point.digit(j + 1) ? 0.5 : -0.5;
        s.add(weight_partial(j) * sign);
    }
    return s.value() / binom2_d(n);
}

std::vector<double> martingale_row(const dyadic::BitStream& point, std::size_t n) {
    if (n < 2) throw RangeError("martingale_row: need n >= 2");
    std::vector<double> d(n, 0.0); // d[j-1] = d_{n,j}; d_{n,1} = 0
    const double pairs = binom2_d(n);
    for (std::size_t j = 2; j <= n; ++j) {
        const double sign = point.digit(j + 1) ? 0.5 : -0.5;
        d[j - 1] = weight_partial(j) * sign / pairs;
    }
    return d;
}

double pair_value(const dyadic::BitStream& point, std::size_t i, std::size_t j,
                  std::uint64_t guard_digits) {
    if (i == 0 || j <= i) throw RangeError("pair_value: need 1 <= i < j");
    // h(x,y) = sum_k a_k (1_{G_k}(x,y) + 1_{G_k}(y,x)) with
    // G_k = {(x, T^k x) : T^k x in [1/2, 1)}. Membership of (X_i, X_j):
    // T^{i+k} x == T^j x over the guard window and digit(x, i+k+1) = 1.
    // Candidates scan k <= j (wider lags only match by collision).
    double h = 0.0;
    for (std::size_t k = 1; k <= j; ++k) {
        if (point.digit(i + k + 1) == 1 &&
            dyadic::window_equal(dyadic::shift(point, i + k), dyadic::shift(point, j),
                                 guard_digits)) {
            h += weight(k);
            break;
        }
    }
    for (std::size_t k = 1; k <= j; ++k) {
        if (point.digit(j + k + 1) == 1 &&
            dyadic::window_equal(dyadic::shift(point, j + k), dyadic::shift(point, i),
                                 guard_digits)) {
            h += weight(k);
            break;
        }
    }
    return h;
}

double pair_sum_oracle(const dyadic::BitStream& point, std::size_t n,
                       std::uint64_t guard_digits) {
    if (n < 2) throw RangeError("pair_sum_oracle: need n >= 2");
    stats::KahanSum s;
    for (std::size_t j = 2; j <= n; ++j) {
        for (std::size_t i = 1; i < j; ++i) {
            s.add(pair_value(point, i, j, guard_digits) - lag_mean(j - i));
        }
    }
    return s.value() / binom2_d(n);
}

McleishDiagnostics mcleish_diagnostics(std::size_t n) {
    if (n < 2) throw RangeError("mcleish_diagnostics: need n >= 2");
    McleishDiagnostics out;
    const BigInt n_big(static_cast<std::uint64_t>(n));
    const BigInt pairs = binom2(n_big);

    out.max_abs_radicand = (n_big - 1) * (n_big - 1) * (n_big - 1);
    out.max_abs_denom = 2 * pairs;
    out.max_abs = std::sqrt(out.max_abs_radicand.convert_to<double>()) /
                  out.max_abs_denom.convert_to<double>();

    // sum_j d_{n,j}^2 = sum_{j=2..n} (j-1)^3 / (4 C(n,2)^2); the cubes sum
    // telescopes to C(n,2)^2, so this is exactly 1/4.
    BigInt cubes = 0;
    for (std::size_t j = 2; j <= n; ++j) {
        const BigInt m(static_cast<std::uint64_t>(j - 1));
        cubes += m * m * m;
    }
    out.sum_squares = BigRational(cubes, 4 * pairs * pairs);
    return out;
}

DistributionSummary sample_distribution(std::size_t n, std::size_t reps, std::uint64_t seed,
                                        std::size_t ks_subsample, int threads) {
    if (n < 2) throw RangeError("sample_distribution: need n >= 2");
    if (reps < 100) throw RangeError("sample_distribution: need reps >= 100");

    DistributionSummary out;
    out.n = n;
    out.reps = reps;
    out.seed = seed;
    out.samples.assign(reps, 0.0);
    parallel_for(reps, threads, [&](std::size_t r) {
        const auto point = dyadic::make_point(rng::split_seed(seed, r));
        out.samples[r] = y_n(point, n);
    });

    out.mean = stats::mean(out.samples);
    out.variance = stats::variance(out.samples);
    out.ks_reps = std::min(ks_subsample, reps);
    std::vector<double> head(out.samples.begin(),
                             out.samples.begin() + static_cast<std::ptrdiff_t>(out.ks_reps));
    out.ks = stats::ks_distance_normal(std::move(head), 0.0, 0.5);
    out.hist = stats::histogram(out.samples, -2.0, 2.0, 40);
    return out;
}

double gap_exact_variance(std::size_t n) {
    if (n < 2) throw RangeError("gap_exact_variance: need n >= 2");
    const double pairs_2n = binom2_d(2 * n);
    const double pairs_n = binom2_d(n);
    stats::KahanSum s;
    for (std::size_t j = 2; j <= 2 * n; ++j) {
        double c = weight_partial(j) / pairs_2n;
        if (j <= n) c -= weight_partial(j) / pairs_n;
        s.add(c * c);
    }
    return 0.25 * s.value();
}

GapStatistics gap_statistic(std::size_t n, std::size_t reps, std::uint64_t seed, int threads) {
    if (n < 2) throw RangeError("gap_statistic: need n >= 2");
    if (reps < 2) throw RangeError("gap_statistic: need reps >= 2");

    GapStatistics out;
    out.n = n;
    out.reps = reps;
    out.seed = seed;
    out.samples.assign(reps, 0.0);
    parallel_for(reps, threads, [&](std::size_t r) {
        const auto point = dyadic::make_point(rng::split_seed(seed, r));
        out.samples[r] = y_n(point, 2 * n) - y_n(point, n);
    });

    out.empirical_variance = stats::variance(out.samples);
    out.exact_variance = gap_exact_variance(n);

    // SE of the sample variance from the empirical fourth moment.
    const double m = stats::mean(out.samples);
    stats::KahanSum fourth;
    for (double x : out.samples) {
        const double d2 = (x - m) * (x - m);
        fourth.add(d2 * d2);
    }
    const double mu4 = fourth.value() / static_cast<double>(reps);
    const double var2 = out.empirical_variance * out.empirical_variance;
    out.variance_std_error =
        std::sqrt(std::max(0.0, mu4 - var2) / static_cast<double>(reps));
    return out;
}

std::vector<LagMeanRow> unbounded_mean_table(std::size_t j_max) {
    if (j_max < 2) throw RangeError("unbounded_mean_table: need j_max >= 2");
    std::vector<LagMeanRow> rows;
    rows.reserve(j_max - 1);
    for (std::size_t j = 2; j <= j_max; ++j) {
        rows.push_back({j, lag_mean(j - 1)});
    }
    return rows;
}

} // namespace ustatlab::centered
