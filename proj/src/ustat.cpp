#include "ustatlab/ustat.hpp"

#include "ustatlab/errors.hpp"
#include "ustatlab/report.hpp"
#include "ustatlab/stats.hpp"

#include <cmath>
#include <sstream>

namespace ustatlab::engine {

namespace {

double binom2_d(std::size_t n) {
    return 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
}

void check_n(const processes::SamplePath& path, std::size_t n, const char* where) {
    if (n < 2) throw RangeError(std::string(where) + ": need n >= 2");
    if (n > path.size()) {
        throw RangeError(std::string(where) + ": n exceeds the path length");
    }
}

// The direct paths (u_naive, v_plugin) evaluate the kernel on coordinates
// and fall back to the lag representation; u_series prefers the lag
// representation so extension rows skip evaluate entirely.
double eval_pair(const Kernel& kernel, const processes::SamplePath& path, std::size_t i,
                 std::size_t j, bool prefer_lag) {
    double v;
    const bool use_lag = prefer_lag ? static_cast<bool>(kernel.lag_form)
                                    : !static_cast<bool>(kernel.evaluate);
    if (use_lag && kernel.lag_form) {
        v = kernel.lag_form(j - i, j, path);
    } else if (kernel.evaluate) {
        v = kernel.evaluate(path.x(i), path.x(j));
    } else {
        throw ConfigError("kernel '" + kernel.name + "' has neither evaluate nor lag_form");
    }
    if (!std::isfinite(v)) {
        std::ostringstream os;
        os << "non-finite kernel value at pair (i, j) = (" << i << ", " << j << ")";
        throw NumericError(os.str());
    }
    return v;
}

// Mean of h over prefix n from the lag means:
// sum_{i<j<=n} mu(j-i) = sum_{k<n} (n-k) mu(k), maintained incrementally.
class LagMeanAccumulator {
public:
    explicit LagMeanAccumulator(const std::function<double(std::size_t)>& mu) : mu_(mu) {}

    // extend from row n-1 to row n
    void extend(std::size_t n) {
        if (n < 2) return;
        prefix_.add(mu_(n - 1)); // sum_{k<=n-1} mu(k)
        total_.add(prefix_.value());
    }

    double total() const { return total_.value(); }

private:
    const std::function<double(std::size_t)>& mu_;
    stats::KahanSum prefix_; // sum_{k<n} mu(k)
    stats::KahanSum total_;  // sum_{k<n} (n-k) mu(k)
};

} // namespace

double u_naive(const processes::SamplePath& path, const Kernel& kernel, std::size_t n) {
    check_n(path, n, "u_naive");
    if (!kernel.evaluate && !kernel.lag_form) {
        throw ConfigError("u_naive: kernel '" + kernel.name + "' is not evaluable");
    }
    stats::KahanSum s;
    for (std::size_t j = 2; j <= n; ++j) {
        for (std::size_t i = 1; i < j; ++i) {
            s.add(eval_pair(kernel, path, i, j, /*prefer_lag=*/false));
        }
    }
    return s.value() / binom2_d(n);
}

double v_plugin(const processes::SamplePath& path, const Kernel& kernel, std::size_t n) {
    check_n(path, n, "v_plugin");
    stats::KahanSum s;
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= n; ++j) {
            double v = i == j ? kernel.diagonal(path.x(i))
                              : eval_pair(kernel, path, std::min(i, j), std::max(i, j),
                                          /*prefer_lag=*/false);
            if (!std::isfinite(v)) {
                std::ostringstream os;
                os << "v_plugin: non-finite value at (i, j) = (" << i << ", " << j << ")";
                throw NumericError(os.str());
            }
            s.add(v);
        }
    }
    const double nd = static_cast<double>(n);
    return s.value() / (nd * nd);
}

double diagonal_sum(const processes::SamplePath& path, const Kernel& kernel, std::size_t n) {
    if (n < 1 || n > path.size()) throw RangeError("diagonal_sum: n out of range");
    stats::KahanSum s;
    for (std::size_t i = 1; i <= n; ++i) {
        const double v = kernel.diagonal(path.x(i));
        if (!std::isfinite(v)) {
            std::ostringstream os;
            os << "diagonal_sum: non-finite value at i = " << i;
            throw NumericError(os.str());
        }
        s.add(v);
    }
    return s.value();
}

UStatSeries u_series(const processes::SamplePath& path, const Kernel& kernel,
                     std::vector<std::size_t> grid) {
    if (grid.empty()) throw RangeError("u_series: empty grid");
    for (std::size_t g = 0; g < grid.size(); ++g) {
        if (grid[g] < 2) throw RangeError("u_series: grid entries must be >= 2");
        if (g > 0 && grid[g] <= grid[g - 1]) {
            throw RangeError("u_series: grid must be strictly increasing");
        }
    }
    const std::size_t n_max = grid.back();
    check_n(path, n_max, "u_series");

    UStatSeries out;
    out.grid = grid;
    out.u.reserve(grid.size());
    out.v.reserve(grid.size());
    const bool with_centered = static_cast<bool>(kernel.lag_mean);
    if (with_centered) out.centered.reserve(grid.size());

    LagMeanAccumulator mean_acc(kernel.lag_mean);

    stats::KahanSum pair_sum; // S_n = sum_{i<j<=n} h, extended row by row
    stats::KahanSum diag_sum; // sum_{i<=n} h(X_i, X_i)
    std::size_t next = 0;
    for (std::size_t j = 1; j <= n_max; ++j) {
        diag_sum.add(kernel.diagonal(path.x(j)));
        for (std::size_t i = 1; i < j; ++i) {
            pair_sum.add(eval_pair(kernel, path, i, j, /*prefer_lag=*/true));
        }
        if (with_centered) mean_acc.extend(j);
        if (next < grid.size() && grid[next] == j) {
            const double pairs = binom2_d(j);
            const double nd = static_cast<double>(j);
            out.u.push_back(pair_sum.value() / pairs);
            out.v.push_back((2.0 * pair_sum.value() + diag_sum.value()) / (nd * nd));
            if (with_centered) {
                out.centered.push_back((pair_sum.value() - mean_acc.total()) / pairs);
            }
            ++next;
        }
    }
    return out;
}

UStatSeries center(const UStatSeries& series, const Kernel& kernel) {
    if (!kernel.lag_mean) {
        throw ConfigError("center: kernel '" + kernel.name + "' has no lag_mean");
    }
    UStatSeries out = series;
    out.centered.clear();
    out.centered.reserve(series.grid.size());

    LagMeanAccumulator mean_acc(kernel.lag_mean);
    std::size_t next = 0;
    const std::size_t n_max = series.grid.back();
    for (std::size_t n = 1; n <= n_max; ++n) {
        mean_acc.extend(n);
        if (next < series.grid.size() && series.grid[next] == n) {
            out.centered.push_back(series.u[next] - mean_acc.total() / binom2_d(n));
            ++next;
        }
    }
    return out;
}

std::string UStatSeries::to_csv() const {
    std::string s = "n,u,v,centered\n";
    for (std::size_t g = 0; g < grid.size(); ++g) {
        s += std::to_string(grid[g]);
        s += ',';
        s += report::format_double(u[g]);
        s += ',';
        s += report::format_double(v[g]);
        s += ',';
        if (g < centered.size()) s += report::format_double(centered[g]);
        s += '\n';
    }
    return s;
}

} // namespace ustatlab::engine
