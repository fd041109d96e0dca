#ifndef USTATLAB_USTAT_HPP
#define USTATLAB_USTAT_HPP

#include "ustatlab/kernel.hpp"
#include "ustatlab/processes.hpp"

#include <cstddef>
#include <string>
#include <vector>

// Order-2 U-statistics U_n = C(n,2)^-1 sum_{i<j} h(X_i, X_j), the plug-in
// V-statistic V_n = n^-2 sum_{i,j} h(X_i, X_j), and lag-mean centering.
//
// All pair sums run in one fixed order (j ascending, i ascending within the
// row) through compensated accumulators, so every path to the same value is
// bit-reproducible and u_series matches u_naive exactly.

namespace ustatlab::engine {

// Prefix-indexed values over an increasing grid of sample sizes.
struct UStatSeries {
    std::vector<std::size_t> grid;
    std::vector<double> u;
    std::vector<double> v;
    std::vector<double> centered; // empty when the kernel has no lag_mean

    // CSV with header n,u,v,centered; centered cells empty when undefined.
    std::string to_csv() const;
};

// Direct double-loop evaluation; the reference oracle for all faster paths.
double u_naive(const processes::SamplePath& path, const Kernel& kernel, std::size_t n);

// Full n x n loop including the diagonal (the empirical product-measure
// integral). Independent of u_naive so the U/V identity is a real check.
double v_plugin(const processes::SamplePath& path, const Kernel& kernel, std::size_t n);

// Incremental evaluation over a grid: one O(n_max^2) sweep total, not per
// grid point. Uses kernel.lag_form for extension rows when present (skipping
// evaluate); fills centered when kernel.lag_mean is present.
UStatSeries u_series(const processes::SamplePath& path, const Kernel& kernel,
                     std::vector<std::size_t> grid);

// centered_n = u_n - C(n,2)^-1 sum_{k<n} (n-k) mu(k).
// Throws ConfigError when kernel.lag_mean is missing.
UStatSeries center(const UStatSeries& series, const Kernel& kernel);

// sum_{i<=n} h(X_i, X_i).
double diagonal_sum(const processes::SamplePath& path, const Kernel& kernel, std::size_t n);

} // namespace ustatlab::engine

#endif
