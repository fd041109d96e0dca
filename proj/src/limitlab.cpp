#include "ustatlab/limitlab.hpp"

#include "ustatlab/errors.hpp"
#include "ustatlab/parallel.hpp"
#include "ustatlab/rng.hpp"
#include "ustatlab/stats.hpp"
#include "ustatlab/ustat.hpp"

#include <cmath>

namespace ustatlab::limitlab {

std::vector<std::size_t> dyadic_grid(std::size_t n_max, std::size_t n_min) {
    if (n_max < 2) throw RangeError("dyadic_grid: need n_max >= 2");
    if (n_min < 2) n_min = 2;
    std::vector<std::size_t> grid;
    for (std::size_t n = n_min; n < n_max; n *= 2) grid.push_back(n);
    if (grid.empty() || grid.back() != n_max) grid.push_back(n_max);
    return grid;
}

namespace {

void check_experiment(const ConvergenceExperiment& exp) {
    exp.spec.validate();
    if (exp.n_grid.empty()) throw ConfigError("experiment: empty n grid");
    for (std::size_t g = 1; g < exp.n_grid.size(); ++g) {
        if (exp.n_grid[g] <= exp.n_grid[g - 1]) {
            throw ConfigError("experiment: n grid must be increasing");
        }
    }
    if (exp.reps < 1) throw ConfigError("experiment: need reps >= 1");
    if (!std::isfinite(exp.target)) throw ConfigError("experiment: target must be finite");
}

// One replicate's U_n trajectory over the grid.
std::vector<double> replicate_trajectory(const ConvergenceExperiment& exp, std::size_t rep) {
    const auto path =
        processes::generate(exp.spec, exp.n_grid.back(), rng::split_seed(exp.seed, rep));
    const auto series = engine::u_series(path, exp.kernel, exp.n_grid);
    return series.u;
}

} // namespace

TraceResult as_convergence_trace(const ConvergenceExperiment& exp) {
    check_experiment(exp);
    if (!exp.kernel.bound.has_value()) {
        throw ConfigError("as_convergence_trace: kernel '" + exp.kernel.name +
                          "' carries no bound; the hypothesis is not certified");
    }

    TraceResult res;
    res.grid = exp.n_grid;
    res.u.assign(exp.reps, {});
    parallel_for(exp.reps, exp.threads,
                 [&](std::size_t r) { res.u[r] = replicate_trajectory(exp, r); });

    std::size_t hits = 0;
    for (const auto& trajectory : res.u) {
        if (std::fabs(trajectory.back() - exp.target) <= exp.tolerance) ++hits;
    }
    res.pass_fraction = static_cast<double>(hits) / static_cast<double>(exp.reps);
    return res;
}

L1Curve l1_error_curve(const ConvergenceExperiment& exp) {
    check_experiment(exp);
    if (exp.reps < 30) throw ConfigError("l1_error_curve: need reps >= 30");

    std::vector<std::vector<double>> traj(exp.reps);
    parallel_for(exp.reps, exp.threads,
                 [&](std::size_t r) { traj[r] = replicate_trajectory(exp, r); });

    L1Curve curve;
    curve.points.reserve(exp.n_grid.size());
    for (std::size_t g = 0; g < exp.n_grid.size(); ++g) {
        std::vector<double> errs(exp.reps);
        for (std::size_t r = 0; r < exp.reps; ++r) {
            errs[r] = std::fabs(traj[r][g] - exp.target);
        }
        L1Point pt;
        pt.n = exp.n_grid[g];
        pt.mean_abs_error = stats::mean(errs);
        pt.std_error = std::sqrt(stats::variance(errs) / static_cast<double>(exp.reps));
        curve.points.push_back(pt);
    }

    curve.final_is_min = true;
    const auto& last = curve.points.back();
    for (const auto& pt : curve.points) {
        if (last.mean_abs_error > pt.mean_abs_error + pt.std_error) {
            curve.final_is_min = false;
            break;
        }
    }
    return curve;
}

std::vector<WeakConvRow> weak_convergence_panel(const processes::ProcessSpec& spec,
                                                const std::vector<std::size_t>& n_grid,
                                                std::uint64_t seed) {
    spec.validate();
    if (!spec.uniform_marginal()) {
        throw ConfigError("weak_convergence_panel: test family needs a uniform marginal");
    }
    if (n_grid.empty()) throw ConfigError("weak_convergence_panel: empty n grid");

    constexpr int kMaxFrequency = 8;
    const auto path = processes::generate(spec, n_grid.back(), seed);

    std::vector<WeakConvRow> rows;
    rows.reserve(n_grid.size());
    std::vector<stats::KahanSum> cos_sum(kMaxFrequency), sin_sum(kMaxFrequency);
    std::size_t next = 0;
    for (std::size_t i = 1; i <= n_grid.back(); ++i) {
        const double x = path.x(i);
        for (int m = 1; m <= kMaxFrequency; ++m) {
            cos_sum[m - 1].add(std::cos(2.0 * M_PI * m * x));
            sin_sum[m - 1].add(std::sin(2.0 * M_PI * m * x));
        }
        if (next < n_grid.size() && n_grid[next] == i) {
            WeakConvRow row;
            row.n = i;
            for (int m = 1; m <= kMaxFrequency; ++m) {
                const double c = std::fabs(cos_sum[m - 1].value()) / static_cast<double>(i);
                const double s = std::fabs(sin_sum[m - 1].value()) / static_cast<double>(i);
                if (c > row.max_abs) {
                    row.max_abs = c;
                    row.worst = "cos(2pi*" + std::to_string(m) + "x)";
                }
                if (s > row.max_abs) {
                    row.max_abs = s;
                    row.worst = "sin(2pi*" + std::to_string(m) + "x)";
                }
            }
            rows.push_back(std::move(row));
            ++next;
        }
    }
    return rows;
}

} // namespace ustatlab::limitlab
