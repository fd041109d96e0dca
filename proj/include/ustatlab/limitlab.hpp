#ifndef USTATLAB_LIMITLAB_HPP
#define USTATLAB_LIMITLAB_HPP

#include "ustatlab/kernel.hpp"
#include "ustatlab/processes.hpp"

#include <cstdint>
#include <string>
#include <vector>

// Desk-scale verification of the positive results: almost-sure convergence
// for bounded a.e.-continuous kernels, L1 convergence, and the empirical-
// measure weak-convergence mechanism behind the proof.

namespace ustatlab::limitlab {

struct ConvergenceExperiment {
    processes::ProcessSpec spec;
    engine::Kernel kernel;
    double target = 0.0; // integral of h under F x F
    std::vector<std::size_t> n_grid;
    std::size_t reps = 50;
    std::uint64_t seed = 0;
    double tolerance = 0.05; // per-experiment, calibrated then frozen
    int threads = 0;
};

// Standard dyadic grid 64, 128, ..., n_max (n_max included even if not a
// power of two).
std::vector<std::size_t> dyadic_grid(std::size_t n_max, std::size_t n_min = 64);

struct TraceResult {
    std::vector<std::size_t> grid;
    std::vector<std::vector<double>> u; // [replicate][grid point]
    double pass_fraction = 0.0; // replicates with |U_{n_max} - target| <= tolerance
};

// Per-replicate trajectories of U_n. Requires kernel.bound (the theorem's
// hypothesis is not certified otherwise); throws ConfigError without it.
TraceResult as_convergence_trace(const ConvergenceExperiment& exp);

struct L1Point {
    std::size_t n = 0;
    double mean_abs_error = 0.0;
    double std_error = 0.0;
};

struct L1Curve {
    std::vector<L1Point> points;
    // Final grid value is within one standard error of every earlier value.
    bool final_is_min = false;
};

L1Curve l1_error_curve(const ConvergenceExperiment& exp);

struct WeakConvRow {
    std::size_t n = 0;
    double max_abs = 0.0;  // max_i |(1/n) sum f_i(X_j)|
    std::string worst;     // name of the extremal test function
};

// Empirical integrals of the trigonometric family {cos(2 pi m x),
// sin(2 pi m x) : 1 <= m <= 8} (convergence determining on the circle);
// all have integral 0 under the uniform marginal. Throws ConfigError for
// non-uniform marginals.
std::vector<WeakConvRow> weak_convergence_panel(const processes::ProcessSpec& spec,
                                                const std::vector<std::size_t>& n_grid,
                                                std::uint64_t seed);

} // namespace ustatlab::limitlab

#endif
