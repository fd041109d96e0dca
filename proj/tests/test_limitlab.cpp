#include "ustatlab/limitlab.hpp"

#include "ustatlab/errors.hpp"
#include "ustatlab/rng.hpp"
#include "ustatlab/ustat.hpp"

#include <doctest.h>

#include <cmath>

using namespace ustatlab;
using namespace ustatlab::limitlab;

namespace {

ConvergenceExperiment constant_experiment(double c, double target) {
    ConvergenceExperiment exp;
    exp.spec.kind = processes::ProcessKind::IidUniform;
    exp.kernel = engine::kernels::constant(c);
    exp.target = target;
    exp.n_grid = {2, 8, 32};
    exp.reps = 30;
    exp.seed = 0;
    exp.tolerance = 0.05;
    exp.threads = 2;
    return exp;
}

} // namespace

TEST_CASE("dyadic grid construction") {
    CHECK(dyadic_grid(4096) == std::vector<std::size_t>{64, 128, 256, 512, 1024, 2048, 4096});
    CHECK(dyadic_grid(5000).back() == 5000);
    CHECK(dyadic_grid(64) == std::vector<std::size_t>{64});
    CHECK(dyadic_grid(40) == std::vector<std::size_t>{40});
}

TEST_CASE("constant kernel experiments are exact") {
    SUBCASE("trace sits at |c - target| identically") {
        auto exp = constant_experiment(0.7, 0.7);
        const auto trace = as_convergence_trace(exp);
        CHECK(trace.pass_fraction == 1.0);
        for (const auto& traj : trace.u) {
            for (double u : traj) CHECK(u == doctest::Approx(0.7).epsilon(1e-15));
        }

        exp.target = 0.9; // distance 0.2 > tolerance for every replicate
        CHECK(as_convergence_trace(exp).pass_fraction == 0.0);
    }
    SUBCASE("l1 curve is identically zero when target = c") {
        const auto curve = l1_error_curve(constant_experiment(0.3, 0.3));
        CHECK(curve.final_is_min);
        for (const auto& pt : curve.points) {
            CHECK(pt.mean_abs_error == doctest::Approx(0.0).epsilon(1e-15));
        }
    }
}

TEST_CASE("hypothesis metadata is enforced") {
    auto exp = constant_experiment(0.5, 0.5);
    exp.kernel = engine::kernels::product(); // no certified bound
    CHECK_THROWS_AS(as_convergence_trace(exp), ConfigError);

    SUBCASE("l1 needs enough replicates") {
        auto small = constant_experiment(0.5, 0.5);
        small.reps = 10;
        CHECK_THROWS_AS(l1_error_curve(small), ConfigError);
    }
    SUBCASE("grid must increase") {
        auto bad = constant_experiment(0.5, 0.5);
        bad.n_grid = {8, 8};
        CHECK_THROWS_AS(as_convergence_trace(bad), ConfigError);
    }
}

TEST_CASE("trace is deterministic and thread-count independent") {
    ConvergenceExperiment exp;
    exp.spec.kind = processes::ProcessKind::IidUniform;
    exp.kernel = engine::kernel_by_name("bounded-product");
    exp.target = 0.25;
    exp.n_grid = {16, 64, 256};
    exp.reps = 12;
    exp.seed = 42;
    exp.tolerance = 0.05;

    exp.threads = 1;
    const auto a = as_convergence_trace(exp);
    exp.threads = 4;
    const auto b = as_convergence_trace(exp);
    CHECK(a.u == b.u);
}

TEST_CASE("small-scale positive-theorem sanity runs") {
    SUBCASE("iid with h = xy concentrates near 1/4") {
        ConvergenceExperiment exp;
        exp.spec.kind = processes::ProcessKind::IidUniform;
        exp.kernel = engine::kernel_by_name("bounded-product");
        exp.target = 0.25;
        exp.n_grid = dyadic_grid(1024);
        exp.reps = 20;
        exp.seed = 7;
        exp.tolerance = 0.05;
        exp.threads = 2;
        const auto trace = as_convergence_trace(exp);
        CHECK(trace.pass_fraction >= 0.9);
    }
    SUBCASE("doubling with the centered product kernel shrinks in L1") {
        ConvergenceExperiment exp;
        exp.spec.kind = processes::ProcessKind::DoublingMap;
        exp.kernel = engine::kernels::centered_product();
        exp.target = 0.0;
        exp.n_grid = dyadic_grid(1024);
        exp.reps = 40;
        exp.seed = 3;
        exp.threads = 2;
        const auto curve = l1_error_curve(exp);
        CHECK(curve.points.back().mean_abs_error < curve.points.front().mean_abs_error);
        CHECK(curve.points.back().mean_abs_error < 0.05);
    }
}

TEST_CASE("diagonal removal: |V_n - U_n| <= 2B/n for bounded kernels") {
    processes::ProcessSpec spec;
    spec.kind = processes::ProcessKind::IidUniform;
    for (const auto& kernel :
         {engine::kernels::cos_difference(), engine::kernels::centered_product()}) {
        REQUIRE(kernel.bound.has_value());
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const auto path = processes::generate(spec, 64, rng::split_seed(55, seed));
            for (std::size_t n = 2; n <= 64; n += 7) {
                const double u = engine::u_naive(path, kernel, n);
                const double v = engine::v_plugin(path, kernel, n);
                const double slack = 1e-12;
                CHECK(std::fabs(v - u) <= 2.0 * *kernel.bound / static_cast<double>(n) + slack);
            }
        }
    }
}

TEST_CASE("weak convergence panel") {
    processes::ProcessSpec doubling;
    doubling.kind = processes::ProcessKind::DoublingMap;

    SUBCASE("doubling map equidistributes the trigonometric family") {
        const auto rows = weak_convergence_panel(doubling, {1, 100, 10000}, 11);
        REQUIRE(rows.size() == 3);
        CHECK(rows[0].n == 1);
        CHECK(rows[0].max_abs <= 1.0); // single-point measure, report only
        CHECK(rows[2].max_abs <= 0.05);
        CHECK_FALSE(rows[2].worst.empty());
    }
    SUBCASE("iid uniform satisfies the same bound") {
        processes::ProcessSpec iid;
        iid.kind = processes::ProcessKind::IidUniform;
        const auto rows = weak_convergence_panel(iid, {10000}, 13);
        CHECK(rows[0].max_abs <= 0.05);
    }
    SUBCASE("rotation orbit equidistributes") {
        processes::ProcessSpec rot;
        rot.kind = processes::ProcessKind::Rotation;
        const auto rows = weak_convergence_panel(rot, {10000}, 17);
        CHECK(rows[0].max_abs <= 0.05);
    }
    SUBCASE("non-uniform marginals are rejected") {
        processes::ProcessSpec ar1;
        ar1.kind = processes::ProcessKind::GaussianAr1;
        CHECK_THROWS_AS(weak_convergence_panel(ar1, {100}, 0), ConfigError);
    }
}
