#include "ustatlab/processes.hpp"

#include "ustatlab/errors.hpp"
#include "ustatlab/rng.hpp"
#include "ustatlab/stats.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <cmath>

using namespace ustatlab;
using namespace ustatlab::processes;

namespace {

ProcessSpec spec_of(ProcessKind kind) {
    ProcessSpec s;
    s.kind = kind;
    return s;
}

} // namespace

TEST_CASE("generate is a pure function of (spec, n, seed)") {
    for (auto kind : {ProcessKind::DoublingMap, ProcessKind::Rotation, ProcessKind::IidUniform,
                      ProcessKind::GaussianAr1}) {
        const auto a = generate(spec_of(kind), 500, 99);
        const auto b = generate(spec_of(kind), 500, 99);
        CHECK(a.values == b.values);
    }
}

TEST_CASE("iid uniform marginal") {
    const auto path = generate(spec_of(ProcessKind::IidUniform), 10000, 4);
    // CLT interval: sd of the mean is 1/sqrt(12 n) ~ 0.0029
    CHECK(stats::mean(path.values) == doctest::Approx(0.5).epsilon(0.04));
    CHECK(std::fabs(stats::mean(path.values) - 0.5) < 0.02);
}

TEST_CASE("doubling path follows the hand-iterated orbit of 0.375") {
    const auto origin = dyadic::BitStream::from_bits({0, 1, 1, 0});
    const auto path = doubling_path_from_point(origin, 3, 8);
    REQUIRE(path.size() == 3);
    CHECK(path.x(1) == doctest::Approx(0.75).epsilon(1.0 / 256));
    CHECK(path.x(2) == doctest::Approx(0.5).epsilon(1.0 / 256));
    CHECK(path.x(3) == doctest::Approx(0.0).scale(1).epsilon(1.0 / 256));
    CHECK(path.origin.has_value());
}

TEST_CASE("gaussian ar1 is stationary with the expected dependence") {
    ProcessSpec spec;
    spec.kind = ProcessKind::GaussianAr1;
    spec.rho = 0.5;
    const auto path = generate(spec, 100000, 17);

    // lag-1 autocorrelation = rho; SE ~ sqrt((1-rho^2)/n) ~ 0.0027
    CHECK(stats::autocorrelation(path.values, 1) == doctest::Approx(0.5).epsilon(0.04));
    CHECK(std::fabs(stats::autocorrelation(path.values, 1) - 0.5) < 0.02);

    // unit marginal variance; 3 SE with the AR(1) inflation factor ~ 0.02
    CHECK(std::fabs(stats::variance(path.values) - 1.0) < 0.02);
    CHECK(std::fabs(stats::mean(path.values)) < 0.02);
}

TEST_CASE("doubling subsequences share the marginal across seeds") {
    // two-sample KS between the first window and a shifted window, pooled
    // across M independent replicates
    constexpr std::size_t kReps = 2000;
    constexpr std::size_t kWindow = 3;
    constexpr std::size_t kShift = 5;
    std::vector<double> first_window, shifted_window;
    for (std::size_t r = 0; r < kReps; ++r) {
        const auto path =
            generate(spec_of(ProcessKind::DoublingMap), kShift + kWindow, rng::split_seed(6, r));
        for (std::size_t i = 1; i <= kWindow; ++i) {
            first_window.push_back(path.x(i));
            shifted_window.push_back(path.x(kShift + i));
        }
    }
    CHECK(stats::ks_distance_two_sample(first_window, shifted_window) < 0.05);
}

TEST_CASE("rotation stays in [0,1) and is equidistributed enough") {
    const auto path = generate(spec_of(ProcessKind::Rotation), 10000, 3);
    for (double v : path.values) {
        CHECK(v >= 0.0);
        CHECK(v < 1.0);
    }
    CHECK(std::fabs(stats::mean(path.values) - 0.5) < 0.02);
}

TEST_CASE("spec validation") {
    ProcessSpec bad_rho;
    bad_rho.kind = ProcessKind::GaussianAr1;
    bad_rho.rho = 1.0;
    CHECK_THROWS_AS(generate(bad_rho, 10, 0), ConfigError);

    ProcessSpec bad_alpha;
    bad_alpha.kind = ProcessKind::Rotation;
    bad_alpha.alpha = 1.25;
    CHECK_THROWS_AS(bad_alpha.validate(), ConfigError);

    CHECK_THROWS_AS(generate(spec_of(ProcessKind::IidUniform), 0, 0), RangeError);
}

TEST_CASE("spec json round trip with defaulted fields") {
    ProcessSpec spec;
    spec.kind = ProcessKind::GaussianAr1;
    spec.rho = 0.25;
    const auto j = spec.to_json();
    const auto back = ProcessSpec::from_json(j);
    CHECK(back.kind == ProcessKind::GaussianAr1);
    CHECK(back.rho == 0.25);

    const auto defaulted = ProcessSpec::from_json(nlohmann::json{{"kind", "doubling-map"}});
    CHECK(defaulted.kind == ProcessKind::DoublingMap);
    CHECK(defaulted.doubling_precision == 64);

    CHECK_THROWS_AS(ProcessSpec::from_json(nlohmann::json{{"kind", "brownian"}}), ConfigError);
}

TEST_CASE("product_integral estimates the double integral") {
    const auto uniform = spec_of(ProcessKind::IidUniform);

    SUBCASE("constant kernel is exact") {
        const auto est = product_integral(uniform, [](double, double) { return 1.0; }, 1000, 0);
        CHECK(est.value == 1.0);
        CHECK(est.std_error == 0.0);
    }
    SUBCASE("h = xy has integral 1/4 under uniform") {
        const auto est =
            product_integral(uniform, [](double x, double y) { return x * y; }, 100000, 1);
        CHECK(std::fabs(est.value - 0.25) <= 3.0 * est.std_error);
    }
    SUBCASE("h = cos(2pi(x-y)) integrates to 0") {
        const auto est = product_integral(
            uniform, [](double x, double y) { return std::cos(2.0 * M_PI * (x - y)); }, 100000,
            2);
        CHECK(std::fabs(est.value) <= 3.0 * est.std_error + 1e-12);
    }
    SUBCASE("non-finite kernel values carry the offending pair") {
        CHECK_THROWS_AS(
            product_integral(uniform, [](double, double) { return std::nan(""); }, 10, 0),
            NumericError);
    }
}
