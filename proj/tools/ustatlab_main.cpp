// Command-line laboratory for the U-statistics experiments. Every subcommand
// writes its report file(s) plus a manifest JSON carrying the config echo,
// seed, wall time and the pass/fail of its built-in assertions.
//
// Exit codes: 0 all assertions passed, 1 some assertion failed, 2 usage or
// configuration error.

#include "ustatlab/bigmath.hpp"
#include "ustatlab/centered.hpp"
#include "ustatlab/dyadic.hpp"
#include "ustatlab/errors.hpp"
#include "ustatlab/kernel.hpp"
#include "ustatlab/limitlab.hpp"
#include "ustatlab/oscillate.hpp"
#include "ustatlab/processes.hpp"
#include "ustatlab/report.hpp"
#include "ustatlab/rng.hpp"
#include "ustatlab/stats.hpp"
#include "ustatlab/ustat.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace ustatlab;

struct CommonOpts {
    std::uint64_t seed = 0;
    int threads = 0;
    std::string out;
    std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonOpts& opts, const std::string& default_out) {
    opts.out = default_out;
    cmd->add_option("--seed", opts.seed, "Experiment seed")->envname("UL_SEED");
    cmd->add_option("--threads", opts.threads,
                    "Worker cap for replicate loops (0 = hardware); results do not depend on it");
    cmd->add_option("--out", opts.out, "Report file path");
    cmd->add_option("--format", opts.format, "Report format")
        ->check(CLI::IsMember({"csv", "json"}));
}

void write_report(const report::CsvTable& table, const CommonOpts& opts,
                  report::Manifest& manifest, nlohmann::json extra = {}) {
    if (opts.format == "csv") {
        table.write(opts.out);
    } else {
        nlohmann::json j = table.to_json();
        if (!extra.is_null()) j["summary"] = std::move(extra);
        std::ofstream f(opts.out, std::ios::binary);
        if (!f) throw ResourceError("cannot open for writing: " + opts.out);
        f << j.dump(2) << '\n';
    }
    manifest.outputs.push_back(opts.out);
}

int finish(report::Manifest& manifest, std::chrono::steady_clock::time_point t0) {
    manifest.wall_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
    const std::string manifest_path = manifest.outputs.empty()
                                          ? manifest.subcommand + ".manifest.json"
                                          : manifest.outputs.front() + ".manifest.json";
    manifest.write(manifest_path);
    for (const auto& a : manifest.assertions) {
        std::cout << (a.pass ? "[pass] " : "[FAIL] ") << a.name;
        if (!a.detail.empty()) std::cout << ": " << a.detail;
        std::cout << '\n';
    }
    std::cout << "manifest: " << manifest_path << '\n';
    return manifest.all_passed() ? 0 : 1;
}

oscillate::LagSet load_lag_set(const std::string& ladder_file, std::size_t levels) {
    if (ladder_file.empty()) return oscillate::LagSet(oscillate::default_ladder(levels));
    std::ifstream f(ladder_file);
    if (!f) throw ConfigError("cannot read ladder file: " + ladder_file);
    nlohmann::json j;
    try {
        f >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("ladder file parse error: ") + e.what());
    }
    return oscillate::LagSet(oscillate::IndexLadder::from_json(j));
}

// ---------------------------------------------------------------- example1

int run_example1(const CommonOpts& opts, std::size_t levels, const std::string& ladder_file) {
    const auto t0 = std::chrono::steady_clock::now();
    report::Manifest manifest;
    manifest.subcommand = "example1";
    manifest.seed = opts.seed;
    manifest.config = {{"levels", levels},
                       {"ladder_file", ladder_file},
                       {"format", opts.format},
                       {"out", opts.out}};

    const auto lags = load_lag_set(ladder_file, levels);
    const auto rows = oscillate::oscillation_report(lags);

    report::CsvTable table;
    table.header = {"level", "n", "which", "S", "u_norm", "paper_norm", "u_norm_frac",
                    "paper_norm_frac"};
    for (const auto& r : rows) {
        table.rows.push_back({std::to_string(r.level), r.n.str(), r.which, r.s.str(),
                              decimal_string(r.u_norm), decimal_string(r.paper_norm),
                              fraction_string(r.u_norm), fraction_string(r.paper_norm)});
    }
    write_report(table, opts, manifest);

    const std::size_t depth = lags.ladder().depth();
    manifest.assertions.push_back({"ladder-valid", true, ""});

    bool ab_ok = true, bound_ok = true;
    std::string ab_detail, bound_detail;
    for (std::size_t l = 3; l <= depth; ++l) {
        const auto ab = oscillate::ab_decomposition(l, lags);
        const auto full = oscillate::exact_sum(lags.ladder().big_n[l - 1], lags);
        if (ab.a + ab.b != full.paper_norm) {
            ab_ok = false;
            ab_detail = "A+B != paper_norm at level " + std::to_string(l);
        }
        const auto& ladder = lags.ladder();
        const BigRational a_bound(ladder.big_n[l - 2] - 1, ladder.big_n[l - 1] - 1);
        if (ab.a > a_bound) {
            bound_ok = false;
            bound_detail = "A exceeds (N_{l-1}-1)/(N_l-1) at level " + std::to_string(l);
        }
    }
    manifest.assertions.push_back({"ab-identity", ab_ok, ab_detail});
    manifest.assertions.push_back({"a-bound", bound_ok, bound_detail});

    if (depth >= 12) {
        const double at_n = to_double(rows[2 * depth - 2].paper_norm);
        const double at_np = to_double(rows[2 * depth - 1].paper_norm);
        manifest.assertions.push_back({"n-subsequence-near-half", at_n >= 0.49 && at_n <= 0.51,
                                       "paper_norm(N_L) = " + report::format_double(at_n)});
        manifest.assertions.push_back({"nprime-subsequence-near-zero", at_np <= 0.01,
                                       "paper_norm(N'_L) = " + report::format_double(at_np)});
    }
    return finish(manifest, t0);
}

// ---------------------------------------------------------------- example2

int run_example2(const CommonOpts& opts, std::size_t n, std::size_t reps) {
    const auto t0 = std::chrono::steady_clock::now();
    report::Manifest manifest;
    manifest.subcommand = "example2";
    manifest.seed = opts.seed;
    manifest.config = {{"n", n}, {"reps", reps}, {"seed", opts.seed},
                       {"format", opts.format}, {"out", opts.out}};

    const auto dist = centered::sample_distribution(n, reps, opts.seed, 5000, opts.threads);

    report::CsvTable table;
    table.header = {"replicate", "value"};
    for (std::size_t r = 0; r < dist.samples.size(); ++r) {
        table.rows.push_back({std::to_string(r), report::format_double(dist.samples[r])});
    }

    const double mean_limit = 3.0 * 0.5 / std::sqrt(static_cast<double>(reps));
    const double var_limit = 3.0 * 0.25 * std::sqrt(2.0 / static_cast<double>(reps - 1));
    const double ks_limit = 0.025;

    nlohmann::json summary = {
        {"n", n},
        {"reps", reps},
        {"seed", opts.seed},
        {"mean", dist.mean},
        {"variance", dist.variance},
        {"ks_vs_normal_quarter_variance", dist.ks},
        {"ks_reps", dist.ks_reps},
        {"thresholds",
         {{"mean_abs", mean_limit}, {"variance_delta", var_limit}, {"ks", ks_limit}}},
    };
    summary["histogram"] = {{"lo", dist.hist.lo},
                            {"hi", dist.hist.hi},
                            {"counts", dist.hist.counts},
                            {"underflow", dist.hist.underflow},
                            {"overflow", dist.hist.overflow}};
    write_report(table, opts, manifest, summary);

    manifest.assertions.push_back(
        {"mean-near-zero", std::fabs(dist.mean) <= mean_limit,
         report::format_double(dist.mean) + " vs +-" + report::format_double(mean_limit)});
    manifest.assertions.push_back(
        {"variance-near-quarter", std::fabs(dist.variance - 0.25) <= var_limit,
         report::format_double(dist.variance) + " vs 0.25 +- " +
             report::format_double(var_limit)});
    if (n >= 1024 && dist.ks_reps >= 1000) {
        manifest.assertions.push_back(
            {"ks-near-normal", dist.ks <= ks_limit,
             report::format_double(dist.ks) + " vs " + report::format_double(ks_limit)});
    }
    const auto mcleish = centered::mcleish_diagnostics(n);
    manifest.assertions.push_back({"mcleish-sum-squares-exact",
                                   mcleish.sum_squares == BigRational(1, 4),
                                   fraction_string(mcleish.sum_squares)});
    return finish(manifest, t0);
}

// ------------------------------------------------------------- theorem runs

std::optional<double> analytic_target(const processes::ProcessSpec& spec,
                                      const std::string& kernel_name) {
    const bool uniform = spec.uniform_marginal();
    if (kernel_name == "const") return 1.0;
    if (kernel_name == "product" || kernel_name == "bounded-product") {
        return uniform ? 0.25 : 0.0; // (E X)^2
    }
    if (uniform && kernel_name == "centered-product") return 0.0;
    if (uniform && kernel_name == "cos-difference") return 0.0;
    if (uniform && kernel_name == "abs-difference") return 1.0 / 3.0;
    return std::nullopt;
}

report::CsvTable trace_table(const std::vector<std::size_t>& grid,
                             const std::vector<std::vector<double>>& u, double target) {
    report::CsvTable table;
    table.header = {"n", "replicate", "u", "error"};
    for (std::size_t r = 0; r < u.size(); ++r) {
        for (std::size_t g = 0; g < grid.size(); ++g) {
            table.rows.push_back({std::to_string(grid[g]), std::to_string(r),
                                  report::format_double(u[r][g]),
                                  report::format_double(std::fabs(u[r][g] - target))});
        }
    }
    // summary rows: mean of u and mean absolute error per grid point
    for (std::size_t g = 0; g < grid.size(); ++g) {
        stats::KahanSum su, se;
        for (std::size_t r = 0; r < u.size(); ++r) {
            su.add(u[r][g]);
            se.add(std::fabs(u[r][g] - target));
        }
        const double nr = static_cast<double>(u.size());
        table.rows.push_back({std::to_string(grid[g]), "mean",
                              report::format_double(su.value() / nr),
                              report::format_double(se.value() / nr)});
    }
    return table;
}

limitlab::ConvergenceExperiment make_experiment(const CommonOpts& opts,
                                                const std::string& process,
                                                const std::string& kernel_name,
                                                std::size_t n_max, std::size_t reps,
                                                double tol, std::optional<double> target) {
    limitlab::ConvergenceExperiment exp;
    exp.spec.kind = processes::kind_from_name(process);
    exp.kernel = engine::kernel_by_name(kernel_name);
    exp.n_grid = limitlab::dyadic_grid(n_max);
    exp.reps = reps;
    exp.seed = opts.seed;
    exp.tolerance = tol;
    exp.threads = opts.threads;
    if (target) {
        exp.target = *target;
    } else {
        const auto t = analytic_target(exp.spec, kernel_name);
        if (!t) {
            throw ConfigError("no analytic target for " + process + "/" + kernel_name +
                              "; pass --target");
        }
        exp.target = *t;
    }
    return exp;
}

int run_theorem_as(const CommonOpts& opts, const std::string& process,
                   const std::string& kernel_name, std::size_t n_max, std::size_t reps,
                   double tol, std::optional<double> target) {
    const auto t0 = std::chrono::steady_clock::now();
    report::Manifest manifest;
    manifest.subcommand = "theorem-as";
    manifest.seed = opts.seed;
    manifest.config = {{"process", process}, {"kernel", kernel_name}, {"n", n_max},
                       {"reps", reps},       {"tol", tol},            {"seed", opts.seed}};

    const auto exp = make_experiment(opts, process, kernel_name, n_max, reps, tol, target);
    manifest.config["target"] = exp.target;
    const auto trace = limitlab::as_convergence_trace(exp);

    write_report(trace_table(trace.grid, trace.u, exp.target), opts, manifest,
                 {{"pass_fraction", trace.pass_fraction}, {"target", exp.target}});
    manifest.assertions.push_back(
        {"final-within-tolerance-95pct", trace.pass_fraction >= 0.95,
         "fraction " + report::format_double(trace.pass_fraction) + " at tol " +
             report::format_double(tol)});
    return finish(manifest, t0);
}

int run_theorem_l1(const CommonOpts& opts, const std::string& process,
                   const std::string& kernel_name, std::size_t n_max, std::size_t reps,
                   double tol, std::optional<double> target) {
    const auto t0 = std::chrono::steady_clock::now();
    report::Manifest manifest;
    manifest.subcommand = "theorem-l1";
    manifest.seed = opts.seed;
    manifest.config = {{"process", process}, {"kernel", kernel_name}, {"n", n_max},
                       {"reps", reps},       {"tol", tol},            {"seed", opts.seed}};

    const auto exp = make_experiment(opts, process, kernel_name, n_max, reps, tol, target);
    manifest.config["target"] = exp.target;
    const auto curve = limitlab::l1_error_curve(exp);

    report::CsvTable table;
    table.header = {"n", "replicate", "u", "error"};
    for (const auto& pt : curve.points) {
        table.rows.push_back({std::to_string(pt.n), "mean", "",
                              report::format_double(pt.mean_abs_error)});
    }
    write_report(table, opts, manifest,
                 {{"final_error", curve.points.back().mean_abs_error},
                  {"final_is_min", curve.final_is_min},
                  {"target", exp.target}});

    manifest.assertions.push_back(
        {"final-error-below-tolerance", curve.points.back().mean_abs_error <= tol,
         report::format_double(curve.points.back().mean_abs_error) + " vs " +
             report::format_double(tol)});
    manifest.assertions.push_back(
        {"final-is-minimum-within-se", curve.final_is_min, ""});
    return finish(manifest, t0);
}

int run_weak_conv(const CommonOpts& opts, const std::string& process, std::size_t n_max) {
    const auto t0 = std::chrono::steady_clock::now();
    report::Manifest manifest;
    manifest.subcommand = "weak-conv";
    manifest.seed = opts.seed;
    manifest.config = {{"process", process}, {"n", n_max}, {"seed", opts.seed}};

    processes::ProcessSpec spec;
    spec.kind = processes::kind_from_name(process);

    std::vector<std::size_t> grid{1};
    if (n_max >= 64) {
        for (std::size_t n : limitlab::dyadic_grid(n_max)) grid.push_back(n);
    } else if (n_max > 1) {
        grid.push_back(n_max);
    }
    const auto rows = limitlab::weak_convergence_panel(spec, grid, opts.seed);

    report::CsvTable table;
    table.header = {"n", "max_abs_integral", "worst_function"};
    for (const auto& r : rows) {
        table.rows.push_back({std::to_string(r.n), report::format_double(r.max_abs), r.worst});
    }
    write_report(table, opts, manifest);

    if (n_max >= 10000) {
        manifest.assertions.push_back(
            {"final-max-below-0.05", rows.back().max_abs <= 0.05,
             report::format_double(rows.back().max_abs) + " at n = " +
                 std::to_string(rows.back().n)});
    }
    return finish(manifest, t0);
}

// ------------------------------------------------------------- engine-check

int run_engine_check(const CommonOpts& opts, std::size_t n) {
    const auto t0 = std::chrono::steady_clock::now();
    report::Manifest manifest;
    manifest.subcommand = "engine-check";
    manifest.seed = opts.seed;
    manifest.config = {{"n", n}, {"seed", opts.seed}};

    processes::ProcessSpec iid;
    iid.kind = processes::ProcessKind::IidUniform;
    const auto path = processes::generate(iid, n, opts.seed);

    std::vector<std::size_t> grid;
    for (std::size_t k = 2; k <= n; ++k) grid.push_back(k);

    bool series_ok = true, uv_ok = true;
    for (const auto& kname : {"product", "abs-difference", "cos-difference"}) {
        const auto kernel = engine::kernel_by_name(kname);
        const auto series = engine::u_series(path, kernel, grid);
        for (std::size_t g = 0; g < grid.size(); ++g) {
            if (series.u[g] != engine::u_naive(path, kernel, grid[g])) series_ok = false;
        }
        const double u = engine::u_naive(path, kernel, n);
        const double v = engine::v_plugin(path, kernel, n);
        const double d = engine::diagonal_sum(path, kernel, n);
        const double nd = static_cast<double>(n);
        const double lhs = nd * (nd - 1.0) * u;
        const double rhs = nd * nd * v - d;
        const double ulp_budget = 8.0 * std::ldexp(std::max(std::fabs(lhs), std::fabs(rhs)), -52);
        if (std::fabs(lhs - rhs) > ulp_budget) uv_ok = false;
    }
    manifest.assertions.push_back({"u-series-equals-u-naive", series_ok, ""});
    manifest.assertions.push_back({"u-v-diagonal-identity", uv_ok, ""});

    bool digits_ok = true;
    for (std::uint64_t s = 0; s < 100 && digits_ok; ++s) {
        const auto p = dyadic::make_point(rng::split_seed(opts.seed, s));
        for (int j = 1; j <= 20; ++j) {
            const bool even_cell = dyadic::interval_index(p, j + 1) % 2 == 0;
            if (even_cell != (dyadic::digit(p, static_cast<std::uint64_t>(j) + 1) == 1)) {
                digits_ok = false;
            }
        }
    }
    manifest.assertions.push_back({"digit-shift-interval-identity", digits_ok, ""});
    return finish(manifest, t0);
}

// ---------------------------------------------------------- validate-ladder

int run_validate_ladder(const std::string& path) {
    const auto t0 = std::chrono::steady_clock::now();
    report::Manifest manifest;
    manifest.subcommand = "validate-ladder";
    manifest.config = {{"file", path}};

    std::ifstream f(path);
    if (!f) throw ConfigError("cannot read ladder file: " + path);
    nlohmann::json j;
    try {
        f >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("ladder file parse error: ") + e.what());
    }
    const auto ladder = oscillate::IndexLadder::from_json(j);
    const auto problems = ladder.violations();
    for (const auto& p : problems) std::cout << "violation: " << p << '\n';
    manifest.assertions.push_back(
        {"ladder-valid", problems.empty(),
         problems.empty() ? "" : std::to_string(problems.size()) + " violation(s)"});
    return finish(manifest, t0);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"U-statistics ergodic-theorem laboratory"};
    app.require_subcommand(1);
    app.set_version_flag("--version", report::kToolVersion);

    CommonOpts opts;

    auto* ex1 = app.add_subcommand("example1", "Exact oscillation of the lag-set U-statistic");
    std::size_t levels = 12;
    std::string ladder_file;
    add_common(ex1, opts, "example1.csv");
    ex1->add_option("--levels", levels, "Ladder depth (default 12)");
    ex1->add_option("--ladder-file", ladder_file, "Custom ladder JSON instead of the default");

    auto* ex2 = app.add_subcommand("example2", "Centered U-statistic: CLT and gap witness");
    std::size_t ex2_n = 4096, ex2_reps = 5000;
    add_common(ex2, opts, "example2.csv");
    ex2->add_option("--n", ex2_n, "Sample size n");
    ex2->add_option("--reps", ex2_reps, "Monte-Carlo replicates");

    auto* as = app.add_subcommand("theorem-as", "Almost-sure convergence desk check");
    std::string as_process = "doubling-map", as_kernel = "cos-difference";
    std::size_t as_n = 5000, as_reps = 50;
    double as_tol = 0.05;
    std::optional<double> as_target;
    add_common(as, opts, "theorem_as.csv");
    as->add_option("--process", as_process, "Process kind");
    as->add_option("--kernel", as_kernel, "Kernel name");
    as->add_option("--n", as_n, "Largest sample size");
    as->add_option("--reps", as_reps, "Replicates");
    as->add_option("--tol", as_tol, "Final-distance tolerance");
    as->add_option("--target", as_target, "Integral of h dF dF (default: analytic)");

    auto* l1 = app.add_subcommand("theorem-l1", "L1-error curve");
    std::string l1_process = "gaussian-ar1", l1_kernel = "product";
    std::size_t l1_n = 4096, l1_reps = 100;
    double l1_tol = 0.05;
    std::optional<double> l1_target;
    add_common(l1, opts, "theorem_l1.csv");
    l1->add_option("--process", l1_process, "Process kind");
    l1->add_option("--kernel", l1_kernel, "Kernel name");
    l1->add_option("--n", l1_n, "Largest sample size");
    l1->add_option("--reps", l1_reps, "Replicates");
    l1->add_option("--tol", l1_tol, "Final mean-absolute-error tolerance");
    l1->add_option("--target", l1_target, "Integral of h dF dF (default: analytic)");

    auto* wc = app.add_subcommand("weak-conv", "Empirical-measure weak convergence panel");
    std::string wc_process = "doubling-map";
    std::size_t wc_n = 10000;
    add_common(wc, opts, "weak_conv.csv");
    wc->add_option("--process", wc_process, "Process kind (uniform marginal)");
    wc->add_option("--n", wc_n, "Largest sample size");

    auto* ec = app.add_subcommand("engine-check", "Self-test of the U-statistic engine");
    std::size_t ec_n = 200;
    add_common(ec, opts, "engine_check.csv");
    ec->add_option("--n", ec_n, "Sample size for the oracle equivalence run");

    auto* vl = app.add_subcommand("validate-ladder", "Check a ladder JSON file");
    std::string vl_file;
    vl->add_option("--file", vl_file, "Ladder JSON path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (ex1->parsed()) return run_example1(opts, levels, ladder_file);
        if (ex2->parsed()) return run_example2(opts, ex2_n, ex2_reps);
        if (as->parsed())
            return run_theorem_as(opts, as_process, as_kernel, as_n, as_reps, as_tol, as_target);
        if (l1->parsed())
            return run_theorem_l1(opts, l1_process, l1_kernel, l1_n, l1_reps, l1_tol, l1_target);
        if (wc->parsed()) return run_weak_conv(opts, wc_process, wc_n);
        if (ec->parsed()) return run_engine_check(opts, ec_n);
        if (vl->parsed()) return run_validate_ladder(vl_file);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
