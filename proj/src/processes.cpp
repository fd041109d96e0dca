#include "ustatlab/processes.hpp"

#include "ustatlab/errors.hpp"
#include "ustatlab/rng.hpp"
#include "ustatlab/stats.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <sstream>

namespace ustatlab::processes {

// Golden-ratio fraction in 64-bit fixed point: round((phi - 1) * 2^64).
// Rotation orbits advance by exact wrap-around addition, so there is no
// accumulation drift; the quantization of alpha itself (2^-64) is why
// rotation runs are labeled approximate dynamics.
static constexpr std::uint64_t kGoldenAlphaFixed = 0x9E3779B97F4A7C16ull;

std::string kind_name(ProcessKind kind) {
    switch (kind) {
        case ProcessKind::DoublingMap: return "doubling-map";
        case ProcessKind::Rotation: return "rotation";
        case ProcessKind::IidUniform: return "iid-uniform";
        case ProcessKind::GaussianAr1: return "gaussian-ar1";
    }
    throw ConfigError("unknown process kind");
}

ProcessKind kind_from_name(const std::string& name) {
    if (name == "doubling-map" || name == "doubling") return ProcessKind::DoublingMap;
    if (name == "rotation") return ProcessKind::Rotation;
    if (name == "iid-uniform" || name == "iid") return ProcessKind::IidUniform;
    if (name == "gaussian-ar1" || name == "ar1") return ProcessKind::GaussianAr1;
    throw ConfigError("unknown process kind: " + name);
}

void ProcessSpec::validate() const {
    if (kind == ProcessKind::GaussianAr1 && !(std::fabs(rho) < 1.0)) {
        std::ostringstream os;
        os << "gaussian-ar1 requires |rho| < 1, got rho = " << rho;
        throw ConfigError(os.str());
    }
    if (kind == ProcessKind::Rotation && alpha != 0.0 && !(alpha > 0.0 && alpha < 1.0)) {
        std::ostringstream os;
        os << "rotation requires alpha in (0,1), got alpha = " << alpha;
        throw ConfigError(os.str());
    }
    if (kind == ProcessKind::DoublingMap && doubling_precision == 0) {
        throw ConfigError("doubling-map precision must be >= 1 digit");
    }
}

bool ProcessSpec::uniform_marginal() const {
    return kind != ProcessKind::GaussianAr1;
}

nlohmann::json ProcessSpec::to_json() const {
    nlohmann::json j;
    j["kind"] = kind_name(kind);
    if (kind == ProcessKind::GaussianAr1) j["rho"] = rho;
    if (kind == ProcessKind::Rotation && alpha != 0.0) j["alpha"] = alpha;
    if (kind == ProcessKind::DoublingMap && doubling_precision != 64) {
        j["precision"] = doubling_precision;
    }
    return j;
}

ProcessSpec ProcessSpec::from_json(const nlohmann::json& j) {
    ProcessSpec spec;
    if (j.contains("kind")) spec.kind = kind_from_name(j.at("kind").get<std::string>());
    if (j.contains("rho")) spec.rho = j.at("rho").get<double>();
    if (j.contains("alpha")) spec.alpha = j.at("alpha").get<double>();
    if (j.contains("precision")) spec.doubling_precision = j.at("precision").get<unsigned>();
    spec.validate();
    return spec;
}

SamplePath doubling_path_from_point(const dyadic::BitStream& origin, std::size_t n,
                                    unsigned precision) {
    SamplePath path;
    path.spec.kind = ProcessKind::DoublingMap;
    path.spec.doubling_precision = precision;
    path.seed = origin.seed();
    path.origin = origin;
    path.values.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) {
        path.values.push_back(dyadic::shift(origin, i).approx_double(precision));
    }
    return path;
}

// Uniform in (0,1]-complement trick: map the zero block to the smallest
// representable value so the inverse CDF stays finite.
static double uniform_open(std::uint64_t seed, std::uint64_t i) {
    double u = rng::uniform01(seed, i);
    return u == 0.0 ? 0x1.0p-53 : u;
}

SamplePath generate(const ProcessSpec& spec, std::size_t n, std::uint64_t seed) {
    spec.validate();
    if (n == 0) throw RangeError("generate: need n >= 1");

    SamplePath path;
    path.spec = spec;
    path.seed = seed;
    path.values.reserve(n);

    switch (spec.kind) {
        case ProcessKind::DoublingMap: {
            auto origin = dyadic::make_point(seed);
            path = doubling_path_from_point(origin, n, spec.doubling_precision);
            path.spec = spec;
            break;
        }
        case ProcessKind::Rotation: {
            const std::uint64_t alpha_fixed =
                spec.alpha == 0.0
                    ? kGoldenAlphaFixed
                    : static_cast<std::uint64_t>(std::ldexp(spec.alpha, 64));
            std::uint64_t x = rng::block(seed, 0); // x_0 uniform on the 2^64 grid
            for (std::size_t i = 1; i <= n; ++i) {
                x += alpha_fixed; // exact mod 2^64 == mod 1 in fixed point
                path.values.push_back(std::ldexp(static_cast<double>(x >> 11), -53));
            }
            break;
        }
        case ProcessKind::IidUniform: {
            for (std::size_t i = 1; i <= n; ++i) {
                path.values.push_back(rng::uniform01(seed, i));
            }
            break;
        }
        case ProcessKind::GaussianAr1: {
            const double rho = spec.rho;
            const double innovation_sd = std::sqrt(1.0 - rho * rho);
            double x = stats::inverse_normal_cdf(uniform_open(seed, 0));
            for (std::size_t i = 1; i <= n; ++i) {
                if (i > 1) {
                    x = rho * x + innovation_sd * stats::inverse_normal_cdf(uniform_open(seed, i - 1));
                }
                path.values.push_back(x);
            }
            break;
        }
    }
    return path;
}

MonteCarloEstimate product_integral(const ProcessSpec& spec,
                                    const std::function<double(double, double)>& h,
                                    std::size_t reps, std::uint64_t seed) {
    spec.validate();
    if (reps == 0) throw RangeError("product_integral: need reps >= 1");

    const bool normal = !spec.uniform_marginal();
    stats::KahanSum sum, sum_sq;
    for (std::size_t r = 0; r < reps; ++r) {
        double x, y;
        if (normal) {
            x = stats::inverse_normal_cdf(uniform_open(seed, 2 * r));
            y = stats::inverse_normal_cdf(uniform_open(seed, 2 * r + 1));
        } else {
            x = rng::uniform01(seed, 2 * r);
            y = rng::uniform01(seed, 2 * r + 1);
        }
        const double v = h(x, y);
        if (!std::isfinite(v)) {
            std::ostringstream os;
            os << "product_integral: kernel returned non-finite value at (x, y) = (" << x << ", "
               << y << "), replicate " << r;
            throw NumericError(os.str());
        }
        sum.add(v);
        sum_sq.add(v * v);
    }

    MonteCarloEstimate est;
    est.reps = reps;
    const double n = static_cast<double>(reps);
    est.value = sum.value() / n;
    if (reps > 1) {
        const double var = std::max(0.0, (sum_sq.value() - n * est.value * est.value) / (n - 1.0));
        est.std_error = std::sqrt(var / n);
    }
    return est;
}

} // namespace ustatlab::processes
