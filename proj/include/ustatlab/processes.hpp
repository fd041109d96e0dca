#ifndef USTATLAB_PROCESSES_HPP
#define USTATLAB_PROCESSES_HPP

#include "ustatlab/dyadic.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

// Stationary ergodic sample-path generators with known marginal F, plus
// Monte-Carlo estimation of the product integral of a kernel under F x F.

namespace ustatlab::processes {

enum class ProcessKind {
    DoublingMap, // X_k = T^k x, T = doubling map, x ~ Lebesgue
    Rotation,    // X_k = x + k*alpha mod 1 (approximate dynamics)
    IidUniform,  // i.i.d. uniform [0,1)
    GaussianAr1, // stationary AR(1), unit-variance N(0,1) marginal
};

std::string kind_name(ProcessKind kind);
ProcessKind kind_from_name(const std::string& name);

struct ProcessSpec {
    ProcessKind kind = ProcessKind::DoublingMap;
    double rho = 0.5;    // GaussianAr1, |rho| < 1
    double alpha = 0.0;  // Rotation; 0 selects the golden-ratio default
    unsigned doubling_precision = 64; // digits per emitted value

    // Throws ConfigError on invalid parameters.
    void validate() const;

    bool uniform_marginal() const;

    nlohmann::json to_json() const;
    static ProcessSpec from_json(const nlohmann::json& j);
};

// Observations X_1..X_n of one path. Doubling-map paths keep the origin
// point so lag quantities can be computed on exact digits.
struct SamplePath {
    ProcessSpec spec;
    std::uint64_t seed = 0;
    std::vector<double> values;
    std::optional<dyadic::BitStream> origin;

    std::size_t size() const { return values.size(); }
    // X_i, 1-based as in the formulas.
    double x(std::size_t i) const { return values[i - 1]; }
};

// Pure in (spec, n, seed); same inputs reproduce the path bit-exactly.
SamplePath generate(const ProcessSpec& spec, std::size_t n, std::uint64_t seed);

// Doubling path from an explicit origin point (X_i = value of T^i origin).
SamplePath doubling_path_from_point(const dyadic::BitStream& origin, std::size_t n,
                                    unsigned precision = 64);

struct MonteCarloEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t reps = 0;
};

// Monte-Carlo estimate of the double integral of h under F x F:
// `reps` independent pairs drawn from the marginal, never along one orbit.
// Throws NumericError (with the offending pair) on a non-finite evaluation.
MonteCarloEstimate product_integral(const ProcessSpec& spec,
                                    const std::function<double(double, double)>& h,
                                    std::size_t reps, std::uint64_t seed);

} // namespace ustatlab::processes

#endif
