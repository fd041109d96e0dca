#ifndef USTATLAB_KERNEL_HPP
#define USTATLAB_KERNEL_HPP

#include "ustatlab/processes.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace ustatlab::engine {

// A symmetric two-argument kernel plus the metadata the theorems care about.
//
// `evaluate` may be absent for orbit-coupled kernels whose value is decided
// by the underlying dynamics rather than by the two real coordinates; those
// provide `lag_form` instead: h(X_i, X_j) = lag_form(j-i, j, path) a.s.
struct Kernel {
    std::string name;
    std::function<double(double, double)> evaluate;
    std::optional<double> bound; // B with |h| <= B, when certified
    std::function<double(std::size_t lag, std::size_t j, const processes::SamplePath&)> lag_form;
    std::function<double(std::size_t lag)> lag_mean; // mu(k) = E h(X_i, X_{i+k})
    // Diagonal h(x,x); defaults to evaluate(x,x) when absent.
    std::function<double(double)> diag;

    double diagonal(double x) const;
};

namespace kernels {

Kernel constant(double c);
Kernel product();          // h(x,y) = xy
Kernel centered_product(); // h(x,y) = (x-1/2)(y-1/2)
Kernel abs_difference();   // h(x,y) = |x-y|
Kernel cos_difference();   // h(x,y) = cos(2 pi (x-y))

} // namespace kernels

// Registry for the CLI: product, centered-product, abs-difference,
// cos-difference, const. Throws ConfigError for unknown names.
Kernel kernel_by_name(const std::string& name);
std::vector<std::string> kernel_names();

} // namespace ustatlab::engine

#endif
