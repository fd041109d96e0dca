#include "ustatlab/kernel.hpp"

#include "ustatlab/errors.hpp"

#include <cmath>

namespace ustatlab::engine {

double Kernel::diagonal(double x) const {
    if (diag) return diag(x);
    if (evaluate) return evaluate(x, x);
    throw ConfigError("kernel '" + name + "' has neither diag nor evaluate");
}

namespace kernels {

Kernel constant(double c) {
    Kernel k;
    k.name = "const";
    k.evaluate = [c](double, double) { return c; };
    k.bound = std::fabs(c);
    k.lag_mean = [c](std::size_t) { return c; };
    return k;
}

Kernel product() {
    Kernel k;
    k.name = "product";
    k.evaluate = [](double x, double y) { return x * y; };
    // |xy| <= 1 on [0,1)^2 only; no bound is certified for unbounded marginals.
    return k;
}

Kernel centered_product() {
    Kernel k;
    k.name = "centered-product";
    k.evaluate = [](double x, double y) { return (x - 0.5) * (y - 0.5); };
    k.bound = 0.25; // on [0,1)^2
    return k;
}

Kernel abs_difference() {
    Kernel k;
    k.name = "abs-difference";
    k.evaluate = [](double x, double y) { return std::fabs(x - y); };
    k.bound = 1.0; // on [0,1)^2
    return k;
}

Kernel cos_difference() {
    Kernel k;
    k.name = "cos-difference";
    // fabs keeps evaluate(x,y) bit-identical to evaluate(y,x); cos is even.
    k.evaluate = [](double x, double y) { return std::cos(2.0 * M_PI * std::fabs(x - y)); };
    k.bound = 1.0;
    return k;
}

} // namespace kernels

Kernel kernel_by_name(const std::string& name) {
    if (name == "product") return kernels::product();
    if (name == "bounded-product") {
        // product with the [0,1)^2 bound certified, for uniform-marginal runs
        Kernel k = kernels::product();
        k.name = "bounded-product";
        k.bound = 1.0;
        return k;
    }
    if (name == "centered-product") return kernels::centered_product();
    if (name == "abs-difference") return kernels::abs_difference();
    if (name == "cos-difference") return kernels::cos_difference();
    if (name == "const") return kernels::constant(1.0);
    throw ConfigError("unknown kernel: " + name);
}

std::vector<std::string> kernel_names() {
    return {"product", "bounded-product", "centered-product", "abs-difference",
            "cos-difference", "const"};
}

} // namespace ustatlab::engine
