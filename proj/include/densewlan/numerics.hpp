#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>

namespace dw {

// (1 - e^{-x}) / x, with the series fallback below x = 1e-8 where the direct
// quotient would cancel.
double one_minus_exp_over(double x);
double one_minus_exp_over_series(double x);
double one_minus_exp_over_direct(double x);

// Adaptive Simpson on [a, b] to the given relative tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double rel_tol, int max_depth = 60);

struct Derivatives {
    double grad = 0.0;
    double hess = 0.0;
};

// Central differences with one Richardson extrapolation; step
// h = max(1e-6 |x|, 1e-12). Test seam for the optimizer derivatives.
Derivatives differentiate(const std::function<double(double)>& f, double x);

// Pairwise (cascade) summation; order-insensitive to ~1 ulp per level.
double pairwise_sum(std::span<const double> xs);

struct MeanStderr {
    double mean = 0.0;
    double stderr_ = 0.0; // sample stddev / sqrt(n); 0 when n < 2
    std::size_t n = 0;
};

MeanStderr mean_stderr(std::span<const double> xs);

// FNV-1a 64-bit, used for config content hashes.
std::uint64_t fnv1a64(const std::string& bytes);

} // namespace dw
