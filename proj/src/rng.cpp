#include "densewlan/rng.hpp"

#include <cmath>

namespace dw {

double Rng::exponential() {
    double u;
    do {
        u = uniform();
    } while (u <= 0.0);
    return -std::log(u);
}

double Rng::normal() {
    while (true) {
        double u = 2.0 * uniform() - 1.0;
        double v = 2.0 * uniform() - 1.0;
        double s = u * u + v * v;
        if (s > 0.0 && s < 1.0) {
            return u * std::sqrt(-2.0 * std::log(s) / s);
        }
    }
}

std::uint64_t Rng::poisson(double mean) {
    if (mean <= 0.0) return 0;
    std::uint64_t count = 0;
    double acc = exponential();
    while (acc <= mean) {
        ++count;
        acc += exponential();
    }
    return count;
}

double Rng::gamma(double shape, double scale) {
    if (shape < 1.0) {
        // Boost with a U^(1/shape) factor and sample at shape + 1.
        double u;
        do {
            u = uniform();
        } while (u <= 0.0);
        return gamma(shape + 1.0, scale) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    while (true) {
        double x = normal();
        double v = 1.0 + c * x;
        if (v <= 0.0) continue;
        v = v * v * v;
        double u = uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v * scale;
        if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) {
            return d * v * scale;
        }
    }
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    std::uint64_t z = base + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace dw
