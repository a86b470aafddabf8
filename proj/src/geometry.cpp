#include "densewlan/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "densewlan/rng.hpp"

namespace dw {

double distance(const Point& a, const Point& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

PointSet sample_ppp(double lambda, Window window, std::uint64_t seed) {
    if (lambda < 0.0) throw std::invalid_argument("sample_ppp: lambda must be >= 0");
    if (!(window.area() > 0.0)) throw std::invalid_argument("sample_ppp: window area must be > 0");
    PointSet out;
    out.density = lambda;
    out.window = window;
    out.seed = seed;
    Rng rng(seed);
    const std::uint64_t n = rng.poisson(lambda * window.area());
    out.points.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        const double x = rng.uniform(0.0, window.width);
        const double y = rng.uniform(0.0, window.height);
        out.points.push_back({x, y});
    }
    return out;
}

PointSet superpose(const PointSet& a, const PointSet& b) {
    if (a.window.width != b.window.width || a.window.height != b.window.height) {
        throw std::invalid_argument("superpose: window mismatch");
    }
    PointSet out;
    out.window = a.window;
    out.density = a.density + b.density;
    out.seed = a.seed;
    out.points = a.points;
    out.points.insert(out.points.end(), b.points.begin(), b.points.end());
    return out;
}

double nn_distance_pdf(double r, double lambda) {
    if (r < 0.0) return 0.0;
    const double pi = std::numbers::pi;
    return 2.0 * pi * lambda * r * std::exp(-lambda * pi * r * r);
}

double paper_mean_nn(double lambda) { return 1.0 / (lambda * std::numbers::pi); }

double mean_path_loss(double lambda, double alpha) {
    return std::pow(lambda * std::numbers::pi, alpha);
}

} // namespace dw
