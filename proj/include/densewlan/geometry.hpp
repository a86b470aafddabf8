#pragma once

#include <cstdint>
#include <vector>

#include "densewlan/config.hpp"

namespace dw {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

double distance(const Point& a, const Point& b);

// One realization of node locations. `density` is the intensity the set was
// sampled from (metadata), not the empirical count / area.
struct PointSet {
    std::vector<Point> points;
    double density = 0.0;
    Window window;
    std::uint64_t seed = 0;

    double empirical_density() const {
        return static_cast<double>(points.size()) / window.area();
    }
};

// Homogeneous PPP in the window: count ~ Poisson(lambda * area), positions
// i.i.d. uniform. Same seed, same output.
PointSet sample_ppp(double lambda, Window window, std::uint64_t seed);

// Union of two realizations over the same window; densities add.
PointSet superpose(const PointSet& a, const PointSet& b);

// Rayleigh nearest-neighbor density 2 pi lambda r exp(-lambda pi r^2).
double nn_distance_pdf(double r, double lambda);

// The mean nearest-neighbor spacing 1/(lambda pi) used by the closed-form
// model wherever a contender/association distance is averaged out.
double paper_mean_nn(double lambda);

// Path loss at that mean spacing: (1/(lambda pi))^{-alpha} = (lambda pi)^alpha.
double mean_path_loss(double lambda, double alpha);

} // namespace dw
