#pragma once

#include <cstddef>
#include <vector>

#include "densewlan/config.hpp"
#include "densewlan/geometry.hpp"

namespace dw {

// Which Theta (contention area weight) the closed-form chain uses.
//   kQuadrature  - 2 pi Int exp(-Gamma r^alpha) r dr, adaptive quadrature.
//   kPaperErf    - pi sqrt(pi/Gamma) erf(sqrt(Gamma) * mean path loss); the
//                  erf form published with the model. Dimensionally odd for
//                  alpha != 2 but kept verbatim behind the --paper-theta
//                  switch so published curves can be reproduced.
enum class ThetaModel { kQuadrature, kPaperErf };

struct ThinningInput {
    PointSet points;
    std::vector<double> marks; // one per point, in [0, 1]
    double cs_range = 1.0;     // carrier-sense radius R
};

struct ThinningResult {
    std::vector<std::size_t> retained;
    double empirical_p = 0.0; // |retained| / |points| (0 for empty input)
};

// Matern type-II: point i survives iff no point j != i with mark_j < mark_i
// lies within cs_range. Cell-list accelerated, exact.
ThinningResult simulate_matern_thinning(const ThinningInput& input);

// Theta by adaptive quadrature of the soft retention kernel, relative
// tolerance 1e-8. dist_scale rescales the distance unit inside the kernel.
double theta_numeric(double pcs, double alpha, double dist_scale = 1.0);

// Gamma-function closed form of the same integral; internal cross-check for
// theta_numeric.
double theta_gamma_form(double pcs, double alpha);

// The published erf closed form, argument taken verbatim as a path loss.
double theta_closed_form(double pcs, double path_loss);

// Variant reading of the erf argument as the mean contender distance; logged
// alongside the verbatim form when the paper theta is active.
double theta_closed_form_distance_arg(double pcs, double mean_distance);

// Theta for a process of the given intensity under the selected model.
double theta_for_density(double pcs, double alpha, double lambda, ThetaModel model);

// p = (1 - exp(-lambda Theta)) / (lambda Theta), series-protected near 0.
double access_probability(double lambda, double theta);

// lambda * p = (1 - exp(-lambda Theta)) / Theta.
double active_density(double lambda, double theta);

struct ContentionSummary {
    double theta = 0.0;
    double access_p = 1.0;
    double active_density = 0.0;
};

ContentionSummary contention_summary(double pcs, double alpha, double lambda,
                                     ThetaModel model);

struct HdActiveDensities {
    double lambda_tilde_s = 0.0;
    double lambda_tilde_a = 0.0;
};

HdActiveDensities hd_active_densities(const NetworkConfig& cfg, ThetaModel model);

// Probability an AP-STA pair wins contention simultaneously in the
// superposed process of intensity lambda_s + lambda_a.
double fd_access_probability(const NetworkConfig& cfg, ThetaModel model);

double fd_active_density(const NetworkConfig& cfg, ThetaModel model);

// Largest PCS threshold (mW) compatible with SINR target gamma for a pair at
// the given distance with association weight xi.
double pcs_upper_bound(double xi, double dist, const NetworkConfig& cfg);

} // namespace dw
