#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "densewlan/config.hpp"
#include "densewlan/contention.hpp"

namespace dw {

// Gamma law of the residual self-interference power.
struct SiGammaParams {
    double mu = 0.0;        // Rician mean
    double psi2 = 0.0;      // Rician spread parameter (as published: sqrt(Omega/(K+1)))
    double xi_factor = 0.0; // antenna combining factor Xi
    double shape = 1.0;     // kappa
    double scale = 1.0;     // rho; mean of the law is shape * scale = mu^2 + psi2
};

SiGammaParams si_gamma_params(double k_factor, double si_atten, int m_tx, int n_rx);

// One fading/interference draw for a single link.
struct LinkRealization {
    double desired_gain = 1.0; // Chi-square 2M DoF power (Gamma(M, 1))
    double si_power = 0.0;     // Gamma(kappa, rho) draw
    std::vector<double> interferer_gains;       // unit-mean exponential
    std::vector<double> interferer_path_losses; // same length
    double desired_path_loss = 1.0;
    double noise = 0.0;
};

double sinr_uplink(const LinkRealization& r, double xi);
double sinr_downlink(const LinkRealization& r, double xi);

struct StpValue {
    double value = 0.0;
    bool clamped = false; // printed expression exceeded 1 and was clipped
};

// Closed-form success probability of a bidirectional FD transmission, taken
// verbatim from the published expression (including the sign between the two
// interference logarithms; the Monte-Carlo estimator is the adjudicator for
// that sign). Values outside [0,1] are clamped and flagged.
StpValue stp_fd_analytic(const NetworkConfig& cfg, double xi, double ell_des, double lt_s,
                         double lt_a);

enum class Direction { kUplink, kDownlink, kFullDuplex };

// Single-direction closed form used by the half-duplex comparison scheme:
// noise term plus this direction's interference transform, no SI (a
// half-duplex receiver is not transmitting).
StpValue stp_hd_analytic(const NetworkConfig& cfg, Direction dir, double xi, double ell_des,
                         double lt_dir);

struct McEstimate {
    double estimate = 0.0;
    double stderr_ = 0.0;
    std::size_t n = 0;
};

struct McStpOptions {
    double desired_dist = 0.0; // 0 -> 1/(lambda_fd pi)
    double cs_range = 0.0;     // 0 -> pcs^{-1/alpha}
};

// Monte-Carlo success probability: sample the window, thin by carrier
// sensing, draw fading, count SINR >= gamma at a probe link at the window
// center. The FD estimate is the product of independently drawn UL and DL
// estimates, matching the product form of the closed-form model.
McEstimate stp_monte_carlo(const NetworkConfig& cfg, Direction dir, std::size_t n_realizations,
                           const McStpOptions& opt = {});

// Same draws evaluated against a grid of SINR thresholds (common random
// numbers, so the estimate is non-increasing in gamma by construction).
std::vector<McEstimate> stp_monte_carlo_gamma_sweep(const NetworkConfig& cfg, Direction dir,
                                                    std::span<const double> gammas,
                                                    std::size_t n_realizations,
                                                    const McStpOptions& opt = {});

} // namespace dw
