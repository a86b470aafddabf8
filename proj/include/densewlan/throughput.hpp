#pragma once

#include "densewlan/config.hpp"
#include "densewlan/contention.hpp"
#include "densewlan/link_metrics.hpp"

namespace dw {

enum class SdtMode { kHdUplink, kHdDownlink, kFullDuplex, kSsfFullDuplex };

struct SdtReport {
    SdtMode mode = SdtMode::kFullDuplex;
    double active_density = 0.0;
    double stp = 0.0;
    double sdt = 0.0; // active_density * log(1 + gamma) * stp, nats/sec/Hz
    bool stp_clamped = false;
    NetworkConfig inputs;
};

// Half-duplex spatial density of throughput for one direction at the mean
// association distance.
SdtReport sdt_hd(const NetworkConfig& cfg, Direction dir, ThetaModel model);

// FD spatial density of throughput at the mean association distance
// 1/(lambda_fd pi).
SdtReport sdt_fd(const NetworkConfig& cfg, double xi, ThetaModel model);

// Same with an explicit desired-link path loss (per-pair use).
SdtReport sdt_fd_at(const NetworkConfig& cfg, double xi, double ell_des, ThetaModel model);

// Mean FD rate under nearest-AP association: the FD rate utility integrated
// against the association distance density 2 pi lambda_fd r exp(-lambda_fd
// pi r^2), adaptive quadrature.
SdtReport ssf_mean_rate(const NetworkConfig& cfg, ThetaModel model,
                        double rel_tol = 1e-8);

} // namespace dw
