#include "densewlan/throughput.hpp"

#include <cmath>
#include <numbers>

#include "densewlan/numerics.hpp"

namespace dw {

namespace {
constexpr double kPi = std::numbers::pi;
}

SdtReport sdt_hd(const NetworkConfig& cfg, Direction dir, ThetaModel model) {
    const HdActiveDensities act = hd_active_densities(cfg, model);
    const double lt = dir == Direction::kUplink ? act.lambda_tilde_s : act.lambda_tilde_a;
    const double ell = mean_path_loss(cfg.lambda_fd(), cfg.alpha);
    const StpValue stp = stp_hd_analytic(cfg, dir, 1.0, ell, lt);
    SdtReport r;
    r.mode = dir == Direction::kUplink ? SdtMode::kHdUplink : SdtMode::kHdDownlink;
    r.active_density = lt;
    r.stp = stp.value;
    r.stp_clamped = stp.clamped;
    r.sdt = r.active_density * std::log1p(cfg.gamma) * r.stp;
    r.inputs = cfg;
    return r;
}

SdtReport sdt_fd_at(const NetworkConfig& cfg, double xi, double ell_des, ThetaModel model) {
    const HdActiveDensities act = hd_active_densities(cfg, model);
    const StpValue stp =
        stp_fd_analytic(cfg, xi, ell_des, act.lambda_tilde_s, act.lambda_tilde_a);
    SdtReport r;
    r.mode = SdtMode::kFullDuplex;
    r.active_density = fd_active_density(cfg, model);
    r.stp = stp.value;
    r.stp_clamped = stp.clamped;
    r.sdt = r.active_density * std::log1p(cfg.gamma) * r.stp;
    r.inputs = cfg;
    return r;
}

SdtReport sdt_fd(const NetworkConfig& cfg, double xi, ThetaModel model) {
    return sdt_fd_at(cfg, xi, mean_path_loss(cfg.lambda_fd(), cfg.alpha), model);
}

SdtReport ssf_mean_rate(const NetworkConfig& cfg, ThetaModel model, double rel_tol) {
    const HdActiveDensities act = hd_active_densities(cfg, model);
    const double lambda_fd = cfg.lambda_fd();
    const double lt_fd = fd_active_density(cfg, model);
    const double rate = std::log1p(cfg.gamma);

    // Rayleigh association-distance density; mass beyond r_max is below
    // exp(-120), far under the stated 1e-10 tail bound even with the
    // integrand clamped at 1.
    const double r_max = std::sqrt(120.0 / (lambda_fd * kPi));
    bool clamped = false;
    const auto integrand = [&](double r) {
        if (r <= 0.0) return 0.0;
        const double f = 2.0 * kPi * lambda_fd * r * std::exp(-lambda_fd * kPi * r * r);
        const StpValue stp = stp_fd_analytic(cfg, 1.0, std::pow(r, -cfg.alpha),
                                             act.lambda_tilde_s, act.lambda_tilde_a);
        if (stp.clamped) clamped = true;
        return f * stp.value;
    };
    const double mean_stp = adaptive_simpson(integrand, 0.0, r_max, rel_tol);

    SdtReport r;
    r.mode = SdtMode::kSsfFullDuplex;
    r.active_density = lt_fd;
    r.stp = mean_stp;
    r.stp_clamped = clamped;
    r.sdt = r.active_density * rate * r.stp;
    r.inputs = cfg;
    return r;
}

} // namespace dw
