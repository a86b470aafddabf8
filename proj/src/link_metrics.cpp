#include "densewlan/link_metrics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "densewlan/numerics.hpp"
#include "densewlan/rng.hpp"

namespace dw {

namespace {
constexpr double kPi = std::numbers::pi;

double atan_term(double d, double u) {
    if (u <= 0.0) return 0.0;
    if (!std::isfinite(u)) return d;
    return u * std::atan(d / u);
}
} // namespace

SiGammaParams si_gamma_params(double k_factor, double si_atten, int m_tx, int n_rx) {
    if (k_factor < 0.0) throw std::invalid_argument("si_gamma_params: k_factor must be >= 0");
    if (!(si_atten > 0.0)) throw std::invalid_argument("si_gamma_params: si_atten must be > 0");
    if (m_tx < 1 || n_rx < 1) throw std::invalid_argument("si_gamma_params: antennas must be >= 1");
    SiGammaParams p;
    p.mu = std::sqrt(k_factor * si_atten / (k_factor + 1.0));
    p.psi2 = std::sqrt(si_atten / (k_factor + 1.0));
    const double m = m_tx, n = n_rx;
    p.xi_factor = (4.0 * m * n - (n + 1.0) * (m + 1.0)) / ((n + 1.0) * (m + 1.0));
    const double mu2 = p.mu * p.mu;
    const double mean = mu2 + p.psi2;
    const double denom = p.xi_factor * mu2 * mu2 + 2.0 * mu2 * p.psi2 + p.psi2 * p.psi2;
    p.shape = mean * mean / denom;
    p.scale = denom / mean;
    return p;
}

namespace {

double sinr_common(const LinkRealization& r, double xi) {
    if (r.interferer_gains.size() != r.interferer_path_losses.size()) {
        throw std::invalid_argument("LinkRealization: interferer lists differ in length");
    }
    if (xi <= 0.0) return 0.0;
    double interference = 0.0;
    for (std::size_t k = 0; k < r.interferer_gains.size(); ++k) {
        interference += r.interferer_path_losses[k] * r.interferer_gains[k];
    }
    // Unit SI path gain; the attenuation budget lives in the Gamma scale.
    const double denom = r.noise + r.si_power + interference;
    const double num = xi * r.desired_path_loss * r.desired_gain;
    if (denom <= 0.0) return std::numeric_limits<double>::infinity();
    return num / denom;
}

} // namespace

double sinr_uplink(const LinkRealization& r, double xi) { return sinr_common(r, xi); }

double sinr_downlink(const LinkRealization& r, double xi) { return sinr_common(r, xi); }

StpValue stp_fd_analytic(const NetworkConfig& cfg, double xi, double ell_des, double lt_s,
                         double lt_a) {
    if (xi <= 0.0) return {0.0, false};
    if (!(lt_s > 0.0) || !(lt_a > 0.0)) {
        throw std::invalid_argument("stp_fd_analytic: active densities must be > 0");
    }
    if (!(ell_des > 0.0)) throw std::invalid_argument("stp_fd_analytic: ell_des must be > 0");

    const double ds = 1.0 / (lt_s * kPi);
    const double da = 1.0 / (lt_a * kPi);
    const double xl = xi * ell_des;
    const double g = cfg.gamma;

    const double noise_term = 2.0 * g * cfg.noise / xl;
    const double log_term =
        (std::log1p(g * std::pow(ds, -cfg.alpha) / xl) -
         std::log1p(g * std::pow(da, -cfg.alpha) / xl)) /
        kPi;
    const double us = std::pow(g * std::pow(ds, 1.0 - cfg.alpha) / xl, 2.0);
    const double ua = std::pow(g * std::pow(da, 1.0 - cfg.alpha) / xl, 2.0);
    const double transform =
        -2.0 * (ds + da) + 2.0 * (atan_term(ds, us) + atan_term(da, ua));

    const double exponent = -noise_term - log_term + transform;
    const double value = std::exp(exponent);
    if (value > 1.0) return {1.0, true};
    return {value, false};
}

StpValue stp_hd_analytic(const NetworkConfig& cfg, Direction dir, double xi, double ell_des,
                         double lt_dir) {
    if (dir == Direction::kFullDuplex) {
        throw std::invalid_argument("stp_hd_analytic: direction must be UL or DL");
    }
    if (xi <= 0.0) return {0.0, false};
    if (!(lt_dir > 0.0)) throw std::invalid_argument("stp_hd_analytic: lt_dir must be > 0");
    const double d = 1.0 / (lt_dir * kPi);
    const double xl = xi * ell_des;
    const double g = cfg.gamma;
    const double u = std::pow(g * std::pow(d, 1.0 - cfg.alpha) / xl, 2.0);
    const double exponent = -g * cfg.noise / xl -
                            std::log1p(g * std::pow(d, -cfg.alpha) / xl) / kPi -
                            2.0 * d + 2.0 * atan_term(d, u);
    const double value = std::exp(exponent);
    if (value > 1.0) return {1.0, true};
    return {value, false};
}

namespace {

struct ProbeDraw {
    double sinr_num = 0.0;   // xi ell g_des
    double sinr_den = 0.0;   // noise + si + interference
};

// One Monte-Carlo draw of the probe link for a single direction. The probe
// transmitter sits at the window center with a forced-win mark (Palm
// conditioning); its receiver is desired_dist away along x.
ProbeDraw draw_probe(const NetworkConfig& cfg, Direction dir, double desired_dist,
                     double cs_range, std::uint64_t seed) {
    Rng rng(seed);
    const double lambda = dir == Direction::kUplink ? cfg.lambda_s : cfg.lambda_a;

    PointSet parents;
    parents.window = cfg.window;
    parents.density = lambda;
    const std::uint64_t n = rng.poisson(lambda * cfg.window.area());
    parents.points.reserve(n + 1);
    for (std::uint64_t i = 0; i < n; ++i) {
        parents.points.push_back(
            {rng.uniform(0.0, cfg.window.width), rng.uniform(0.0, cfg.window.height)});
    }
    const Point tx{0.5 * cfg.window.width, 0.5 * cfg.window.height};
    const Point rx{tx.x + desired_dist, tx.y};
    parents.points.push_back(tx);

    ThinningInput tin;
    tin.points = parents;
    tin.marks.reserve(parents.points.size());
    for (std::uint64_t i = 0; i < n; ++i) tin.marks.push_back(rng.uniform());
    tin.marks.push_back(-1.0); // probe always wins its contention domain
    tin.cs_range = cs_range;
    const ThinningResult thinned = simulate_matern_thinning(tin);

    const SiGammaParams si =
        si_gamma_params(cfg.k_factor, cfg.si_atten, cfg.m_tx, cfg.n_rx);

    LinkRealization link;
    link.noise = cfg.noise;
    link.desired_path_loss = std::pow(desired_dist, -cfg.alpha);
    link.desired_gain = rng.gamma(static_cast<double>(cfg.m_tx), 1.0);
    link.si_power = rng.gamma(si.shape, si.scale);
    for (std::size_t idx : thinned.retained) {
        if (idx == n) continue; // the probe itself
        const double dist = distance(parents.points[idx], rx);
        link.interferer_path_losses.push_back(std::pow(std::max(dist, 1e-9), -cfg.alpha));
        link.interferer_gains.push_back(rng.exponential());
    }
    ProbeDraw out;
    out.sinr_num = link.desired_path_loss * link.desired_gain;
    double interference = 0.0;
    for (std::size_t k = 0; k < link.interferer_gains.size(); ++k) {
        interference += link.interferer_path_losses[k] * link.interferer_gains[k];
    }
    out.sinr_den = link.noise + link.si_power + interference;
    return out;
}

constexpr std::uint64_t kUplinkSalt = 0x75706C696E6BULL;
constexpr std::uint64_t kDownlinkSalt = 0x646F776E6CULL;

McStpOptions resolve(const NetworkConfig& cfg, const McStpOptions& opt) {
    McStpOptions r = opt;
    if (r.desired_dist <= 0.0) r.desired_dist = paper_mean_nn(cfg.lambda_fd());
    if (r.cs_range <= 0.0) r.cs_range = std::pow(cfg.pcs, -1.0 / cfg.alpha);
    return r;
}

std::vector<McEstimate> sweep_one_direction(const NetworkConfig& cfg, Direction dir,
                                            std::span<const double> gammas, std::size_t n,
                                            const McStpOptions& opt) {
    const McStpOptions o = resolve(cfg, opt);
    const std::uint64_t salt = dir == Direction::kUplink ? kUplinkSalt : kDownlinkSalt;
    std::vector<std::size_t> hits(gammas.size(), 0);
    for (std::size_t i = 0; i < n; ++i) {
        const ProbeDraw d =
            draw_probe(cfg, dir, o.desired_dist, o.cs_range, derive_seed(cfg.seed ^ salt, i));
        for (std::size_t k = 0; k < gammas.size(); ++k) {
            if (d.sinr_num >= gammas[k] * d.sinr_den) ++hits[k];
        }
    }
    std::vector<McEstimate> out(gammas.size());
    for (std::size_t k = 0; k < gammas.size(); ++k) {
        const double p = static_cast<double>(hits[k]) / static_cast<double>(n);
        out[k] = {p, std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(n)), n};
    }
    return out;
}

} // namespace

std::vector<McEstimate> stp_monte_carlo_gamma_sweep(const NetworkConfig& cfg, Direction dir,
                                                    std::span<const double> gammas,
                                                    std::size_t n_realizations,
                                                    const McStpOptions& opt) {
    if (n_realizations < 1) {
        throw std::invalid_argument("stp_monte_carlo: n_realizations must be >= 1");
    }
    if (dir != Direction::kFullDuplex) {
        return sweep_one_direction(cfg, dir, gammas, n_realizations, opt);
    }
    const auto ul = sweep_one_direction(cfg, Direction::kUplink, gammas, n_realizations, opt);
    const auto dl = sweep_one_direction(cfg, Direction::kDownlink, gammas, n_realizations, opt);
    std::vector<McEstimate> out(gammas.size());
    for (std::size_t k = 0; k < gammas.size(); ++k) {
        const double p = ul[k].estimate * dl[k].estimate;
        const double se = std::sqrt(ul[k].estimate * ul[k].estimate * dl[k].stderr_ * dl[k].stderr_ +
                                    dl[k].estimate * dl[k].estimate * ul[k].stderr_ * ul[k].stderr_);
        out[k] = {p, se, n_realizations};
    }
    return out;
}

McEstimate stp_monte_carlo(const NetworkConfig& cfg, Direction dir, std::size_t n_realizations,
                           const McStpOptions& opt) {
    const double g = cfg.gamma;
    return stp_monte_carlo_gamma_sweep(cfg, dir, std::span<const double>(&g, 1), n_realizations,
                                       opt)[0];
}

} // namespace dw
