#include "densewlan/contention.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "densewlan/numerics.hpp"

namespace dw {

namespace {
constexpr double kPi = std::numbers::pi;
}

ThinningResult simulate_matern_thinning(const ThinningInput& input) {
    const auto& pts = input.points.points;
    const std::size_t n = pts.size();
    if (input.marks.size() != n) {
        throw std::invalid_argument("simulate_matern_thinning: marks length != point count");
    }
    if (!(input.cs_range > 0.0)) {
        throw std::invalid_argument("simulate_matern_thinning: cs_range must be > 0");
    }
    ThinningResult out;
    if (n == 0) return out;

    // Cell list with cell size >= R so contenders live in the 3x3 block.
    const double r = input.cs_range;
    const double r2 = r * r;
    const Window w = input.points.window;
    const int nx = std::max(1, static_cast<int>(w.width / r));
    const int ny = std::max(1, static_cast<int>(w.height / r));
    const double cx = w.width / nx;
    const double cy = w.height / ny;
    std::vector<std::vector<std::size_t>> cells(static_cast<std::size_t>(nx) * ny);
    auto cell_of = [&](const Point& p) {
        int ix = std::min(nx - 1, std::max(0, static_cast<int>(p.x / cx)));
        int iy = std::min(ny - 1, std::max(0, static_cast<int>(p.y / cy)));
        return std::make_pair(ix, iy);
    };
    for (std::size_t i = 0; i < n; ++i) {
        auto [ix, iy] = cell_of(pts[i]);
        cells[static_cast<std::size_t>(iy) * nx + ix].push_back(i);
    }
    out.retained.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto [ix, iy] = cell_of(pts[i]);
        bool blocked = false;
        for (int dy = -1; dy <= 1 && !blocked; ++dy) {
            const int jy = iy + dy;
            if (jy < 0 || jy >= ny) continue;
            for (int dx = -1; dx <= 1 && !blocked; ++dx) {
                const int jx = ix + dx;
                if (jx < 0 || jx >= nx) continue;
                for (std::size_t j : cells[static_cast<std::size_t>(jy) * nx + jx]) {
                    if (j == i) continue;
                    if (input.marks[j] < input.marks[i]) {
                        const double ddx = pts[i].x - pts[j].x;
                        const double ddy = pts[i].y - pts[j].y;
                        if (ddx * ddx + ddy * ddy <= r2) {
                            blocked = true;
                            break;
                        }
                    }
                }
            }
        }
        if (!blocked) out.retained.push_back(i);
    }
    out.empirical_p = static_cast<double>(out.retained.size()) / static_cast<double>(n);
    return out;
}

namespace {

// The substitution u = Gamma^{1/alpha} * s * r makes the kernel integral
// scale-free; the alpha-dependent base integral is cached.
double theta_base_integral(double alpha) {
    static std::mutex mu;
    static std::map<double, double> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        if (auto it = cache.find(alpha); it != cache.end()) return it->second;
    }
    const double cut = std::pow(120.0, 1.0 / alpha); // exp(-120) tail
    const double base = adaptive_simpson(
        [alpha](double u) { return std::exp(-std::pow(u, alpha)) * u; }, 0.0, cut, 1e-9);
    std::lock_guard<std::mutex> lock(mu);
    cache[alpha] = base;
    return base;
}

} // namespace

double theta_numeric(double pcs, double alpha, double dist_scale) {
    if (!(pcs > 0.0)) throw std::invalid_argument("theta_numeric: pcs must be > 0");
    if (!(alpha > 0.0)) throw std::invalid_argument("theta_numeric: alpha must be > 0");
    const double scale = std::pow(pcs, -2.0 / alpha) / (dist_scale * dist_scale);
    return 2.0 * kPi * theta_base_integral(alpha) * scale;
}

double theta_gamma_form(double pcs, double alpha) {
    return 2.0 * kPi / alpha * std::tgamma(2.0 / alpha) * std::pow(pcs, -2.0 / alpha);
}

double theta_closed_form(double pcs, double path_loss) {
    if (!(pcs > 0.0)) throw std::invalid_argument("theta_closed_form: pcs must be > 0");
    return kPi * std::sqrt(kPi / pcs) * std::erf(std::sqrt(pcs) * path_loss);
}

double theta_closed_form_distance_arg(double pcs, double mean_distance) {
    return kPi * std::sqrt(kPi / pcs) * std::erf(std::sqrt(pcs) * mean_distance);
}

double theta_for_density(double pcs, double alpha, double lambda, ThetaModel model) {
    switch (model) {
        case ThetaModel::kQuadrature:
            return theta_numeric(pcs, alpha);
        case ThetaModel::kPaperErf:
            return theta_closed_form(pcs, mean_path_loss(lambda, alpha));
    }
    return 0.0;
}

double access_probability(double lambda, double theta) {
    if (!(lambda > 0.0)) throw std::invalid_argument("access_probability: lambda must be > 0");
    if (theta < 0.0) throw std::invalid_argument("access_probability: theta must be >= 0");
    return one_minus_exp_over(lambda * theta);
}

double active_density(double lambda, double theta) {
    return lambda * access_probability(lambda, theta);
}

ContentionSummary contention_summary(double pcs, double alpha, double lambda,
                                     ThetaModel model) {
    ContentionSummary s;
    s.theta = theta_for_density(pcs, alpha, lambda, model);
    s.access_p = access_probability(lambda, s.theta);
    s.active_density = lambda * s.access_p;
    return s;
}

HdActiveDensities hd_active_densities(const NetworkConfig& cfg, ThetaModel model) {
    HdActiveDensities out;
    out.lambda_tilde_s =
        active_density(cfg.lambda_s, theta_for_density(cfg.pcs, cfg.alpha, cfg.lambda_s, model));
    out.lambda_tilde_a =
        active_density(cfg.lambda_a, theta_for_density(cfg.pcs, cfg.alpha, cfg.lambda_a, model));
    return out;
}

double fd_access_probability(const NetworkConfig& cfg, ThetaModel model) {
    const double lambda_fd = cfg.lambda_fd();
    return access_probability(lambda_fd,
                              theta_for_density(cfg.pcs, cfg.alpha, lambda_fd, model));
}

double fd_active_density(const NetworkConfig& cfg, ThetaModel model) {
    return cfg.lambda_fd() * fd_access_probability(cfg, model);
}

double pcs_upper_bound(double xi, double dist, const NetworkConfig& cfg) {
    if (!(dist > 0.0)) throw std::invalid_argument("pcs_upper_bound: dist must be > 0");
    const double guard = 1.0 + cfg.p_tx * std::pow(cfg.gamma, 1.0 / cfg.alpha);
    return xi * std::pow(dist, -cfg.alpha) / std::pow(guard, cfg.alpha);
}

} // namespace dw
