#include "densewlan/config.hpp"

namespace dw {

NetworkConfig validate(const NetworkConfig& cfg) {
    if (!(cfg.lambda_s > 0.0)) throw ConfigError("lambda_s", "density must be positive");
    if (!(cfg.lambda_a > 0.0)) throw ConfigError("lambda_a", "density must be positive");
    if (!(cfg.window.area() > 0.0)) throw ConfigError("window", "window area must be positive");
    if (!(cfg.alpha > 2.0)) throw ConfigError("alpha", "alpha must exceed 2");
    if (cfg.m_tx < 1) throw ConfigError("m_tx", "must be at least 1");
    if (cfg.n_rx < 1) throw ConfigError("n_rx", "must be at least 1");
    if (!(cfg.p_tx > 0.0)) throw ConfigError("p_tx", "must be positive in linear units");
    if (!(cfg.noise > 0.0)) throw ConfigError("noise", "must be positive in linear units");
    if (!(cfg.gamma > 0.0)) throw ConfigError("gamma", "must be positive in linear units");
    if (!(cfg.pcs > 0.0)) throw ConfigError("pcs", "must be positive in linear units");
    if (!(cfg.k_factor >= 0.0)) throw ConfigError("k_factor", "must be nonnegative");
    if (!(cfg.si_atten > 0.0)) throw ConfigError("si_atten", "must be positive in linear units");
    return cfg;
}

} // namespace dw
