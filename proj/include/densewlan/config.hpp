#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dw {

struct Window {
    double width = 20.0;
    double height = 20.0;
    double area() const { return width * height; }
};

// Validation failure; names the offending field.
class ConfigError : public std::runtime_error {
  public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

  private:
    std::string field_;
};

// All scalar model parameters. Everything is stored in linear units (mW,
// linear SINR); dB/dBm appear only at the configuration and reporting
// boundary (see io.hpp).
struct NetworkConfig {
    double lambda_s = 0.5;    // STA intensity per unit area
    double lambda_a = 0.3;    // AP intensity per unit area
    double alpha = 3.4;       // path-loss exponent
    double p_tx = 100.0;      // transmit power, mW (20 dBm)
    double noise = 1e-10;     // noise power, mW (-100 dBm)
    double gamma = 1.0;       // SINR threshold, linear (0 dB)
    double pcs = 1e-7;        // PCS threshold, mW (-70 dBm)
    int m_tx = 4;             // transmit antennas M
    int n_rx = 2;             // receive antennas N
    double k_factor = 1.0;    // Rician K of the SI channel
    double si_atten = 1e-8;   // SI attenuation, linear (-80 dB)
    Window window{20.0, 20.0};
    std::uint64_t seed = 12345;

    double lambda_fd() const { return lambda_s + lambda_a; }
};

// Returns the config unchanged if every invariant holds, otherwise throws
// ConfigError naming the violated field. Idempotent.
NetworkConfig validate(const NetworkConfig& cfg);

} // namespace dw
