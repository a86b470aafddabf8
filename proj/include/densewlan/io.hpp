#pragma once

#include <string>
#include <vector>

#include "densewlan/config.hpp"
#include "densewlan/geometry.hpp"
#include "densewlan/harness.hpp"

namespace dw::io {

// Flat key = value config text; powers in dBm, gamma in dB, si_atten in dB.
// Keys: lambda_s lambda_a alpha p_tx noise gamma pcs m_tx n_rx k_factor
// si_atten window_w window_h seed. '#' starts a comment. Unknown keys error.
NetworkConfig parse_config_text(const std::string& text);
NetworkConfig parse_config_file(const std::string& path);

// Applies one "key=value" override (same keys and units as the file).
void apply_override(NetworkConfig& cfg, const std::string& key_value);

// Canonical key = value serialization (configuration units, full precision);
// equal configs serialize identically.
std::string serialize_config(const NetworkConfig& cfg);

// FNV-1a 64 content hash of the canonical serialization, hex.
std::string config_content_hash(const NetworkConfig& cfg);

// Formats with 17 significant digits (round-trips doubles exactly).
std::string format_full(double v);

std::string result_csv(const ExperimentResult& result);
void emit_csv(const ExperimentResult& result, const std::string& path);

// Manifest: scenario, seed lineage, config hash, theta switch. The
// paper-theta variant additionally logs both readings of the erf argument.
std::string manifest_json(const Scenario& scenario);
void write_manifest(const Scenario& scenario, const std::string& path);

// x,y point dump.
void dump_points_csv(const PointSet& points, const std::string& path);

} // namespace dw::io
