#include "densewlan/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "densewlan/numerics.hpp"
#include "densewlan/units.hpp"

namespace dw::io {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (...) {
        throw ConfigError(key, "cannot parse value '" + value + "'");
    }
}

void apply_key(NetworkConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "lambda_s") cfg.lambda_s = parse_double(key, value);
    else if (key == "lambda_a") cfg.lambda_a = parse_double(key, value);
    else if (key == "alpha") cfg.alpha = parse_double(key, value);
    else if (key == "p_tx") cfg.p_tx = dbm_to_mw(parse_double(key, value));
    else if (key == "noise") cfg.noise = dbm_to_mw(parse_double(key, value));
    else if (key == "gamma") cfg.gamma = db_to_linear({parse_double(key, value)});
    else if (key == "pcs") cfg.pcs = dbm_to_mw(parse_double(key, value));
    else if (key == "m_tx") cfg.m_tx = static_cast<int>(parse_double(key, value));
    else if (key == "n_rx") cfg.n_rx = static_cast<int>(parse_double(key, value));
    else if (key == "k_factor") cfg.k_factor = parse_double(key, value);
    else if (key == "si_atten") cfg.si_atten = db_to_linear({parse_double(key, value)});
    else if (key == "window_w") cfg.window.width = parse_double(key, value);
    else if (key == "window_h") cfg.window.height = parse_double(key, value);
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(std::stoull(value));
    else throw ConfigError(key, "unknown configuration key");
}

} // namespace

NetworkConfig parse_config_text(const std::string& text) {
    NetworkConfig cfg;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config", "line " + std::to_string(line_no) + " is not key = value");
        }
        apply_key(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

NetworkConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

void apply_override(NetworkConfig& cfg, const std::string& key_value) {
    const auto eq = key_value.find('=');
    if (eq == std::string::npos) {
        throw ConfigError("override", "expected key=value, got '" + key_value + "'");
    }
    apply_key(cfg, trim(key_value.substr(0, eq)), trim(key_value.substr(eq + 1)));
}

std::string format_full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string serialize_config(const NetworkConfig& cfg) {
    std::ostringstream out;
    out << "lambda_s = " << format_full(cfg.lambda_s) << "\n";
    out << "lambda_a = " << format_full(cfg.lambda_a) << "\n";
    out << "alpha = " << format_full(cfg.alpha) << "\n";
    out << "p_tx = " << format_full(mw_to_dbm(cfg.p_tx)) << "\n";
    out << "noise = " << format_full(mw_to_dbm(cfg.noise)) << "\n";
    out << "gamma = " << format_full(linear_to_db(cfg.gamma).value) << "\n";
    out << "pcs = " << format_full(mw_to_dbm(cfg.pcs)) << "\n";
    out << "m_tx = " << cfg.m_tx << "\n";
    out << "n_rx = " << cfg.n_rx << "\n";
    out << "k_factor = " << format_full(cfg.k_factor) << "\n";
    out << "si_atten = " << format_full(linear_to_db(cfg.si_atten).value) << "\n";
    out << "window_w = " << format_full(cfg.window.width) << "\n";
    out << "window_h = " << format_full(cfg.window.height) << "\n";
    out << "seed = " << cfg.seed << "\n";
    return out.str();
}

std::string config_content_hash(const NetworkConfig& cfg) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(serialize_config(cfg))));
    return buf;
}

std::string result_csv(const ExperimentResult& result) {
    std::ostringstream out;
    out << "sweep_param,sweep_value,scheme,metric,mean,stderr,n\n";
    for (const auto& row : result.rows) {
        out << row.sweep_param << ',' << format_full(row.sweep_value) << ',' << row.scheme << ','
            << row.metric << ',' << format_full(row.mean) << ',';
        if (row.stderr_) out << format_full(*row.stderr_);
        out << ',' << row.n << "\n";
    }
    return out.str();
}

void emit_csv(const ExperimentResult& result, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << result_csv(result);
    if (!out) throw std::runtime_error("failed writing " + path);
}

std::string manifest_json(const Scenario& scenario) {
    nlohmann::ordered_json j;
    j["scenario"] = scenario.name;
    j["metric"] = metric_name(scenario.metric);
    j["base_seed"] = scenario.base_seed;
    j["n_realizations"] = scenario.n_realizations;
    j["seed_derivation"] = "splitmix64(base_seed, index)";
    j["config_hash"] = config_content_hash(scenario.base);
    j["paper_theta"] = scenario.options.model == ThetaModel::kPaperErf;
    j["use_empirical_densities"] = scenario.options.use_empirical_densities;
    if (scenario.options.model == ThetaModel::kPaperErf) {
        // Both readings of the erf argument, logged for comparison: the
        // verbatim path-loss form used by the engine and the mean-distance
        // variant.
        nlohmann::ordered_json readings;
        for (const char* who : {"sta", "ap", "fd"}) {
            const double lambda = std::string(who) == "sta"   ? scenario.base.lambda_s
                                  : std::string(who) == "ap" ? scenario.base.lambda_a
                                                             : scenario.base.lambda_fd();
            readings[who] = {
                {"theta_pathloss_arg",
                 theta_closed_form(scenario.base.pcs,
                                   mean_path_loss(lambda, scenario.base.alpha))},
                {"theta_distance_arg",
                 theta_closed_form_distance_arg(scenario.base.pcs, paper_mean_nn(lambda))}};
        }
        j["paper_theta_readings"] = readings;
    }
    j["config"] = serialize_config(scenario.base);
    return j.dump(2) + "\n";
}

void write_manifest(const Scenario& scenario, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << manifest_json(scenario);
    if (!out) throw std::runtime_error("failed writing " + path);
}

void dump_points_csv(const PointSet& points, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "x,y\n";
    for (const auto& p : points.points) {
        out << format_full(p.x) << ',' << format_full(p.y) << "\n";
    }
}

} // namespace dw::io
