#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "densewlan/config.hpp"
#include "densewlan/contention.hpp"
#include "densewlan/link_metrics.hpp"
#include "densewlan/optimizer.hpp"

namespace dw {

enum class Scheme { kSsf, kFdAssocFixedPcs, kJapo, kHdJapo };

std::string scheme_name(Scheme s);

enum class Metric { kCap, kStp, kSdt };

std::string metric_name(Metric m);

// One network realization evaluated under one scheme. The closed-form chain
// is evaluated at the configured densities (ensemble parameters); seed to
// seed variation enters through the realized association geometry. With
// use_empirical_densities the chain is instead evaluated at the realization's
// empirical parent densities (diagnostic mode; the count noise is amplified
// exponentially by the interference terms, so ensemble statistics over such
// records are heavy-tailed).
struct RealizationRecord {
    std::uint64_t seed = 0;
    double cap = 0.0;
    double stp = 0.0;
    double sdt = 0.0;
    double lambda_hat_s = 0.0; // empirical parent densities, recorded always
    double lambda_hat_a = 0.0;
    double gamma_star = 0.0;   // selected PCS threshold (fixed for non-JAPO)
    std::size_t clamped_pairs = 0;
    bool ok = true;
    std::string error;
};

struct HarnessOptions {
    ThetaModel model = ThetaModel::kQuadrature;
    bool use_empirical_densities = false;
};

RealizationRecord run_realization(const NetworkConfig& cfg, Scheme scheme, std::uint64_t seed,
                                  const HarnessOptions& opt = {});

// Records for seeds derive_seed(base_seed, 0..n-1), realization-parallel.
// Records are indexed by seed index, so the output is identical for any
// thread count.
std::vector<RealizationRecord> run_scheme_records(const NetworkConfig& cfg, Scheme scheme,
                                                  std::size_t n, std::uint64_t base_seed,
                                                  const HarnessOptions& opt = {});

struct Scenario {
    std::string name;
    NetworkConfig base;
    std::string sweep_param; // lambda_s | gamma | pcs | antennas
    std::vector<double> sweep_values; // config units (gamma dB, pcs dBm)
    std::vector<Scheme> schemes;
    Metric metric = Metric::kSdt;
    std::size_t n_realizations = 10000;
    std::uint64_t base_seed = 1;
    HarnessOptions options;
    bool mc_stp = false; // STP metric from the Monte-Carlo estimator
    McStpOptions mc_options; // probe geometry for the MC estimator
    // Optional antenna cross (emitted as scheme suffix _M{m}N{n}).
    std::vector<std::pair<int, int>> antenna_variants;
};

struct ResultRow {
    std::string sweep_param;
    double sweep_value = 0.0;
    std::string scheme;
    std::string metric;
    double mean = 0.0;
    std::optional<double> stderr_; // absent when n < 2
    std::size_t n = 0;
};

struct ExperimentResult {
    std::string scenario;
    Metric metric = Metric::kSdt;
    std::vector<ResultRow> rows;
    std::size_t total_realizations = 0;
    std::size_t failed_realizations = 0;
    std::size_t clamped_evaluations = 0;
    std::uint64_t base_seed = 0;
};

class ExperimentError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Applies a sweep value to a copy of the config (sweep units: gamma in dB,
// pcs in dBm, antennas sets m_tx = n_rx).
NetworkConfig apply_sweep(const NetworkConfig& base, const std::string& param, double value);

// Runs the scenario; throws ExperimentError if more than 1% of realizations
// fail.
ExperimentResult run_experiment(const Scenario& s);

// Named scenario presets reproducing the published experiment families.
std::vector<std::string> scenario_names();
Scenario make_scenario(const std::string& name, const NetworkConfig& base, bool fast,
                       const HarnessOptions& opt);

// Worker count: DENSEWLAN_THREADS when set, else hardware concurrency.
unsigned harness_threads();

} // namespace dw
