#include "densewlan/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "densewlan/link_metrics.hpp"
#include "densewlan/numerics.hpp"
#include "densewlan/rng.hpp"
#include "densewlan/throughput.hpp"
#include "densewlan/units.hpp"

namespace dw {

std::string scheme_name(Scheme s) {
    switch (s) {
        case Scheme::kSsf: return "SSF";
        case Scheme::kFdAssocFixedPcs: return "FD_ASSOC_FIXED_PCS";
        case Scheme::kJapo: return "JAPO";
        case Scheme::kHdJapo: return "HD_JAPO";
    }
    return "?";
}

std::string metric_name(Metric m) {
    switch (m) {
        case Metric::kCap: return "CAP";
        case Metric::kStp: return "STP";
        case Metric::kSdt: return "SDT";
    }
    return "?";
}

namespace {

AssociationProblem instance_for_seed(const NetworkConfig& cfg, std::uint64_t seed,
                                     const HarnessOptions& opt) {
    NetworkConfig c = cfg;
    c.seed = seed;
    AssociationProblem p = make_instance(c, opt.model);
    if (opt.use_empirical_densities) {
        p.cfg.lambda_s = p.stas.empirical_density();
        p.cfg.lambda_a = p.aps.empirical_density();
        if (!(p.cfg.lambda_s > 0.0) || !(p.cfg.lambda_a > 0.0)) {
            throw std::runtime_error("empty realization");
        }
    }
    return p;
}

double rate_factor(const NetworkConfig& cfg) { return std::log1p(cfg.gamma); }

} // namespace

RealizationRecord run_realization(const NetworkConfig& cfg, Scheme scheme, std::uint64_t seed,
                                  const HarnessOptions& opt) {
    RealizationRecord rec;
    rec.seed = seed;
    rec.gamma_star = cfg.pcs;
    try {
        AssociationProblem p = instance_for_seed(cfg, seed, opt);
        rec.lambda_hat_s = p.stas.empirical_density();
        rec.lambda_hat_a = p.aps.empirical_density();
        const NetworkConfig& c = p.cfg;

        switch (scheme) {
            case Scheme::kSsf: {
                const SdtReport r = ssf_mean_rate(c, opt.model);
                rec.sdt = r.sdt;
                rec.stp = r.stp;
                rec.cap = fd_access_probability(c, opt.model);
                if (r.stp_clamped) rec.clamped_pairs = 1;
                break;
            }
            case Scheme::kFdAssocFixedPcs: {
                const AssociationState assoc = solve_association(p);
                rec.sdt = realized_sdt(p, assoc.xi, c.pcs, &rec.clamped_pairs);
                const double act = fd_active_density(c, opt.model);
                rec.stp = act > 0.0 ? rec.sdt / (act * rate_factor(c)) : 0.0;
                rec.cap = fd_access_probability(c, opt.model);
                break;
            }
            case Scheme::kJapo:
            case Scheme::kHdJapo: {
                p.objective = scheme == Scheme::kHdJapo
                                  ? AssociationProblem::Objective::kHalfDuplex
                                  : AssociationProblem::Objective::kFullDuplex;
                const JapoResult r = japo(p);
                rec.sdt = r.sdt_star;
                rec.gamma_star = r.gamma_star;
                rec.clamped_pairs = r.clamped_pairs;
                NetworkConfig at_star = c;
                at_star.pcs = r.gamma_star;
                if (scheme == Scheme::kJapo) {
                    const double act = fd_active_density(at_star, opt.model);
                    rec.stp = act > 0.0 ? rec.sdt / (act * rate_factor(c)) : 0.0;
                } else {
                    const HdActiveDensities act = hd_active_densities(at_star, opt.model);
                    const double mix = 0.5 * (act.lambda_tilde_s + act.lambda_tilde_a);
                    rec.stp = mix > 0.0 ? rec.sdt / (mix * rate_factor(c)) : 0.0;
                }
                rec.cap = fd_access_probability(at_star, opt.model);
                break;
            }
        }
    } catch (const std::exception& e) {
        rec.ok = false;
        rec.error = e.what();
    }
    return rec;
}

unsigned harness_threads() {
    if (const char* env = std::getenv("DENSEWLAN_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

namespace {

// Index-addressed parallel map; output independent of the worker count.
template <typename F>
void parallel_for(std::size_t n, F&& body) {
    const unsigned workers = std::min<std::size_t>(harness_threads(), n == 0 ? 1 : n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                body(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace

std::vector<RealizationRecord> run_scheme_records(const NetworkConfig& cfg, Scheme scheme,
                                                  std::size_t n, std::uint64_t base_seed,
                                                  const HarnessOptions& opt) {
    std::vector<RealizationRecord> records(n);
    parallel_for(n, [&](std::size_t i) {
        records[i] = run_realization(cfg, scheme, derive_seed(base_seed, i), opt);
    });
    return records;
}

NetworkConfig apply_sweep(const NetworkConfig& base, const std::string& param, double value) {
    NetworkConfig cfg = base;
    if (param == "lambda_s") {
        cfg.lambda_s = value;
    } else if (param == "gamma") {
        cfg.gamma = db_to_linear({value});
    } else if (param == "pcs") {
        cfg.pcs = dbm_to_mw(value);
    } else if (param == "antennas") {
        cfg.m_tx = cfg.n_rx = static_cast<int>(value);
    } else {
        throw std::invalid_argument("unknown sweep parameter: " + param);
    }
    return validate(cfg);
}

namespace {

ResultRow aggregate_rows(const Scenario& s, double sweep_value, const std::string& scheme_label,
                         const std::vector<RealizationRecord>& records, Metric metric,
                         ExperimentResult& result) {
    std::vector<double> values;
    values.reserve(records.size());
    for (const auto& r : records) {
        result.total_realizations += 1;
        if (!r.ok) {
            result.failed_realizations += 1;
            continue;
        }
        result.clamped_evaluations += r.clamped_pairs;
        switch (metric) {
            case Metric::kCap: values.push_back(r.cap); break;
            case Metric::kStp: values.push_back(r.stp); break;
            case Metric::kSdt: values.push_back(r.sdt); break;
        }
    }
    const MeanStderr ms = mean_stderr(values);
    ResultRow row;
    row.sweep_param = s.sweep_param;
    row.sweep_value = sweep_value;
    row.scheme = scheme_label;
    row.metric = metric_name(metric);
    row.mean = ms.mean;
    if (ms.n >= 2) row.stderr_ = ms.stderr_;
    row.n = ms.n;
    return row;
}

std::string antenna_suffix(const std::pair<int, int>& mn) {
    return "_M" + std::to_string(mn.first) + "N" + std::to_string(mn.second);
}

} // namespace

ExperimentResult run_experiment(const Scenario& s) {
    ExperimentResult result;
    result.scenario = s.name;
    result.metric = s.metric;
    result.base_seed = s.base_seed;

    std::vector<std::pair<int, int>> variants = s.antenna_variants;
    const bool crossed = !variants.empty();
    if (!crossed) variants.push_back({s.base.m_tx, s.base.n_rx});

    for (const auto& mn : variants) {
        NetworkConfig variant_base = s.base;
        variant_base.m_tx = mn.first;
        variant_base.n_rx = mn.second;
        const std::string suffix = crossed ? antenna_suffix(mn) : "";

        if (s.metric == Metric::kStp && s.mc_stp && s.sweep_param == "gamma") {
            // Common random numbers across the threshold grid.
            NetworkConfig cfg = variant_base;
            cfg.seed = s.base_seed;
            std::vector<double> gammas;
            gammas.reserve(s.sweep_values.size());
            for (double v : s.sweep_values) gammas.push_back(db_to_linear({v}));
            const auto estimates = stp_monte_carlo_gamma_sweep(
                cfg, Direction::kFullDuplex, gammas, s.n_realizations, s.mc_options);
            for (std::size_t k = 0; k < s.sweep_values.size(); ++k) {
                ResultRow row;
                row.sweep_param = s.sweep_param;
                row.sweep_value = s.sweep_values[k];
                row.scheme = "MC" + suffix;
                row.metric = metric_name(s.metric);
                row.mean = estimates[k].estimate;
                if (estimates[k].n >= 2) row.stderr_ = estimates[k].stderr_;
                row.n = estimates[k].n;
                result.rows.push_back(row);
                result.total_realizations += estimates[k].n;
            }
            continue;
        }

        for (double value : s.sweep_values) {
            const NetworkConfig cfg = apply_sweep(variant_base, s.sweep_param, value);
            if (s.metric == Metric::kStp && s.mc_stp) {
                NetworkConfig c = cfg;
                c.seed = s.base_seed;
                const McEstimate est =
                    stp_monte_carlo(c, Direction::kFullDuplex, s.n_realizations, s.mc_options);
                ResultRow row;
                row.sweep_param = s.sweep_param;
                row.sweep_value = value;
                row.scheme = "MC" + suffix;
                row.metric = metric_name(s.metric);
                row.mean = est.estimate;
                if (est.n >= 2) row.stderr_ = est.stderr_;
                row.n = est.n;
                result.rows.push_back(row);
                result.total_realizations += est.n;
                continue;
            }
            if (s.metric == Metric::kCap) {
                // CAP needs no association solve; sample counts and evaluate.
                std::vector<RealizationRecord> records(s.n_realizations);
                parallel_for(s.n_realizations, [&](std::size_t i) {
                    RealizationRecord rec;
                    rec.seed = derive_seed(s.base_seed, i);
                    try {
                        const AssociationProblem p = instance_for_seed(cfg, rec.seed, s.options);
                        rec.lambda_hat_s = p.stas.empirical_density();
                        rec.lambda_hat_a = p.aps.empirical_density();
                        rec.cap = fd_access_probability(p.cfg, s.options.model);
                    } catch (const std::exception& e) {
                        rec.ok = false;
                        rec.error = e.what();
                    }
                    records[i] = rec;
                });
                result.rows.push_back(
                    aggregate_rows(s, value, "FD" + suffix, records, Metric::kCap, result));
                continue;
            }
            for (Scheme scheme : s.schemes) {
                const auto records =
                    run_scheme_records(cfg, scheme, s.n_realizations, s.base_seed, s.options);
                result.rows.push_back(aggregate_rows(s, value, scheme_name(scheme) + suffix,
                                                     records, s.metric, result));
            }
        }
    }

    if (result.total_realizations > 0 &&
        result.failed_realizations * 100 > result.total_realizations) {
        throw ExperimentError("more than 1% of realizations failed in scenario " + s.name);
    }
    return result;
}

std::vector<std::string> scenario_names() {
    return {"cap_vs_density", "stp_vs_sinr",     "stp_vs_density",
            "rate_vs_sinr",   "rate_vs_sinr_all", "rate_vs_density", "rate_vs_pcs"};
}

Scenario make_scenario(const std::string& name, const NetworkConfig& base, bool fast,
                       const HarnessOptions& opt) {
    Scenario s;
    s.name = name;
    s.base = base;
    s.base_seed = base.seed;
    s.options = opt;
    s.n_realizations = fast ? 1000 : 10000;

    const std::vector<double> densities{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    if (name == "cap_vs_density") {
        s.metric = Metric::kCap;
        s.sweep_param = "lambda_s";
        s.sweep_values = densities;
        s.options.use_empirical_densities = true;
    } else if (name == "stp_vs_sinr") {
        s.metric = Metric::kStp;
        s.mc_stp = true;
        s.sweep_param = "gamma";
        s.sweep_values = {-20, -15, -10, -5, 0, 5, 10, 15, 20};
        s.base.lambda_s = 0.5;
        s.base.pcs = 1.0; // 0 dBm: carrier-sense radius of 1 unit
        s.mc_options.desired_dist = 1.2;
    } else if (name == "stp_vs_density") {
        s.metric = Metric::kStp;
        s.mc_stp = true;
        s.sweep_param = "lambda_s";
        s.sweep_values = densities;
        s.base.gamma = 1.0;
        s.base.pcs = 1.0;
        s.mc_options.desired_dist = 1.2;
    } else if (name == "rate_vs_sinr") {
        s.metric = Metric::kSdt;
        s.sweep_param = "gamma";
        s.sweep_values = {-10, -5, 0, 5, 10, 15, 20, 25};
        s.schemes = {Scheme::kFdAssocFixedPcs, Scheme::kJapo};
        s.base.lambda_s = 0.9;
        s.antenna_variants = {{2, 2}, {8, 8}};
    } else if (name == "rate_vs_sinr_all") {
        s.metric = Metric::kSdt;
        s.sweep_param = "gamma";
        s.sweep_values = {-10, -5, 0, 5, 10, 15, 20, 25};
        s.schemes = {Scheme::kSsf, Scheme::kFdAssocFixedPcs, Scheme::kJapo, Scheme::kHdJapo};
        s.base.lambda_s = 0.9;
    } else if (name == "rate_vs_density") {
        s.metric = Metric::kSdt;
        s.sweep_param = "lambda_s";
        s.sweep_values = densities;
        s.schemes = {Scheme::kSsf, Scheme::kFdAssocFixedPcs, Scheme::kJapo};
        s.base.gamma = db_to_linear({10.0});
        s.base.m_tx = s.base.n_rx = 2;
    } else if (name == "rate_vs_pcs") {
        s.metric = Metric::kSdt;
        s.sweep_param = "pcs";
        s.sweep_values = {-90, -85, -80, -75, -70, -65, -60, -55, -50};
        s.schemes = {Scheme::kFdAssocFixedPcs};
        s.base.lambda_s = 0.9;
    } else {
        throw std::invalid_argument("unknown scenario: " + name);
    }
    return s;
}

} // namespace dw
