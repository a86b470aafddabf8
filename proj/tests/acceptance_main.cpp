// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are fixed here, not tuned at run time.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "densewlan/harness.hpp"
#include "densewlan/io.hpp"
#include "densewlan/link_metrics.hpp"
#include "densewlan/numerics.hpp"
#include "densewlan/optimizer.hpp"
#include "densewlan/rng.hpp"
#include "densewlan/throughput.hpp"
#include "densewlan/units.hpp"

using namespace dw;

namespace {

constexpr double kPi = std::numbers::pi;

int g_failures = 0;

void report(int criterion, bool pass, const std::string& what, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", criterion, what.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct ThinningStats {
    double mean = 0.0;
    double stderr_ = 0.0;
    std::size_t close_pairs = 0; // retained pairs within the hard-core range
};

// Pooled interior-node retention across realizations (per-point average;
// an unweighted mean of per-realization fractions would be biased up because
// retention anti-correlates with the realized count), plus the exhaustive
// hard-core check. The stderr is the ratio-estimator one.
ThinningStats thinning_oracle(double lambda, double radius, std::size_t n_real,
                              std::uint64_t base_seed) {
    const Window w{20.0, 20.0};
    std::vector<double> hit_counts, interior_counts;
    hit_counts.reserve(n_real);
    interior_counts.reserve(n_real);
    ThinningStats out;
    for (std::size_t rep = 0; rep < n_real; ++rep) {
        ThinningInput in;
        in.points = sample_ppp(lambda, w, derive_seed(base_seed, rep));
        in.cs_range = radius;
        Rng rng(derive_seed(base_seed ^ 0xFACE, rep));
        in.marks.reserve(in.points.points.size());
        for (std::size_t i = 0; i < in.points.points.size(); ++i) in.marks.push_back(rng.uniform());
        const ThinningResult res = simulate_matern_thinning(in);

        for (std::size_t a = 0; a < res.retained.size(); ++a) {
            for (std::size_t b = a + 1; b < res.retained.size(); ++b) {
                if (distance(in.points.points[res.retained[a]],
                             in.points.points[res.retained[b]]) <= radius) {
                    ++out.close_pairs;
                }
            }
        }

        std::vector<char> kept(in.points.points.size(), 0);
        for (std::size_t i : res.retained) kept[i] = 1;
        double hits = 0.0, n = 0.0;
        for (std::size_t i = 0; i < in.points.points.size(); ++i) {
            const auto& p = in.points.points[i];
            if (p.x < radius || p.y < radius || p.x > w.width - radius ||
                p.y > w.height - radius) {
                continue;
            }
            n += 1.0;
            hits += kept[i];
        }
        hit_counts.push_back(hits);
        interior_counts.push_back(n);
    }
    const double total_hits = pairwise_sum(hit_counts);
    const double total_n = pairwise_sum(interior_counts);
    out.mean = total_hits / total_n;
    double ss = 0.0;
    for (std::size_t i = 0; i < hit_counts.size(); ++i) {
        const double resid = hit_counts[i] - out.mean * interior_counts[i];
        ss += resid * resid;
    }
    out.stderr_ = std::sqrt(ss) / total_n;
    return out;
}

void criterion_1_and_2() {
    const auto t0 = std::chrono::steady_clock::now();
    const double lambda = 0.5;
    bool pass = true;
    std::string detail;
    std::size_t close_pairs = 0;
    for (double x : {0.25, 1.0, 4.0}) {
        const double radius = std::sqrt(x / (lambda * kPi));
        const ThinningStats st = thinning_oracle(lambda, radius, 10000, 1000 + (int)(x * 8));
        const double analytic = access_probability(lambda, kPi * radius * radius);
        const double gap = std::abs(st.mean - analytic);
        pass = pass && gap <= 3.0 * st.stderr_;
        close_pairs += st.close_pairs;
        char buf[160];
        std::snprintf(buf, sizeof(buf), "x=%.2f sim=%.6f vs %.6f (%.1f se) ", x, st.mean, analytic,
                      st.stderr_ > 0 ? gap / st.stderr_ : 0.0);
        detail += buf;
    }
    const double dt = seconds_since(t0);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.1fs", dt);
    report(1, pass && dt < 60.0, "Matern oracle equivalence at 3 standard errors", detail + buf);
    report(2, close_pairs == 0, "hard-core property of retained sets",
           "0 close pairs required, found " + std::to_string(close_pairs));
}

void criterion_3() {
    const SiGammaParams p = si_gamma_params(1.0, dbm_to_mw(-80.0) /* =1e-8 linear */, 4, 2);
    const double mean_target = p.shape * p.scale;
    const double identity_gap = std::abs(mean_target - (p.mu * p.mu + p.psi2));
    Rng rng(31337);
    const std::size_t n = 1000000;
    double sum = 0.0, sumsq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = rng.gamma(p.shape, p.scale);
        sum += x;
        sumsq += x * x;
    }
    const double mean = sum / n;
    const double var = sumsq / n - mean * mean;
    const bool pass = std::abs(mean - mean_target) <= 0.01 * mean_target &&
                      std::abs(var - p.shape * p.scale * p.scale) <=
                          0.01 * p.shape * p.scale * p.scale &&
                      identity_gap <= 1e-9 * mean_target;
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "mean err %.3f%%, var err %.3f%%, kappa*rho identity gap %.2e",
                  100.0 * std::abs(mean - mean_target) / mean_target,
                  100.0 * std::abs(var - p.shape * p.scale * p.scale) /
                      (p.shape * p.scale * p.scale),
                  identity_gap);
    report(3, pass, "self-interference Gamma statistics at 1e6 draws", buf);
}

void criterion_4() {
    NetworkConfig iso;
    iso.lambda_s = 1e-6;
    iso.lambda_a = 1e-6;
    iso.noise = dbm_to_mw(-20.0);
    iso.gamma = db_to_linear({10.0});
    iso.m_tx = 1;
    iso.n_rx = 1;
    iso.si_atten = 1e-30;
    iso.seed = 424242;
    McStpOptions opt;
    opt.desired_dist = 1.6;
    opt.cs_range = 2.0;
    const McEstimate est = stp_monte_carlo(iso, Direction::kUplink, 40000, opt);
    const double expected = std::exp(-iso.gamma * iso.noise * std::pow(opt.desired_dist, iso.alpha));
    const bool rayleigh_ok = std::abs(est.estimate - expected) <= 3.0 * est.stderr_;

    NetworkConfig fdc;
    fdc.lambda_s = 0.3;
    fdc.lambda_a = 0.3;
    fdc.pcs = 0.0947;
    fdc.m_tx = 2;
    fdc.n_rx = 2;
    fdc.seed = 99;
    const std::size_t n = 30000;
    const McEstimate fd = stp_monte_carlo(fdc, Direction::kFullDuplex, n);
    NetworkConfig ulc = fdc;
    ulc.seed = 199;
    NetworkConfig dlc = fdc;
    dlc.seed = 299;
    const McEstimate ul = stp_monte_carlo(ulc, Direction::kUplink, n);
    const McEstimate dl = stp_monte_carlo(dlc, Direction::kDownlink, n);
    const double prod = ul.estimate * dl.estimate;
    const double se = std::sqrt(fd.stderr_ * fd.stderr_ +
                                ul.estimate * ul.estimate * dl.stderr_ * dl.stderr_ +
                                dl.estimate * dl.estimate * ul.stderr_ * ul.stderr_);
    const bool product_ok = std::abs(fd.estimate - prod) <= 3.0 * se;

    char buf[200];
    std::snprintf(buf, sizeof(buf), "rayleigh %.4f vs %.4f (se %.4f); product %.4f vs %.4f (se %.4f)",
                  est.estimate, expected, est.stderr_, fd.estimate, prod, se);
    report(4, rayleigh_ok && product_ok, "Monte-Carlo STP vs closed forms", buf);
}

void criterion_5() {
    const auto t0 = std::chrono::steady_clock::now();
    HarnessOptions opt;
    opt.model = ThetaModel::kPaperErf;
    NetworkConfig base;
    base.lambda_a = 0.3;

    auto run_caps = [&](double pcs_dbm) {
        Scenario s = make_scenario("cap_vs_density", base, true, opt);
        s.base.pcs = dbm_to_mw(pcs_dbm);
        s.n_realizations = 1000;
        return run_experiment(s);
    };
    const ExperimentResult loose = run_caps(-30.0);
    const ExperimentResult tight = run_caps(-70.0);

    bool monotone = true, ordered = true;
    for (std::size_t k = 0; k < tight.rows.size(); ++k) {
        if (k > 0 && tight.rows[k].mean >= tight.rows[k - 1].mean) monotone = false;
        if (k > 0 && loose.rows[k].mean >= loose.rows[k - 1].mean) monotone = false;
        if (loose.rows[k].mean <= tight.rows[k].mean) ordered = false;
    }
    const double dt = seconds_since(t0);
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "CAP(-30dBm) in [%.4f, %.4f], CAP(-70dBm) in [%.4f, %.4f], %.1fs",
                  loose.rows.back().mean, loose.rows.front().mean, tight.rows.back().mean,
                  tight.rows.front().mean, dt);
    report(5, monotone && ordered && dt < 120.0,
           "access probability decreasing in density, ordered in threshold", buf);
}

void criterion_6() {
    NetworkConfig base;
    base.lambda_s = 0.5;
    base.lambda_a = 0.3;
    base.pcs = 1.0; // 0 dBm: carrier-sense radius of 1 unit
    base.seed = 6001;
    McStpOptions probe;
    probe.desired_dist = 1.2; // an in-cell link on the contention scale

    // (a) non-increasing in gamma under common random numbers.
    std::vector<double> gammas;
    for (double g_db = -20.0; g_db <= 20.0; g_db += 5.0) gammas.push_back(db_to_linear({g_db}));
    const auto sweep =
        stp_monte_carlo_gamma_sweep(base, Direction::kFullDuplex, gammas, 2000, probe);
    bool decreasing_gamma = true;
    for (std::size_t k = 1; k < sweep.size(); ++k) {
        if (sweep[k].estimate > sweep[k - 1].estimate) decreasing_gamma = false;
    }
    if (sweep.front().estimate <= sweep.back().estimate) decreasing_gamma = false;

    // (b) decreasing in density at gamma = 0 dB.
    std::vector<double> by_density;
    for (double ls : {0.1, 0.5, 0.9}) {
        NetworkConfig cfg = base;
        cfg.lambda_s = ls;
        cfg.gamma = 1.0;
        by_density.push_back(stp_monte_carlo(cfg, Direction::kFullDuplex, 2000, probe).estimate);
    }
    const bool decreasing_density = by_density[0] > by_density[1] && by_density[1] > by_density[2];

    // (c) increasing with antennas.
    std::vector<double> by_antennas;
    for (int m : {1, 2, 4, 8}) {
        NetworkConfig cfg = base;
        cfg.gamma = 1.0;
        cfg.m_tx = m;
        cfg.n_rx = m;
        by_antennas.push_back(stp_monte_carlo(cfg, Direction::kFullDuplex, 2000, probe).estimate);
    }
    bool increasing_antennas = true;
    for (std::size_t k = 1; k < by_antennas.size(); ++k) {
        if (by_antennas[k] <= by_antennas[k - 1]) increasing_antennas = false;
    }

    char buf[240];
    std::snprintf(buf, sizeof(buf),
                  "gamma sweep %.3f->%.3f; density %.3f/%.3f/%.3f; antennas %.3f/%.3f/%.3f/%.3f",
                  sweep.front().estimate, sweep.back().estimate, by_density[0], by_density[1],
                  by_density[2], by_antennas[0], by_antennas[1], by_antennas[2], by_antennas[3]);
    report(6, decreasing_gamma && decreasing_density && increasing_antennas,
           "Monte-Carlo STP shapes in gamma, density, antennas", buf);
}

void criterion_7() {
    NetworkConfig base;
    base.lambda_s = 0.5;
    base.lambda_a = 0.3;
    base.window = {10.0, 10.0};
    bool pass = true;
    std::string why;
    for (int k = 0; k < 100; ++k) {
        NetworkConfig cfg = base;
        cfg.seed = derive_seed(70000, k);
        AssociationProblem p;
        try {
            p = make_instance(cfg, ThetaModel::kPaperErf);
        } catch (...) {
            continue;
        }
        if (p.n_aps() == 0 || p.n_stas() == 0) continue;
        const AssociationState st = solve_association(p, 1e-9, 500);
        if (!st.converged) {
            pass = false;
            why = "association did not converge on seed " + std::to_string(k);
            break;
        }
        if (st.delta < 0.0 || st.eta < 0.0) {
            pass = false;
            why = "negative multiplier";
            break;
        }
        for (std::size_t j = 0; j < st.xi.n_stas; ++j) {
            const double s = st.xi.sta_sum(j);
            if (std::abs(s - 1.0) > 1e-12) {
                pass = false;
                why = "per-STA mass != 1";
            }
            for (std::size_t i = 0; i < st.xi.n_aps; ++i) {
                const double v = st.xi.at(i, j);
                if (v != 0.0 && v != 1.0) {
                    pass = false;
                    why = "non-binary weight after rounding";
                }
            }
        }
        std::vector<std::pair<double, double>> trace;
        const NewtonState nt = newton_pcs(st.xi, p, cfg.pcs, &trace);
        for (std::size_t i = 1; i < trace.size(); ++i) {
            if (trace[i].second < trace[i - 1].second) {
                pass = false;
                why = "newton accepted a decreasing step";
            }
        }
        const double bound = pcs_upper_bound(1.0, paper_mean_nn(cfg.lambda_fd()), cfg);
        if (nt.gamma_pcs > bound * (1.0 + 1e-12)) {
            pass = false;
            why = "gamma* violates the threshold bound";
        }
        if (!pass) break;
    }
    report(7, pass, "optimizer invariants on 100 seeded instances", pass ? "all held" : why);
}

void criterion_8() {
    NetworkConfig base;
    base.lambda_s = 0.5;
    base.lambda_a = 0.3;
    base.window = {10.0, 10.0};
    int zero_gaps = 0, reported = 0;
    double worst = 0.0;
    for (int seed = 0; seed < 20; ++seed) {
        const AssociationProblem p =
            make_fixed_count_instance(3, 5, base, ThetaModel::kPaperErf, 800 + seed);
        const AssociationState st = solve_association(p);
        const double solver_value = lagrangian(st.xi, st.delta, st.eta, p);
        double best = -1e300;
        for (int code = 0; code < 243; ++code) {
            XiMatrix xi;
            xi.n_aps = 3;
            xi.n_stas = 5;
            xi.values.assign(15, 0.0);
            int c = code;
            for (std::size_t j = 0; j < 5; ++j) {
                xi.at(static_cast<std::size_t>(c % 3), j) = 1.0;
                c /= 3;
            }
            best = std::max(best, lagrangian(xi, st.delta, st.eta, p));
        }
        const double gap = (best - solver_value) / std::max(1.0, std::abs(best));
        ++reported;
        worst = std::max(worst, gap);
        if (gap <= 1e-6) ++zero_gaps;
        std::printf("    seed %2d: relaxed-rounded vs enumeration gap %.3e\n", seed, gap);
    }
    char buf[120];
    std::snprintf(buf, sizeof(buf), "%d/20 gaps within 1e-6, worst %.3e, all reported", zero_gaps,
                  worst);
    report(8, reported == 20 && zero_gaps >= 16, "brute-force association oracle (3 APs x 5 STAs)",
           buf);
}

void criterion_9() {
    const auto t0 = std::chrono::steady_clock::now();
    bool pass = true;
    std::string detail;
    for (double ls : {0.3, 0.6, 0.9}) {
        NetworkConfig cfg;
        cfg.lambda_s = ls;
        cfg.seed = 90000 + static_cast<std::uint64_t>(ls * 10);
        const AssociationProblem p = make_instance(cfg, ThetaModel::kPaperErf);
        const AssociationState assoc = solve_association(p);
        const NewtonState nt = newton_pcs(assoc.xi, p, cfg.pcs);
        const double bound = pcs_upper_bound(1.0, paper_mean_nn(cfg.lambda_fd()), cfg);
        double best = 0.0;
        for (int k = 0; k < 200; ++k) {
            const double g = bound * 1e-4 * std::pow(1e4, k / 199.0);
            best = std::max(best, pcs_objective(p, g));
        }
        const double rel = (best - nt.objective) / best;
        pass = pass && rel <= 0.005;
        char buf[96];
        std::snprintf(buf, sizeof(buf), "ls=%.1f gap=%.2e ", ls, rel);
        detail += buf;
    }
    const double dt = seconds_since(t0);
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.1fs", dt);
    report(9, pass && dt < 300.0, "Newton threshold within 0.5% of the 200-point grid best",
           detail + buf);
}

void criterion_10() {
    HarnessOptions opt;
    opt.model = ThetaModel::kPaperErf;
    bool pass = true;
    std::string detail;
    double m2_g10_gap = 0.0;
    for (double g_db : {0.0, 10.0}) {
        for (int m : {2, 8}) {
            NetworkConfig cfg;
            cfg.lambda_s = 0.9;
            cfg.lambda_a = 0.3;
            cfg.gamma = db_to_linear({g_db});
            cfg.m_tx = m;
            cfg.n_rx = m;
            cfg.seed = 101010;
            const std::size_t n = 1000;
            const auto japo_recs = run_scheme_records(cfg, Scheme::kJapo, n, cfg.seed, opt);
            const auto assoc_recs =
                run_scheme_records(cfg, Scheme::kFdAssocFixedPcs, n, cfg.seed, opt);
            const auto ssf_recs = run_scheme_records(cfg, Scheme::kSsf, n, cfg.seed, opt);

            std::vector<double> d_japo_assoc, d_assoc_ssf;
            for (std::size_t i = 0; i < n; ++i) {
                if (!japo_recs[i].ok || !assoc_recs[i].ok || !ssf_recs[i].ok) continue;
                d_japo_assoc.push_back(japo_recs[i].sdt - assoc_recs[i].sdt);
                d_assoc_ssf.push_back(assoc_recs[i].sdt - ssf_recs[i].sdt);
            }
            const MeanStderr d1 = mean_stderr(d_japo_assoc);
            const MeanStderr d2 = mean_stderr(d_assoc_ssf);
            const bool ok1 = d1.mean >= 2.0 * d1.stderr_;
            const bool ok2 = d2.mean >= 2.0 * d2.stderr_;
            pass = pass && ok1 && ok2;
            if (g_db == 10.0 && m == 2) {
                m2_g10_gap = d1.mean;
                pass = pass && d1.mean > 0.0;
            }
            char buf[160];
            std::snprintf(buf, sizeof(buf), "g=%.0fdB M=%d: japo-assoc %.2e (%.0f se) assoc-ssf %.2e (%.0f se); ",
                          g_db, m, d1.mean, d1.stderr_ > 0 ? d1.mean / d1.stderr_ : 0.0, d2.mean,
                          d2.stderr_ > 0 ? d2.mean / d2.stderr_ : 0.0);
            detail += buf;
        }
    }
    char buf[80];
    std::snprintf(buf, sizeof(buf), "gap(10dB,M=2)=%.3e nats/s/Hz", m2_g10_gap);
    report(10, pass, "headline scheme ordering at 2 sigma over 1e3 paired seeds",
           detail + buf);
}

void criterion_11() {
    // (a) gradient sign vs secant slope across the feasible interval.
    NetworkConfig cfg;
    cfg.lambda_s = 0.9;
    cfg.seed = 11011;
    const AssociationProblem p = make_instance(cfg, ThetaModel::kPaperErf);
    const double bound = pcs_upper_bound(1.0, paper_mean_nn(cfg.lambda_fd()), cfg);
    int agree = 0, total = 0;
    double prev_g = 0.0, prev_v = 0.0;
    for (int k = 0; k <= 50; ++k) {
        const double g = bound * 1e-4 * std::pow(1e4, k / 50.0);
        const double v = pcs_objective(p, g);
        if (k > 0) {
            const double secant = (v - prev_v) / (g - prev_g);
            const double grad = sdt_derivatives(0.5 * (g + prev_g), p).grad;
            ++total;
            if (grad * secant > 0.0) ++agree;
        }
        prev_g = g;
        prev_v = v;
    }
    const bool signs_ok = agree == total;

    // (b) SSF quadrature stable under tolerance halving.
    const SdtReport a = ssf_mean_rate(cfg, ThetaModel::kPaperErf, 1e-8);
    const SdtReport b = ssf_mean_rate(cfg, ThetaModel::kPaperErf, 5e-9);
    const bool quad_ok = std::abs(a.sdt - b.sdt) <= 1e-6 * std::abs(a.sdt);

    // (c) series fallback vs direct evaluation at the crossover.
    const double series = one_minus_exp_over_series(1e-8);
    const double direct = one_minus_exp_over_direct(1e-8);
    const bool series_ok = std::abs(series - direct) <= 1e-12;

    char buf[160];
    std::snprintf(buf, sizeof(buf), "sign agreement %d/%d, quad delta %.2e, series delta %.2e",
                  agree, total, std::abs(a.sdt - b.sdt) / std::abs(a.sdt),
                  std::abs(series - direct));
    report(11, signs_ok && quad_ok && series_ok, "numerical hygiene", buf);
}

void criterion_12() {
    NetworkConfig base;
    base.lambda_s = 0.5;
    base.lambda_a = 0.3;
    base.window = {12.0, 12.0};
    base.seed = 1212;
    Scenario s;
    s.name = "determinism";
    s.base = base;
    s.base_seed = base.seed;
    s.metric = Metric::kSdt;
    s.sweep_param = "gamma";
    s.sweep_values = {0.0, 10.0};
    s.schemes = {Scheme::kSsf, Scheme::kFdAssocFixedPcs, Scheme::kJapo};
    s.options.model = ThetaModel::kPaperErf;
    s.n_realizations = 50;
    const ExperimentResult r1 = run_experiment(s);
    const ExperimentResult r2 = run_experiment(s);
    const bool csv_ok = io::result_csv(r1) == io::result_csv(r2);
    const bool manifest_ok = io::manifest_json(s) == io::manifest_json(s);
    const bool hash_ok = io::config_content_hash(base) == io::config_content_hash(base);
    report(12, csv_ok && manifest_ok && hash_ok,
           "experiment rows byte-identical from seed and config hash",
           csv_ok ? "rerun reproduced every byte" : "rerun differed");
}

} // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    criterion_1_and_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
    std::printf("acceptance: %d failure(s), %.1fs total\n", g_failures, seconds_since(t0));
    return g_failures == 0 ? 0 : 1;
}
