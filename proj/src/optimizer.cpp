#include "densewlan/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "densewlan/rng.hpp"

namespace dw {

namespace {
constexpr double kPi = std::numbers::pi;

// Active densities and rate factor at one PCS threshold; hoisted out of the
// per-pair loop so a utility matrix costs one Theta evaluation per process.
struct GammaContext {
    double gamma_pcs = 0.0;
    double lt_s = 0.0;
    double lt_a = 0.0;
    double lt_fd = 0.0;
    double rate = 0.0;
};

GammaContext make_context(const AssociationProblem& p, double gamma_pcs) {
    const NetworkConfig& cfg = p.cfg;
    GammaContext ctx;
    ctx.gamma_pcs = gamma_pcs;
    ctx.lt_s = active_density(cfg.lambda_s,
                              theta_for_density(gamma_pcs, cfg.alpha, cfg.lambda_s, p.model));
    ctx.lt_a = active_density(cfg.lambda_a,
                              theta_for_density(gamma_pcs, cfg.alpha, cfg.lambda_a, p.model));
    ctx.lt_fd = active_density(cfg.lambda_fd(),
                               theta_for_density(gamma_pcs, cfg.alpha, cfg.lambda_fd(), p.model));
    ctx.rate = std::log1p(cfg.gamma);
    return ctx;
}

struct PairEval {
    double value = 0.0;
    bool clamped = false;
};

PairEval eval_pair(const AssociationProblem& p, const GammaContext& ctx, double xi,
                   double ell_des) {
    if (xi <= 0.0) return {0.0, false};
    if (p.objective == AssociationProblem::Objective::kFullDuplex) {
        const StpValue stp = stp_fd_analytic(p.cfg, xi, ell_des, ctx.lt_s, ctx.lt_a);
        return {ctx.lt_fd * ctx.rate * stp.value, stp.clamped};
    }
    // Half-duplex: UL and DL each get half the airtime.
    const StpValue ul = stp_hd_analytic(p.cfg, Direction::kUplink, xi, ell_des, ctx.lt_s);
    const StpValue dl = stp_hd_analytic(p.cfg, Direction::kDownlink, xi, ell_des, ctx.lt_a);
    const double v =
        0.5 * ctx.rate * (ctx.lt_s * ul.value + ctx.lt_a * dl.value);
    return {v, ul.clamped || dl.clamped};
}

double pair_path_loss(const AssociationProblem& p, std::size_t ap, std::size_t sta) {
    const double d = std::max(distance(p.aps.points[ap], p.stas.points[sta]), 1e-9);
    return std::pow(d, -p.cfg.alpha);
}

} // namespace

double XiMatrix::sta_sum(std::size_t j) const {
    double s = 0.0;
    for (std::size_t i = 0; i < n_aps; ++i) s += at(i, j);
    return s;
}

AssociationProblem make_instance(const NetworkConfig& cfg, ThetaModel model) {
    AssociationProblem p;
    p.cfg = validate(cfg);
    p.model = model;
    p.aps = sample_ppp(cfg.lambda_a, cfg.window, derive_seed(cfg.seed, 0xA9));
    p.stas = sample_ppp(cfg.lambda_s, cfg.window, derive_seed(cfg.seed, 0x57));
    return p;
}

AssociationProblem make_fixed_count_instance(std::size_t n_aps, std::size_t n_stas,
                                             const NetworkConfig& cfg, ThetaModel model,
                                             std::uint64_t seed) {
    AssociationProblem p;
    p.cfg = validate(cfg);
    p.model = model;
    Rng rng(seed);
    auto fill = [&](PointSet& set, std::size_t n) {
        set.window = cfg.window;
        set.seed = seed;
        set.density = static_cast<double>(n) / cfg.window.area();
        set.points.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            set.points.push_back(
                {rng.uniform(0.0, cfg.window.width), rng.uniform(0.0, cfg.window.height)});
        }
    };
    fill(p.aps, n_aps);
    fill(p.stas, n_stas);
    return p;
}

double pcs_constraint_coefficient(const NetworkConfig& cfg, double gamma_pcs) {
    const double guard = 1.0 + cfg.p_tx * std::pow(cfg.gamma, 1.0 / cfg.alpha);
    return gamma_pcs * std::pow(guard / (cfg.lambda_fd() * kPi), cfg.alpha);
}

double pair_utility(const AssociationProblem& p, double xi, double ell_des, double gamma_pcs) {
    return eval_pair(p, make_context(p, gamma_pcs), xi, ell_des).value;
}

double pair_utility_at(const AssociationProblem& p, std::size_t ap, std::size_t sta, double xi,
                       double gamma_pcs) {
    return pair_utility(p, xi, pair_path_loss(p, ap, sta), gamma_pcs);
}

double lagrangian(const XiMatrix& xi, double delta, double eta, const AssociationProblem& p) {
    const GammaContext ctx = make_context(p, p.cfg.pcs);
    const double coeff = pcs_constraint_coefficient(p.cfg, p.cfg.pcs);
    double total = 0.0;
    double xi_sum = 0.0;
    for (std::size_t i = 0; i < xi.n_aps; ++i) {
        for (std::size_t j = 0; j < xi.n_stas; ++j) {
            const double x = xi.at(i, j);
            total += eval_pair(p, ctx, x, pair_path_loss(p, i, j)).value;
            total += (coeff - x) * eta;
            xi_sum += x;
        }
    }
    total += (xi_sum - static_cast<double>(xi.n_stas)) * delta;
    return total;
}

XiMatrix association_argmax(const AssociationState& state, const AssociationProblem& p) {
    XiMatrix out;
    out.n_aps = p.n_aps();
    out.n_stas = p.n_stas();
    out.values.assign(out.n_aps * out.n_stas, 0.0);
    if (out.n_aps == 0) return out;
    const GammaContext ctx = make_context(p, p.cfg.pcs);
    const double coeff = pcs_constraint_coefficient(p.cfg, p.cfg.pcs);
    for (std::size_t j = 0; j < out.n_stas; ++j) {
        std::size_t best = 0;
        double best_score = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < out.n_aps; ++i) {
            // Per-pair Lagrangian contribution at full mass; the multiplier
            // terms are the same for every candidate AP of this STA.
            const double score = eval_pair(p, ctx, 1.0, pair_path_loss(p, i, j)).value +
                                 (coeff - 1.0) * state.eta;
            if (score > best_score) {
                best_score = score;
                best = i;
            }
        }
        out.at(best, j) = 1.0;
    }
    return out;
}

void update_multipliers(AssociationState& state, const AssociationProblem& p) {
    const double phi = state.step0 / std::sqrt(static_cast<double>(state.iter) + 1.0);
    const double coeff = pcs_constraint_coefficient(p.cfg, p.cfg.pcs);
    double xi_sum = 0.0;
    for (double v : state.xi.values) xi_sum += v;
    const double n_stas = static_cast<double>(state.xi.n_stas);
    const double n_pairs = static_cast<double>(state.xi.values.size());
    const double g_delta = xi_sum - n_stas;
    const double g_eta = n_pairs * coeff - xi_sum;
    state.delta = std::max(0.0, state.delta - phi * g_delta);
    state.eta = std::max(0.0, state.eta - phi * g_eta);
}

AssociationState solve_association(const AssociationProblem& p, double tol, int max_iter) {
    if (p.n_aps() == 0) {
        throw std::invalid_argument("solve_association: instance has no APs");
    }
    AssociationState state;
    state.xi.n_aps = p.n_aps();
    state.xi.n_stas = p.n_stas();
    state.xi.values.assign(p.n_aps() * p.n_stas(), 0.0);
    double prev_objective = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < max_iter; ++k) {
        XiMatrix next = association_argmax(state, p);
        std::size_t clamped = 0;
        const double objective = realized_sdt(p, next, p.cfg.pcs, &clamped);
        double max_delta = 0.0;
        for (std::size_t idx = 0; idx < next.values.size(); ++idx) {
            max_delta = std::max(max_delta, std::abs(next.values[idx] - state.xi.values[idx]));
        }
        update_multipliers(state, p);
        state.xi = std::move(next);
        state.objective = objective;
        state.iter = k + 1;
        if (k > 0 && (max_delta < tol ||
                      std::abs(objective - prev_objective) < tol * std::max(1.0, std::abs(objective)))) {
            state.converged = true;
            break;
        }
        prev_objective = objective;
    }
    // The argmax already places unit mass per STA; normalize defensively so
    // the sum-to-one constraint holds exactly at exit.
    for (std::size_t j = 0; j < state.xi.n_stas; ++j) {
        const double s = state.xi.sta_sum(j);
        if (s > 0.0 && s != 1.0) {
            for (std::size_t i = 0; i < state.xi.n_aps; ++i) state.xi.at(i, j) /= s;
        }
    }
    return state;
}

double pcs_objective(const AssociationProblem& p, double gamma_pcs) {
    const GammaContext ctx = make_context(p, gamma_pcs);
    const double ell = mean_path_loss(p.cfg.lambda_fd(), p.cfg.alpha);
    return eval_pair(p, ctx, 1.0, ell).value;
}

Derivatives sdt_derivatives(double gamma_pcs, const AssociationProblem& p) {
    return differentiate([&](double g) { return pcs_objective(p, g); }, gamma_pcs);
}

NewtonState newton_optimize(const std::function<double(double)>& objective, double gamma0,
                            double bound, int max_iter,
                            std::vector<std::pair<double, double>>* trace) {
    if (!(bound > 0.0)) throw std::invalid_argument("newton_optimize: bound must be > 0");
    NewtonState st;
    st.gamma_pcs = std::min(std::max(gamma0, std::numeric_limits<double>::min()), bound);
    st.objective = objective(st.gamma_pcs);
    if (trace) trace->push_back({st.gamma_pcs, st.objective});
    const double boundary_tol = 1e-12 * bound;
    for (int k = 0; k < max_iter; ++k) {
        st.iter = k;
        if (std::abs(st.gamma_pcs - bound) <= boundary_tol) {
            st.at_bound = true;
            st.converged = true;
            return st;
        }
        const Derivatives d = differentiate(objective, st.gamma_pcs);
        st.grad = d.grad;
        st.hess = d.hess;
        st.forcing = std::min(0.5, std::sqrt(std::abs(d.grad)));

        // Rounding floors of the central-difference stencil at step h. The
        // objective is a chain of exponentials, so its own evaluation noise
        // is about |ln f| ulps, and the Richardson pass roughly triples the
        // stencil noise on top of that. A derivative below its floor has an
        // indeterminate sign and must not drive a termination decision.
        const double h = std::max(1e-6 * std::abs(st.gamma_pcs), 1e-12);
        const double fscale = std::max(std::abs(st.objective), std::numeric_limits<double>::min());
        const double eps = std::numeric_limits<double>::epsilon() *
                           std::max(1.0, std::abs(std::log(fscale)));
        const double grad_floor = 16.0 * eps * fscale / h;
        const double hess_floor = 64.0 * eps * fscale / (h * h);

        if (std::abs(d.grad) <= grad_floor) {
            st.converged = true; // stationary to working precision
            return st;
        }
        if (std::abs(d.hess) > hess_floor) {
            st.direction = d.grad / std::abs(d.hess);
            // Residual stop: with the normalized ascent direction the
            // residual is |grad| |sign(hess) + 1|, zero wherever curvature
            // is negative.
            const double residual = std::abs(d.hess * st.direction + d.grad);
            if (residual <= st.forcing * std::abs(d.grad)) {
                st.converged = true;
                return st;
            }
        } else {
            // Curvature below its noise floor: the normalized Newton step has
            // no meaningful scale, so take the bound-capped ascent step and
            // let the backtracking pick the length.
            st.direction = d.grad > 0.0 ? bound - st.gamma_pcs : -0.5 * st.gamma_pcs;
        }
        // Backtracking with Armijo acceptance on the increase.
        double step = 1.0;
        bool accepted = false;
        for (int bt = 0; bt < 64; ++bt) {
            double trial = st.gamma_pcs + step * st.direction;
            trial = std::min(std::max(trial, std::numeric_limits<double>::min()), bound);
            if (trial == st.gamma_pcs) break;
            const double f_trial = objective(trial);
            if (f_trial >= st.objective + 1e-4 * (trial - st.gamma_pcs) * d.grad) {
                st.gamma_pcs = trial;
                st.objective = f_trial;
                st.step = step;
                if (trace) trace->push_back({st.gamma_pcs, st.objective});
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            // No improving step at this scale; report the best iterate.
            return st;
        }
    }
    st.iter = max_iter;
    return st; // iteration cap, converged stays false
}

NewtonState newton_pcs(const XiMatrix& xi_star, const AssociationProblem& p, double gamma0,
                       std::vector<std::pair<double, double>>* trace) {
    double xi_min = 1.0;
    for (std::size_t j = 0; j < xi_star.n_stas; ++j) {
        xi_min = std::min(xi_min, xi_star.sta_sum(j));
    }
    if (xi_min <= 0.0) {
        throw std::invalid_argument("newton_pcs: an unassigned STA makes the constraint infeasible");
    }
    const double bound =
        pcs_upper_bound(xi_min, paper_mean_nn(p.cfg.lambda_fd()), p.cfg);
    const double start = std::min(gamma0 > 0.0 ? gamma0 : bound, bound);
    return newton_optimize([&](double g) { return pcs_objective(p, g); }, start, bound, 200,
                           trace);
}

double realized_sdt(const AssociationProblem& p, const XiMatrix& xi, double gamma_pcs,
                    std::size_t* clamped_out) {
    if (clamped_out) *clamped_out = 0;
    if (xi.n_stas == 0) return 0.0;
    const GammaContext ctx = make_context(p, gamma_pcs);
    double total = 0.0;
    for (std::size_t j = 0; j < xi.n_stas; ++j) {
        for (std::size_t i = 0; i < xi.n_aps; ++i) {
            const double x = xi.at(i, j);
            if (x <= 0.0) continue;
            const PairEval e = eval_pair(p, ctx, x, pair_path_loss(p, i, j));
            total += e.value;
            if (e.clamped && clamped_out) ++*clamped_out;
        }
    }
    return total / static_cast<double>(xi.n_stas);
}

XiMatrix ssf_association(const AssociationProblem& p) {
    XiMatrix out;
    out.n_aps = p.n_aps();
    out.n_stas = p.n_stas();
    out.values.assign(out.n_aps * out.n_stas, 0.0);
    for (std::size_t j = 0; j < out.n_stas; ++j) {
        std::size_t best = 0;
        double best_dist = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < out.n_aps; ++i) {
            const double d = distance(p.aps.points[i], p.stas.points[j]);
            if (d < best_dist) {
                best_dist = d;
                best = i;
            }
        }
        if (out.n_aps > 0) out.at(best, j) = 1.0;
    }
    return out;
}

JapoResult japo(const AssociationProblem& p) {
    JapoResult result;
    result.association = solve_association(p);
    const double bound =
        pcs_upper_bound(1.0, paper_mean_nn(p.cfg.lambda_fd()), p.cfg);
    result.newton = newton_pcs(result.association.xi, p, std::min(p.cfg.pcs, bound));
    result.gamma_star = result.newton.gamma_pcs;
    result.sdt_mean_field = result.newton.objective;
    result.sdt_star =
        realized_sdt(p, result.association.xi, result.gamma_star, &result.clamped_pairs);
    return result;
}

JapoResult japo(const NetworkConfig& cfg, ThetaModel model) {
    return japo(make_instance(cfg, model));
}

} // namespace dw
