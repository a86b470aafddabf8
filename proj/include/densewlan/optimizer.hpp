#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "densewlan/config.hpp"
#include "densewlan/contention.hpp"
#include "densewlan/geometry.hpp"
#include "densewlan/numerics.hpp"
#include "densewlan/throughput.hpp"

namespace dw {

// One association instance: realized AP and STA positions plus the model
// configuration they were drawn from.
struct AssociationProblem {
    PointSet aps;
    PointSet stas;
    NetworkConfig cfg;
    ThetaModel model = ThetaModel::kQuadrature;

    enum class Objective { kFullDuplex, kHalfDuplex } objective = Objective::kFullDuplex;

    std::size_t n_aps() const { return aps.points.size(); }
    std::size_t n_stas() const { return stas.points.size(); }
};

// Samples an instance from the config (window, densities, seed).
AssociationProblem make_instance(const NetworkConfig& cfg, ThetaModel model);

// Instance with fixed counts, positions uniform in the window (a binomial
// point process); used by the small-instance oracles.
AssociationProblem make_fixed_count_instance(std::size_t n_aps, std::size_t n_stas,
                                             const NetworkConfig& cfg, ThetaModel model,
                                             std::uint64_t seed);

// Relaxed association weights, row-major (AP index i, STA index j).
struct XiMatrix {
    std::size_t n_aps = 0;
    std::size_t n_stas = 0;
    std::vector<double> values; // n_aps * n_stas

    double& at(std::size_t i, std::size_t j) { return values[i * n_stas + j]; }
    double at(std::size_t i, std::size_t j) const { return values[i * n_stas + j]; }
    double sta_sum(std::size_t j) const;
};

struct AssociationState {
    XiMatrix xi;
    double delta = 0.0;  // multiplier of the per-STA sum constraint
    double eta = 0.0;    // multiplier of the PCS threshold constraint
    double step0 = 1.0;  // base of the diminishing step phi(k) = step0/sqrt(k+1)
    int iter = 0;
    double objective = 0.0; // mean per-STA rate utility of the selected pairs
    bool converged = false;
};

// Rate utility of one pair at association weight xi: the FD (or time-shared
// HD) spatial throughput density evaluated at that pair's path loss.
double pair_utility(const AssociationProblem& p, double xi, double ell_des, double gamma_pcs);

double pair_utility_at(const AssociationProblem& p, std::size_t ap, std::size_t sta, double xi,
                       double gamma_pcs);

// Dimensionless PCS constraint coefficient Gamma ((1 + P gamma^(1/alpha)) /
// (lambda_fd pi))^alpha appearing in the Lagrangian and its bound.
double pcs_constraint_coefficient(const NetworkConfig& cfg, double gamma_pcs);

// Lagrangian of the relaxed association problem: sum of pair utilities plus
// the two multiplier terms, at the configured (fixed) PCS threshold.
double lagrangian(const XiMatrix& xi, double delta, double eta, const AssociationProblem& p);

// Per-STA argmax of the pair contribution; ties break to the lowest AP
// index. Returns a one-hot ximatrix.
XiMatrix association_argmax(const AssociationState& state, const AssociationProblem& p);

// Projected subgradient step on (delta, eta) with phi(k) = step0/sqrt(k+1).
void update_multipliers(AssociationState& state, const AssociationProblem& p);

AssociationState solve_association(const AssociationProblem& p, double tol = 1e-9,
                                   int max_iter = 500);

struct NewtonState {
    double gamma_pcs = 0.0; // current Gamma iterate, mW
    double grad = 0.0;
    double hess = 0.0;
    double direction = 0.0; // grad / |hess|
    double step = 0.0;      // last accepted backtracking step
    double forcing = 0.0;   // nu_k
    int iter = 0;
    bool converged = false;   // residual or boundary stop (not the iteration cap)
    bool at_bound = false;
    double objective = 0.0;   // objective at gamma_pcs
};

// Derivatives of the PCS objective at gamma_pcs (finite differences with one
// Richardson pass; see differentiate()).
Derivatives sdt_derivatives(double gamma_pcs, const AssociationProblem& p);

// Mean-field PCS objective Upsilon(Gamma) given a resolved association.
double pcs_objective(const AssociationProblem& p, double gamma_pcs);

// Ascent truncated-Newton search over Gamma in (0, bound], normalized Newton
// direction grad/|hess|, backtracking line search, residual stop
// |hess*dir + grad| <= nu |grad| with nu = min(0.5, sqrt(|grad|)), boundary
// stop |Gamma - bound| <= 1e-12 * bound.
NewtonState newton_optimize(const std::function<double(double)>& objective, double gamma0,
                            double bound, int max_iter = 200,
                            std::vector<std::pair<double, double>>* trace = nullptr);

// Same over the instance's mean-field objective with the Eq-of-motion bound
// from the PCS constraint at the mean association distance.
NewtonState newton_pcs(const XiMatrix& xi_star, const AssociationProblem& p, double gamma0,
                       std::vector<std::pair<double, double>>* trace = nullptr);

struct JapoResult {
    AssociationState association;
    NewtonState newton;
    double gamma_star = 0.0;
    double sdt_star = 0.0;        // realized mean pair utility at gamma_star
    double sdt_mean_field = 0.0;  // Upsilon(gamma_star) at the mean distance
    std::size_t clamped_pairs = 0;
};

// Joint association + PCS threshold selection: dual association at the fixed
// configured threshold, then Newton refinement of the threshold.
JapoResult japo(const AssociationProblem& p);
JapoResult japo(const NetworkConfig& cfg, ThetaModel model);

// Mean pair utility over the selected pairs of a one-hot association.
double realized_sdt(const AssociationProblem& p, const XiMatrix& xi, double gamma_pcs,
                    std::size_t* clamped_out = nullptr);

// Nearest-AP (strongest signal) association for the same instance.
XiMatrix ssf_association(const AssociationProblem& p);

} // namespace dw
