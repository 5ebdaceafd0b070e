#ifndef CQSC_OPTIMIZER_HPP
#define CQSC_OPTIMIZER_HPP

#include <vector>

#include "cqsc/info_measures.hpp"

namespace cqsc {

struct OptimizerConfig {
    int max_iters = 5000;
    double tol = 1e-10;     ///< objective-change stopping tolerance
    double kkt_tol = 1e-6;  ///< first-order residual required for success
    int grid_steps = 200;   ///< steps per simplex coordinate in grid oracles
};

struct OptimizerResult {
    Prior pi_star;
    double value;
    int iterations;
    double kkt_residual;
    bool converged;
};

/// First-order optimality report for the trace functional on the simplex:
/// Tr S^{beta-1} rho_i^{1/beta} <= Tr S^beta, equality where pi_i > 0.
struct KktReport {
    double residual;            ///< >= 0; 0 at an exact optimizer
    std::vector<double> slacks; ///< Tr S^beta - Tr S^{beta-1} rho_i^{1/beta}
    double objective;           ///< Tr S^beta
};

/// Euclidean projection onto the probability simplex.
std::vector<double> project_to_simplex(std::vector<double> v);

/// Maximizes f(pi) = Tr(Sum pi_i rho_i^{1/beta})^beta over the simplex by
/// projected gradient ascent with Armijo backtracking (f is concave; the KKT
/// residual certifies the result). Non-convergence returns the best iterate
/// with converged = false, never a silent wrong answer.
OptimizerResult maximize_trace_functional(const CqChannel& ch, double beta,
                                          const OptimizerConfig& cfg = {});

KktReport kkt_check(const CqChannel& ch, const Prior& pi, double beta);

/// min_pi E0(s, pi) = -log max_pi f(pi) with beta = s + 1; the result's
/// value field carries the E0 minimum.
OptimizerResult min_e0_over_prior(const CqChannel& ch, double s, const OptimizerConfig& cfg = {});

/// Capacity C = max_pi I(pi), same ascent machinery with the gradient
/// dI/dpi_i = Tr rho_i (log rho_i - log avg); the reported kkt_residual is
/// the matching first-order residual (equals 0 iff every support letter has
/// D(rho_i || avg) = I and no letter exceeds it).
OptimizerResult capacity(const CqChannel& ch, const OptimizerConfig& cfg = {});

/// Grid-plus-polish maximum of Tr(Sum_u P(u) rho_u^{1/beta})^beta over joint
/// distributions P on X^n, n <= 2. Independent oracle for the identity
/// (n-letter max) = (single-letter max)^n.
double multiletter_max_bruteforce(const CqChannel& ch, double beta, int n, int grid_steps = 200);

} // namespace cqsc

#endif
