#ifndef CQSC_VERIFY_HPP
#define CQSC_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "cqsc/bounds.hpp"
#include "cqsc/rng.hpp"

namespace cqsc {

struct PsdEnsembleConfig {
    int dim = 4;             ///< maximum carrier dimension sampled (2..dim)
    int count = 500;         ///< trials
    std::uint64_t seed = 1;  ///< stream seed; trial k uses derive_seed(seed, k)
    double scale = 1.0;      ///< eigenvalue spread of the Gram samples
};

/// Outcome of one randomized suite. Order-type suites (Loewner comparisons
/// and bound soundness) report the smallest margin seen — negative means a
/// violation — and pass when worst_violation >= -tolerance. Error-type
/// suites (derivative agreement) report the largest error and pass when
/// worst_violation <= tolerance. Raw values, compared only afterwards.
struct VerdictReport {
    std::string suite;
    int trials = 0;
    double worst_violation = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    std::vector<std::uint64_t> failing_seeds;
};

/// g g^H for a complex Gaussian g, scaled; PSD by construction and
/// bit-reproducible per seed.
HermitianMatrix random_psd(int dim, std::uint64_t seed, double scale = 1.0);

/// Random POVM: X_k = T^{-1/2} A_k T^{-1/2} from PSD samples A_k with
/// T = Sum A_k + eps I (eps = 1e-6); X_0 = I - Sum X_k absorbs the slack.
Povm random_povm(int dim, int m, std::uint64_t seed);

// Ensemble generators shared by the suites, the acceptance tests and the CLI.
DensityOperator random_density(int dim, Rng& rng);
/// (1 - mix) * random_density + mix * I/d; keeps the spectrum away from 0 so
/// negative support powers and finite-difference oracles stay conditioned.
DensityOperator random_density_floored(int dim, double mix, Rng& rng);
CqChannel random_channel(int a, int dim, Rng& rng);
CqChannel random_channel_floored(int a, int dim, double mix, Rng& rng);
/// Commuting (diagonal) channel: the classical case embedded on the diagonal.
CqChannel random_diagonal_channel(int a, int dim, Rng& rng);
/// Dirichlet(1) mixed half-and-half with uniform; every mass >= 1/(2a).
Prior random_interior_prior(int a, Rng& rng);
Codebook random_codebook(int a, int n, int m, Rng& rng);

struct HelstromResult {
    double error_prob; ///< (1 - trace_norm(rho1 - rho2)/2)/2, in [0, 1/2]
    Povm decoder;      ///< X_0 = 0, X_1 = positive-part projector, X_2 = rest
};

/// Exact minimum average error for two equiprobable states; the ground-truth
/// decoder oracle for the codebook bound.
HelstromResult helstrom_min_error(const DensityOperator& rho1, const DensityOperator& rho2);

/// Soundness of the per-codebook bound against random decoders:
/// average_error >= codebook_error_bound - 1e-9 over random
/// (channel, codebook, POVM, beta) with dim <= cfg.dim, n <= 2, M <= 4.
VerdictReport check_codebook_bound(const PsdEnsembleConfig& cfg);

/// (Sum pi_i A_i^{1/alpha})^alpha >= (Sum pi_i A_i^{1/beta})^beta for
/// 0 < alpha <= beta <= 1 over random PSD tuples and priors.
VerdictReport check_power_mean(const PsdEnsembleConfig& cfg, double alpha, double beta);

/// C^H A^g C <= (C^H A C)^g for ||C|| <= 1, g in (0, 1], PSD A.
VerdictReport check_transformer_inequality(const PsdEnsembleConfig& cfg, double gamma);

/// (l A + (1-l) B)^beta >= l A^beta + (1-l) B^beta.
VerdictReport check_operator_concavity(const PsdEnsembleConfig& cfg, double beta);

/// A <= B implies A^beta <= B^beta.
VerdictReport check_operator_monotone(const PsdEnsembleConfig& cfg, double beta);

/// d/dt Tr f(X(t)) = Tr f'(X(t)) X'(t) for f = x^beta along random simplex
/// paths; analytic vs central finite difference at step 1e-5, relative 1e-5.
VerdictReport check_trace_derivative(const PsdEnsembleConfig& cfg);

/// E0 graph properties over random channels: value 0 at s=0, nonpositive on
/// (-1,0], nondecreasing in s, slope at 0 equal to I(pi). Reports the worst
/// violation normalized by each property's tolerance (pass iff <= 1).
VerdictReport check_e0_properties(const PsdEnsembleConfig& cfg);

/// Registry for the CLI: suite names in canonical order.
std::vector<std::string> verify_suite_names();

/// Runs one named suite with its default ensemble, overriding seed/trials.
/// Parameterized suites split the trial budget across a fixed parameter list.
VerdictReport run_verify_suite(const std::string& name, std::uint64_t seed, int trials);

} // namespace cqsc

#endif
