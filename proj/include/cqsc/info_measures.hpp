#ifndef CQSC_INFO_MEASURES_HPP
#define CQSC_INFO_MEASURES_HPP

#include <span>
#include <vector>

#include "cqsc/channel.hpp"

namespace cqsc {

/// One sample of the Gallager-type function E0(s, pi) = -log f(pi) with
/// beta = s + 1, s in (-1, 0].
struct E0Point {
    double s;
    double value; ///< nats
    double beta;  ///< s + 1, cached
};

/// -Tr rho log rho, natural log, computed from eigenvalues directly
/// (0 log 0 := 0 without going through mat_log).
double von_neumann_entropy(const DensityOperator& rho);

/// Holevo quantity I(pi) = H(avg state) - Sum_i pi_i H(rho_i), nats.
double mutual_info(const CqChannel& ch, const Prior& pi);

/// Caches each state's spectral decomposition once so the trace functional
/// and its gradient can be evaluated repeatedly at different weights.
/// Weights need not be normalized; f extends off the simplex, which is what
/// the analytic partial derivatives refer to.
///
/// Evaluation goes through the scaled-factor eigensolver: S(w) = G^H G with
/// G rows scaled by sqrt(w_i) mu_ij^{1/(2 beta)}. Assembling S itself would
/// truncate the spectrum at roundoff (mu^{1/beta} spans hundreds of orders
/// of magnitude as beta -> 0), silently corrupting E0 and the KKT pairings
/// for mixed states.
class PoweredChannel {
public:
    PoweredChannel(const CqChannel& ch, double beta);

    double beta() const { return beta_; }
    int alphabet_size() const { return static_cast<int>(states_.size()); }
    int dim() const { return dim_; }
    /// rho_i^{1/beta} (assembled on demand).
    HermitianMatrix powered_state(int i) const;

    /// S(w) = Sum_i w_i rho_i^{1/beta}, assembled densely (exact for beta=1).
    HermitianMatrix weighted_sum(std::span<const double> w) const;

    /// f(w) = Tr S(w)^beta.
    double value(std::span<const double> w) const;

    struct ValueGrad {
        double value;
        /// Support pairings Tr(S^{beta-1} rho_i^{1/beta}). The partial
        /// derivative df/dw_i is beta times this; the KKT conditions compare
        /// the pairings to Tr S^beta directly (the beta factor cancels).
        std::vector<double> pairings;
    };
    ValueGrad value_and_grad(std::span<const double> w) const;

private:
    struct StateSpec {
        std::vector<double> eig;      ///< ascending, clamped to >= 0
        std::vector<double> half_pow; ///< eig^{1/(2 beta)}
        ComplexMatrix vec;            ///< eigenvectors in columns
    };

    std::vector<double> factor_scales(std::span<const double> w) const;
    SpectralDecomposition factored_spectrum(std::span<const double> w) const;

    double beta_;
    int dim_;
    std::vector<StateSpec> states_;
    // fixed factor rows (weights only rescale them): row r of the stacked
    // factor is scale_r * unit_rows_[r], scale_r = sqrt(w_i) eig^{1/(2 beta)}
    ComplexMatrix unit_rows_;
    std::vector<int> row_state_;
    std::vector<double> row_half_pow_;
};

/// f(pi) = Tr(Sum_i pi_i rho_i^{1/beta})^beta, beta in (0, 1].
double trace_functional(const CqChannel& ch, const Prior& pi, double beta);

/// Same functional on raw non-negative weights (no normalization); the
/// finite-difference oracle for the gradient differentiates this.
double trace_functional_weights(const CqChannel& ch, std::span<const double> w, double beta);

/// Partial derivatives of the trace functional: component i equals
/// beta * Tr(S^{beta-1} rho_i^{1/beta}) with S = Sum pi_i rho_i^{1/beta};
/// the power beta-1 <= 0 is taken on the support of S. Matches central
/// finite differences of trace_functional_weights.
std::vector<double> trace_functional_grad(const CqChannel& ch, const Prior& pi, double beta);

/// E0(s, pi) for s in (-1, 0].
E0Point e0(const CqChannel& ch, const Prior& pi, double s);

/// The analytic value of dE0/ds at s = 0, which equals I(pi). The equality
/// itself is verified numerically in the verification suites.
double e0_slope_at_zero(const CqChannel& ch, const Prior& pi);

} // namespace cqsc

#endif
