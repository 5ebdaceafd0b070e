#ifndef CQSC_BOUNDS_HPP
#define CQSC_BOUNDS_HPP

#include <map>
#include <mutex>
#include <vector>

#include "cqsc/optimizer.hpp"

namespace cqsc {

/// A lower bound on an error probability. Values below 0 carry no
/// information; they are reported as-is with the vacuous flag set, never
/// clamped (silent clamping would mask bugs in the inequality tests).
struct BoundValue {
    double value;
    bool vacuous;
};

struct ScExponent {
    double exponent;
    double s_star;
};

/// Converse exponent as a function of rate. exponents[i] = sup over the
/// s-grid (after refinement) of -s*rate + min_pi E0(s, pi).
struct ExponentCurve {
    std::vector<double> rates;
    std::vector<double> exponents;
    std::vector<double> s_stars;
};

/// {-0.95, -0.90, ..., -0.05, 0}: 20 points. s = -1 is excluded because
/// beta = s+1 -> 0 makes rho^{1/beta} numerically explosive for mixed states.
std::vector<double> default_s_grid();

/// Per-codebook error lower bound 1 - (1/M) Tr(Sum_k rho_{u^k}^{1/beta})^beta,
/// valid against every decoder, beta in (0, 1].
BoundValue codebook_error_bound(const CqChannel& ch, const Codebook& cb, double beta);

/// Shares one channel's min_pi E0(s, .) evaluations across rate/blocklength
/// sweeps (the inner optimum does not depend on n or R). Thread-safe memo.
class ExponentSolver {
public:
    explicit ExponentSolver(CqChannel ch, OptimizerConfig cfg = {});

    const CqChannel& channel() const { return ch_; }

    /// min over priors of E0(s, pi); throws NumericError if the inner
    /// optimization fails to certify (a silently high value would overclaim
    /// every bound built from it).
    double min_e0(double s) const;

    /// 1 - exp(-n(-s R + min_pi E0(s, pi))), the random-coding-free bound on
    /// the average error of every (C, X) of rate R and block length n.
    BoundValue rate_bound(int n, double rate, double s) const;

    /// sup over the s-grid of -s*rate + min_e0(s), with one golden-section
    /// refinement pass inside the grid cell around the argmax.
    ScExponent converse_exponent(double rate, const std::vector<double>& s_grid) const;

    ExponentCurve curve(const std::vector<double>& rates, const std::vector<double>& s_grid) const;

private:
    CqChannel ch_;
    OptimizerConfig cfg_;
    mutable std::mutex mu_;
    mutable std::map<double, double> min_e0_memo_;
};

// One-shot wrappers.
BoundValue rate_error_bound(const CqChannel& ch, int n, double rate, double s,
                            const OptimizerConfig& cfg = {});
ScExponent sc_exponent(const CqChannel& ch, double rate, const std::vector<double>& s_grid,
                       const OptimizerConfig& cfg = {});
ExponentCurve exponent_curve(const CqChannel& ch, const std::vector<double>& rates,
                             const std::vector<double>& s_grid, const OptimizerConfig& cfg = {});

} // namespace cqsc

#endif
