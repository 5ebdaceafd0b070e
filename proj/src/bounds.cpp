#include "cqsc/bounds.hpp"

#include <cmath>
#include <sstream>

namespace cqsc {

std::vector<double> default_s_grid() {
    std::vector<double> grid;
    grid.reserve(20);
    for (int k = 19; k >= 0; --k) grid.push_back(-k / 20.0);
    return grid;
}

BoundValue codebook_error_bound(const CqChannel& ch, const Codebook& cb, double beta) {
    if (!(beta > 0.0) || beta > 1.0) {
        std::ostringstream msg;
        msg << "codebook_error_bound: beta must lie in (0, 1], got " << beta;
        throw ValidationError(msg.str());
    }
    const int m = cb.size();

    // Spectra of the codeword states, assembled exactly from per-letter
    // eigendecompositions (eigenvalues multiply, eigenvectors tensor). The
    // powered sum Sum_k rho_{u^k}^{1/beta} is then diagonalized through its
    // scaled factor, which keeps the deep spectral tails that the assembled
    // matrix would lose to roundoff; losing tail mass would inflate the
    // bound above its true value.
    std::vector<SpectralDecomposition> letter_sd(ch.alphabet_size());
    std::vector<bool> have(ch.alphabet_size(), false);

    long long pdim = 1;
    for (int t = 0; t < cb.block_length(); ++t) {
        pdim *= ch.dim();
        if (pdim > kMaxTensorDim)
            throw ValidationError("codebook_error_bound: composite dimension exceeds cap");
    }
    const int d = static_cast<int>(pdim);

    std::vector<double> scales;
    scales.reserve(static_cast<std::size_t>(m) * d);
    ComplexMatrix unit_rows(m * d, d);
    int r = 0;
    for (int k = 0; k < m; ++k) {
        std::vector<double> word_eig{1.0};
        std::vector<std::vector<Complex>> word_vec{{Complex(1.0)}}; // columns
        for (int letter : cb.word(k)) {
            const int i = letter - 1;
            if (i < 0 || i >= ch.alphabet_size())
                throw ValidationError("codebook_error_bound: letter outside alphabet");
            if (!have[i]) {
                letter_sd[i] = eig_hermitian(ch.state(i).mat());
                have[i] = true;
            }
            const SpectralDecomposition& sd = letter_sd[i];
            const int dl = ch.dim();
            std::vector<double> next_eig;
            std::vector<std::vector<Complex>> next_vec;
            next_eig.reserve(word_eig.size() * dl);
            next_vec.reserve(word_eig.size() * dl);
            for (std::size_t a = 0; a < word_eig.size(); ++a) {
                for (int j = 0; j < dl; ++j) {
                    next_eig.push_back(word_eig[a] * std::max(0.0, sd.eigenvalues[j]));
                    std::vector<Complex> col(word_vec[a].size() * dl);
                    for (std::size_t x = 0; x < word_vec[a].size(); ++x)
                        for (int y = 0; y < dl; ++y)
                            col[x * dl + y] = word_vec[a][x] * sd.eigenvectors.at(y, j);
                    next_vec.push_back(std::move(col));
                }
            }
            word_eig = std::move(next_eig);
            word_vec = std::move(next_vec);
        }
        for (int j = 0; j < d; ++j) {
            const double hp = word_eig[j] > 0.0 ? std::pow(word_eig[j], 0.5 / beta) : 0.0;
            if (!(hp > 0.0)) continue;
            scales.push_back(hp);
            for (int c = 0; c < d; ++c) unit_rows.at(r, c) = std::conj(word_vec[j][c]);
            ++r;
        }
    }

    double tr = 0.0;
    if (r > 0) {
        ComplexMatrix rows(r, d);
        for (int rr = 0; rr < r; ++rr)
            for (int c = 0; c < d; ++c) rows.at(rr, c) = unit_rows.at(rr, c);
        for (double lam : eig_hermitian_from_scaled_factor(scales, rows).eigenvalues)
            if (lam > 0.0) tr += std::exp(beta * std::log(lam));
    }
    const double value = 1.0 - tr / m;
    return BoundValue{value, value < 0.0};
}

ExponentSolver::ExponentSolver(CqChannel ch, OptimizerConfig cfg)
    : ch_(std::move(ch)), cfg_(cfg) {}

double ExponentSolver::min_e0(double s) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = min_e0_memo_.find(s);
        if (it != min_e0_memo_.end()) return it->second;
    }
    const OptimizerResult res = min_e0_over_prior(ch_, s, cfg_);
    if (!res.converged) {
        // Concavity bounds the value gap by the first-order residual, so E0
        // is still good to residual / f even without a full KKT certificate.
        // That happens as s -> 0-, where f flattens to 1 + O(|s|) and double
        // precision cannot resolve the last ascent steps.
        const double f_hat = std::exp(-res.value);
        const double e0_error = std::max(0.0, res.kkt_residual) / f_hat;
        if (!(e0_error <= 1e-5)) {
            std::ostringstream msg;
            msg << "min_e0: inner prior optimization did not certify at s = " << s
                << " (kkt residual " << res.kkt_residual << ")";
            throw NumericError(msg.str());
        }
    }
    std::lock_guard<std::mutex> lock(mu_);
    min_e0_memo_[s] = res.value;
    return res.value;
}

BoundValue ExponentSolver::rate_bound(int n, double rate, double s) const {
    if (n < 1) throw ValidationError("rate_bound: block length must be >= 1");
    if (rate < 0.0) throw ValidationError("rate_bound: rate must be >= 0");
    if (!(s > -1.0) || s > 0.0) {
        std::ostringstream msg;
        msg << "rate_bound: s must lie in (-1, 0], got " << s;
        throw ValidationError(msg.str());
    }
    const double exponent = -s * rate + min_e0(s);
    const double value = 1.0 - std::exp(-static_cast<double>(n) * exponent);
    return BoundValue{value, value < 0.0};
}

ScExponent ExponentSolver::converse_exponent(double rate, const std::vector<double>& s_grid) const {
    if (s_grid.empty()) throw ValidationError("converse_exponent: empty s grid");
    if (rate < 0.0) throw ValidationError("converse_exponent: rate must be >= 0");

    auto g = [&](double s) { return -s * rate + min_e0(s); };

    double best_s = s_grid.front();
    double best_g = g(best_s);
    std::size_t best_idx = 0;
    for (std::size_t i = 1; i < s_grid.size(); ++i) {
        const double v = g(s_grid[i]);
        if (v > best_g) {
            best_g = v;
            best_s = s_grid[i];
            best_idx = i;
        }
    }

    // Golden-section refinement inside the grid cell around the argmax
    // (clipped to the grid hull so the exclusive endpoint s = -1 is safe).
    double lo = best_idx > 0 ? s_grid[best_idx - 1] : s_grid.front();
    double hi = best_idx + 1 < s_grid.size() ? s_grid[best_idx + 1] : s_grid.back();
    if (hi > lo) {
        constexpr double phi = 0.61803398874989484820;
        double x1 = hi - phi * (hi - lo);
        double x2 = lo + phi * (hi - lo);
        double f1 = g(x1);
        double f2 = g(x2);
        for (int it = 0; it < 30; ++it) {
            if (f1 < f2) {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + phi * (hi - lo);
                f2 = g(x2);
            } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - phi * (hi - lo);
                f1 = g(x1);
            }
            const double fb = std::max(f1, f2);
            const double sb = f1 >= f2 ? x1 : x2;
            if (fb > best_g) {
                best_g = fb;
                best_s = sb;
            }
        }
    }
    return ScExponent{best_g, best_s};
}

ExponentCurve ExponentSolver::curve(const std::vector<double>& rates,
                                    const std::vector<double>& s_grid) const {
    ExponentCurve out;
    out.rates = rates;
    out.exponents.reserve(rates.size());
    out.s_stars.reserve(rates.size());
    for (double r : rates) {
        const ScExponent e = converse_exponent(r, s_grid);
        out.exponents.push_back(e.exponent);
        out.s_stars.push_back(e.s_star);
    }
    return out;
}

BoundValue rate_error_bound(const CqChannel& ch, int n, double rate, double s,
                            const OptimizerConfig& cfg) {
    return ExponentSolver(ch, cfg).rate_bound(n, rate, s);
}

ScExponent sc_exponent(const CqChannel& ch, double rate, const std::vector<double>& s_grid,
                       const OptimizerConfig& cfg) {
    return ExponentSolver(ch, cfg).converse_exponent(rate, s_grid);
}

ExponentCurve exponent_curve(const CqChannel& ch, const std::vector<double>& rates,
                             const std::vector<double>& s_grid, const OptimizerConfig& cfg) {
    return ExponentSolver(ch, cfg).curve(rates, s_grid);
}

} // namespace cqsc
