#include "cqsc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace cqsc {

namespace {

constexpr double kOrderTol = 1e-9;

ComplexMatrix random_complex(int rows, int cols, Rng& rng) {
    ComplexMatrix g(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) g.at(r, c) = Complex(rng.gaussian(), rng.gaussian());
    return g;
}

HermitianMatrix random_psd_from(int dim, Rng& rng, double scale) {
    return HermitianMatrix::gram(random_complex(dim, dim, rng)).scaled(scale);
}

// Gram plus a 5% relative ridge. The power-mean sweep raises samples to
// 1/alpha; keeping spectra away from 0 keeps those intermediates accurate
// enough for a 1e-9 eigenvalue-order verdict.
HermitianMatrix random_psd_ridged(int dim, Rng& rng, double scale) {
    HermitianMatrix g = random_psd_from(dim, rng, scale);
    return g + HermitianMatrix::identity(dim).scaled(0.05 * g.trace() / dim);
}

// Accumulates order-type margins (smallest wins) into a report.
struct OrderSweep {
    double worst = std::numeric_limits<double>::infinity();
    std::vector<std::uint64_t> failing;
    int trials = 0;

    void record(double margin, std::uint64_t seed) {
        ++trials;
        worst = std::min(worst, margin);
        if (margin < -kOrderTol) failing.push_back(seed);
    }

    VerdictReport report(std::string suite) const {
        VerdictReport r;
        r.suite = std::move(suite);
        r.trials = trials;
        r.worst_violation = trials > 0 ? worst : 0.0;
        r.tolerance = kOrderTol;
        r.passed = failing.empty();
        r.failing_seeds = failing;
        return r;
    }
};

} // namespace

HermitianMatrix random_psd(int dim, std::uint64_t seed, double scale) {
    Rng rng(seed);
    return random_psd_from(dim, rng, scale);
}

Povm random_povm(int dim, int m, std::uint64_t seed) {
    if (m < 1) throw ValidationError("random_povm: need m >= 1 outcome elements");
    Rng rng(seed);
    constexpr double eps = 1e-6;
    std::vector<HermitianMatrix> samples;
    samples.reserve(m);
    HermitianMatrix total = HermitianMatrix::identity(dim).scaled(eps);
    for (int k = 0; k < m; ++k) {
        samples.push_back(random_psd_from(dim, rng, 1.0));
        total = total + samples.back();
    }
    const HermitianMatrix t_inv_sqrt = mat_power_support(total, -0.5);
    std::vector<HermitianMatrix> elements;
    elements.reserve(m + 1);
    HermitianMatrix sum(dim);
    elements.push_back(HermitianMatrix(dim)); // X_0 placeholder
    for (int k = 0; k < m; ++k) {
        HermitianMatrix x = sandwich(t_inv_sqrt, samples[k]);
        sum = sum + x;
        elements.push_back(std::move(x));
    }
    elements[0] = HermitianMatrix::identity(dim) - sum; // X_0 = eps T^{-1}, PSD
    return Povm(std::move(elements));
}

DensityOperator random_density(int dim, Rng& rng) {
    HermitianMatrix g = random_psd_from(dim, rng, 1.0);
    return DensityOperator(g.scaled(1.0 / g.trace()));
}

DensityOperator random_density_floored(int dim, double mix, Rng& rng) {
    HermitianMatrix g = random_psd_from(dim, rng, 1.0);
    const HermitianMatrix body = g.scaled((1.0 - mix) / g.trace());
    return DensityOperator(body + HermitianMatrix::identity(dim).scaled(mix / dim));
}

CqChannel random_channel(int a, int dim, Rng& rng) {
    std::vector<DensityOperator> states;
    states.reserve(a);
    for (int i = 0; i < a; ++i) states.push_back(random_density(dim, rng));
    return CqChannel(std::move(states));
}

CqChannel random_channel_floored(int a, int dim, double mix, Rng& rng) {
    std::vector<DensityOperator> states;
    states.reserve(a);
    for (int i = 0; i < a; ++i) states.push_back(random_density_floored(dim, mix, rng));
    return CqChannel(std::move(states));
}

CqChannel random_diagonal_channel(int a, int dim, Rng& rng) {
    std::vector<DensityOperator> states;
    states.reserve(a);
    for (int i = 0; i < a; ++i) {
        std::vector<double> p(dim);
        double sum = 0.0;
        for (double& v : p) {
            v = -std::log(std::max(rng.uniform(), 1e-300));
            sum += v;
        }
        for (double& v : p) v /= sum;
        states.emplace_back(HermitianMatrix::diagonal(p));
    }
    return CqChannel(std::move(states));
}

Prior random_interior_prior(int a, Rng& rng) {
    std::vector<double> p(a);
    double sum = 0.0;
    for (double& v : p) {
        v = -std::log(std::max(rng.uniform(), 1e-300));
        sum += v;
    }
    for (double& v : p) v = 0.5 * v / sum + 0.5 / a;
    return Prior(std::move(p));
}

Codebook random_codebook(int a, int n, int m, Rng& rng) {
    std::vector<std::vector<int>> words(m, std::vector<int>(n));
    for (auto& w : words)
        for (int& letter : w) letter = 1 + rng.uniform_int(a);
    return Codebook(n, std::move(words));
}

HelstromResult helstrom_min_error(const DensityOperator& rho1, const DensityOperator& rho2) {
    if (rho1.dim() != rho2.dim())
        throw ValidationError("helstrom_min_error: dimension mismatch");
    const HermitianMatrix delta = rho1.mat() - rho2.mat();
    const SpectralDecomposition sd = eig_hermitian(delta);
    double tnorm = 0.0;
    for (double lam : sd.eigenvalues) tnorm += std::abs(lam);
    const double pe = 0.5 * (1.0 - 0.5 * tnorm);

    const HermitianMatrix x1 = sd.apply([](double lam) { return lam > 0.0 ? 1.0 : 0.0; });
    const HermitianMatrix x2 = HermitianMatrix::identity(rho1.dim()) - x1;
    std::vector<HermitianMatrix> elements{HermitianMatrix(rho1.dim()), x1, x2};
    return HelstromResult{pe, Povm(std::move(elements))};
}

VerdictReport check_codebook_bound(const PsdEnsembleConfig& cfg) {
    static const double betas[] = {0.2, 0.5, 0.8, 1.0};
    OrderSweep sweep;
    for (int trial = 0; trial < cfg.count; ++trial) {
        const std::uint64_t ts = derive_seed(cfg.seed, trial);
        Rng rng(ts);
        const int d = 2 + rng.uniform_int(std::max(1, cfg.dim - 1));
        const int a = 1 + rng.uniform_int(3);
        const int n = 1 + rng.uniform_int(2);
        const int m = 1 + rng.uniform_int(4);
        const double beta = betas[rng.uniform_int(4)];

        const CqChannel ch = random_channel(a, d, rng);
        const Codebook cb = random_codebook(a, n, m, rng);
        int pdim = 1;
        for (int i = 0; i < n; ++i) pdim *= d;
        const Povm povm = random_povm(pdim, m, rng.next_u64());

        const double pe = average_error(ch, cb, povm);
        const BoundValue bound = codebook_error_bound(ch, cb, beta);
        sweep.record(pe - bound.value, ts);
    }
    return sweep.report("codebook-bound");
}

VerdictReport check_power_mean(const PsdEnsembleConfig& cfg, double alpha, double beta) {
    if (!(alpha > 0.0) || alpha > beta || beta > 1.0)
        throw ValidationError("check_power_mean: need 0 < alpha <= beta <= 1");
    OrderSweep sweep;
    for (int trial = 0; trial < cfg.count; ++trial) {
        const std::uint64_t ts = derive_seed(cfg.seed, trial);
        Rng rng(ts);
        const int d = 2 + rng.uniform_int(std::max(1, cfg.dim - 1));
        const int a = 1 + rng.uniform_int(4);
        const Prior pi = random_interior_prior(a, rng);

        HermitianMatrix lhs_sum(d), rhs_sum(d);
        for (int i = 0; i < a; ++i) {
            const HermitianMatrix m = random_psd_ridged(d, rng, cfg.scale);
            lhs_sum = lhs_sum + mat_power(m, 1.0 / alpha).scaled(pi[i]);
            rhs_sum = rhs_sum + mat_power(m, 1.0 / beta).scaled(pi[i]);
        }
        const HermitianMatrix lhs = mat_power(lhs_sum, alpha);
        const HermitianMatrix rhs = mat_power(rhs_sum, beta);
        sweep.record(min_eigenvalue(lhs - rhs), ts);
    }
    return sweep.report("power-mean");
}

VerdictReport check_transformer_inequality(const PsdEnsembleConfig& cfg, double gamma) {
    if (!(gamma > 0.0) || gamma > 1.0)
        throw ValidationError("check_transformer_inequality: gamma must lie in (0, 1]");
    OrderSweep sweep;
    for (int trial = 0; trial < cfg.count; ++trial) {
        const std::uint64_t ts = derive_seed(cfg.seed, trial);
        Rng rng(ts);
        const int d = 2 + rng.uniform_int(std::max(1, cfg.dim - 1));
        const HermitianMatrix a = random_psd_from(d, rng, cfg.scale);

        ComplexMatrix c = random_complex(d, d, rng);
        const double shrink = rng.uniform(0.3, 1.0) / std::max(operator_norm(c), 1e-12);
        for (int r = 0; r < d; ++r)
            for (int col = 0; col < d; ++col) c.at(r, col) *= shrink;

        const HermitianMatrix lhs = mat_power(conjugate_with(c, a), gamma);
        const HermitianMatrix rhs = conjugate_with(c, mat_power(a, gamma));
        sweep.record(min_eigenvalue(lhs - rhs), ts);
    }
    return sweep.report("transformer");
}

VerdictReport check_operator_concavity(const PsdEnsembleConfig& cfg, double beta) {
    if (!(beta > 0.0) || beta > 1.0)
        throw ValidationError("check_operator_concavity: beta must lie in (0, 1]");
    OrderSweep sweep;
    for (int trial = 0; trial < cfg.count; ++trial) {
        const std::uint64_t ts = derive_seed(cfg.seed, trial);
        Rng rng(ts);
        const int d = 2 + rng.uniform_int(std::max(1, cfg.dim - 1));
        const HermitianMatrix a = random_psd_from(d, rng, cfg.scale);
        const HermitianMatrix b = random_psd_from(d, rng, cfg.scale);
        const double lam = rng.uniform(0.01, 0.99);

        const HermitianMatrix mixed = mat_power(a.scaled(lam) + b.scaled(1.0 - lam), beta);
        const HermitianMatrix split = mat_power(a, beta).scaled(lam) + mat_power(b, beta).scaled(1.0 - lam);
        sweep.record(min_eigenvalue(mixed - split), ts);
    }
    return sweep.report("operator-concavity");
}

VerdictReport check_operator_monotone(const PsdEnsembleConfig& cfg, double beta) {
    if (!(beta > 0.0) || beta > 1.0)
        throw ValidationError("check_operator_monotone: beta must lie in (0, 1]");
    OrderSweep sweep;
    for (int trial = 0; trial < cfg.count; ++trial) {
        const std::uint64_t ts = derive_seed(cfg.seed, trial);
        Rng rng(ts);
        const int d = 2 + rng.uniform_int(std::max(1, cfg.dim - 1));
        const HermitianMatrix a = random_psd_from(d, rng, cfg.scale);
        const HermitianMatrix b = a + random_psd_from(d, rng, cfg.scale);
        sweep.record(min_eigenvalue(mat_power(b, beta) - mat_power(a, beta)), ts);
    }
    return sweep.report("operator-monotone");
}

VerdictReport check_trace_derivative(const PsdEnsembleConfig& cfg) {
    static const double betas[] = {0.5, 0.7, 1.0};
    constexpr double h = 1e-5;
    constexpr double tol = 1e-5;

    VerdictReport rep;
    rep.suite = "trace-derivative";
    rep.tolerance = tol;
    double worst = 0.0;
    for (int trial = 0; trial < cfg.count; ++trial) {
        const std::uint64_t ts = derive_seed(cfg.seed, trial);
        Rng rng(ts);
        const int d = 2 + rng.uniform_int(3);
        const int a = 2 + rng.uniform_int(3);
        const double beta = betas[rng.uniform_int(3)];
        const CqChannel ch = random_channel_floored(a, d, 0.5, rng);
        const Prior pi = random_interior_prior(a, rng);

        // zero-sum direction, sup-normalized so pi +- h v stays interior
        std::vector<double> v(a);
        double mean = 0.0;
        for (double& x : v) {
            x = rng.gaussian();
            mean += x;
        }
        mean /= a;
        double vmax = 0.0;
        for (double& x : v) {
            x -= mean;
            vmax = std::max(vmax, std::abs(x));
        }
        if (vmax < 1e-12) continue; // degenerate direction, skip
        for (double& x : v) x /= vmax;

        const PoweredChannel pc(ch, beta);
        const auto vg = pc.value_and_grad(pi.probs());
        double analytic = 0.0;
        for (int i = 0; i < a; ++i) analytic += v[i] * vg.pairings[i];
        analytic *= beta;

        std::vector<double> wp(a), wm(a);
        for (int i = 0; i < a; ++i) {
            wp[i] = pi[i] + h * v[i];
            wm[i] = pi[i] - h * v[i];
        }
        const double fd = (pc.value(wp) - pc.value(wm)) / (2.0 * h);
        const double rel = std::abs(analytic - fd) / std::max(1.0, std::abs(analytic));
        ++rep.trials;
        if (rel > worst) worst = rel;
        if (rel > tol) rep.failing_seeds.push_back(ts);
    }
    rep.worst_violation = worst;
    rep.passed = rep.failing_seeds.empty();
    return rep;
}

VerdictReport check_e0_properties(const PsdEnsembleConfig& cfg) {
    const std::vector<double> grid = default_s_grid();
    constexpr double tol_zero = 1e-12;  // E0(0, pi) = 0
    constexpr double tol_sign = 1e-12;  // E0 <= 0 on (-1, 0]
    constexpr double tol_mono = 1e-10;  // nondecreasing in s
    constexpr double tol_slope = 1e-3;  // slope at 0 equals I(pi)
    constexpr double h = 1e-4;

    VerdictReport rep;
    rep.suite = "e0-properties";
    rep.tolerance = 1.0; // violations are normalized by each property's tolerance
    double worst = -std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < cfg.count; ++trial) {
        const std::uint64_t ts = derive_seed(cfg.seed, trial);
        Rng rng(ts);
        const int d = 2 + rng.uniform_int(3);
        const int a = 2 + rng.uniform_int(3);
        const CqChannel ch = random_channel(a, d, rng);
        const Prior pi = random_interior_prior(a, rng);

        double trial_worst = -std::numeric_limits<double>::infinity();
        std::vector<double> values;
        values.reserve(grid.size());
        for (double s : grid) values.push_back(e0(ch, pi, s).value);

        trial_worst = std::max(trial_worst, std::abs(values.back()) / tol_zero); // s = 0 last
        for (double v : values) trial_worst = std::max(trial_worst, v / tol_sign);
        for (std::size_t j = 0; j + 1 < values.size(); ++j)
            trial_worst = std::max(trial_worst, (values[j] - values[j + 1]) / tol_mono);

        const double slope_fd = (e0(ch, pi, 0.0).value - e0(ch, pi, -2.0 * h).value) / (2.0 * h);
        trial_worst =
            std::max(trial_worst, std::abs(slope_fd - mutual_info(ch, pi)) / tol_slope);

        ++rep.trials;
        worst = std::max(worst, trial_worst);
        if (trial_worst > 1.0) rep.failing_seeds.push_back(ts);
    }
    rep.worst_violation = rep.trials > 0 ? worst : 0.0;
    rep.passed = rep.failing_seeds.empty();
    return rep;
}

std::vector<std::string> verify_suite_names() {
    return {"codebook-bound", "power-mean",       "transformer", "operator-concavity",
            "operator-monotone", "trace-derivative", "e0-properties"};
}

namespace {

VerdictReport merge(std::string suite, const std::vector<VerdictReport>& parts, bool order_type) {
    VerdictReport out;
    out.suite = std::move(suite);
    out.worst_violation =
        order_type ? std::numeric_limits<double>::infinity() : 0.0;
    out.passed = true;
    for (const VerdictReport& p : parts) {
        out.trials += p.trials;
        out.tolerance = p.tolerance;
        out.worst_violation = order_type ? std::min(out.worst_violation, p.worst_violation)
                                         : std::max(out.worst_violation, p.worst_violation);
        out.passed = out.passed && p.passed;
        out.failing_seeds.insert(out.failing_seeds.end(), p.failing_seeds.begin(),
                                 p.failing_seeds.end());
    }
    std::sort(out.failing_seeds.begin(), out.failing_seeds.end());
    return out;
}

} // namespace

namespace {

int default_trials(const std::string& name) {
    if (name == "codebook-bound") return 200;
    if (name == "trace-derivative") return 100;
    if (name == "e0-properties") return 50;
    return 500;
}

} // namespace

VerdictReport run_verify_suite(const std::string& name, std::uint64_t seed, int trials) {
    PsdEnsembleConfig cfg;
    cfg.seed = seed;
    cfg.count = trials > 0 ? trials : default_trials(name);

    if (name == "codebook-bound") {
        cfg.dim = 3;
        return check_codebook_bound(cfg);
    }
    if (name == "trace-derivative") return check_trace_derivative(cfg);
    if (name == "e0-properties") return check_e0_properties(cfg);

    cfg.dim = 6;
    if (name == "power-mean") {
        static const std::pair<double, double> pairs[] = {
            {0.3, 0.7}, {0.4, 0.8}, {0.5, 0.5}, {0.7, 0.9}, {0.9, 1.0}};
        std::vector<VerdictReport> parts;
        const int per = std::max(1, cfg.count / 5);
        for (int i = 0; i < 5; ++i) {
            PsdEnsembleConfig sub = cfg;
            sub.seed = derive_seed(seed, 1000 + i);
            sub.count = per;
            parts.push_back(check_power_mean(sub, pairs[i].first, pairs[i].second));
        }
        return merge("power-mean", parts, true);
    }
    if (name == "transformer") {
        static const double gammas[] = {0.2, 0.5, 0.8, 1.0};
        std::vector<VerdictReport> parts;
        const int per = std::max(1, cfg.count / 4);
        for (int i = 0; i < 4; ++i) {
            PsdEnsembleConfig sub = cfg;
            sub.seed = derive_seed(seed, 2000 + i);
            sub.count = per;
            parts.push_back(check_transformer_inequality(sub, gammas[i]));
        }
        return merge("transformer", parts, true);
    }
    if (name == "operator-concavity" || name == "operator-monotone") {
        static const double betas[] = {0.1, 0.3, 0.5, 0.7, 0.9, 1.0};
        std::vector<VerdictReport> parts;
        const int per = std::max(1, cfg.count / 6);
        for (int i = 0; i < 6; ++i) {
            PsdEnsembleConfig sub = cfg;
            sub.seed = derive_seed(seed, 3000 + i);
            sub.count = per;
            parts.push_back(name == "operator-concavity"
                                ? check_operator_concavity(sub, betas[i])
                                : check_operator_monotone(sub, betas[i]));
        }
        return merge(name, parts, true);
    }
    throw ValidationError("run_verify_suite: unknown suite '" + name + "'");
}

} // namespace cqsc
