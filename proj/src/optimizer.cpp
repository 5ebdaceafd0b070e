#include "cqsc/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

namespace cqsc {

namespace {

constexpr double kSupportEps = 1e-9;
constexpr double kArmijoSlope = 1e-4;
constexpr double kArmijoShrink = 0.5;

struct Eval {
    double value;
    std::vector<double> grad;
};

// max( max_i (g_i - mu), max_{i in support} |g_i - mu| ) with mu = objective;
// both objectives here satisfy sum_i pi_i g_i = value at any prior.
double first_order_residual(std::span<const double> w, const Eval& e) {
    double resid = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double gap = e.grad[i] - e.value;
        resid = std::max(resid, gap);
        if (w[i] > kSupportEps) resid = std::max(resid, std::abs(gap));
    }
    return resid;
}

// Shared projected-gradient ascent. `full` returns value+gradient, `cheap`
// value only (used inside the line search).
OptimizerResult ascend_simplex(int a, const std::function<Eval(std::span<const double>)>& full,
                               const std::function<double(std::span<const double>)>& cheap,
                               const OptimizerConfig& cfg) {
    std::vector<double> w(a, 1.0 / a);
    Eval cur = full(w);
    double resid = first_order_residual(w, cur);
    double last_change = std::numeric_limits<double>::infinity();
    double step = 1.0;
    int iters = 0;

    while (iters < cfg.max_iters) {
        if (resid <= cfg.kkt_tol && last_change <= cfg.tol) break;

        // Backtracking along the projection arc.
        std::vector<double> cand;
        double cand_value = 0.0;
        bool accepted = false;
        double t = step;
        while (t >= 1e-18) {
            std::vector<double> trial(a);
            for (int i = 0; i < a; ++i) trial[i] = w[i] + t * cur.grad[i];
            trial = project_to_simplex(std::move(trial));
            double along = 0.0;
            for (int i = 0; i < a; ++i) along += cur.grad[i] * (trial[i] - w[i]);
            if (along <= 0.0) break; // projection fixed point: stationary
            const double fv = cheap(trial);
            if (fv >= cur.value + kArmijoSlope * along) {
                cand = std::move(trial);
                cand_value = fv;
                accepted = true;
                break;
            }
            t *= kArmijoShrink;
        }
        if (!accepted) break;

        ++iters;
        last_change = cand_value - cur.value;
        w = std::move(cand);
        cur = full(w);
        resid = first_order_residual(w, cur);
        step = std::min(1.0, 2.0 * t);
    }

    OptimizerResult out{Prior(w), cur.value, iters, resid, resid <= cfg.kkt_tol};
    return out;
}

} // namespace

std::vector<double> project_to_simplex(std::vector<double> v) {
    const int n = static_cast<int>(v.size());
    std::vector<double> u = v;
    std::sort(u.begin(), u.end(), std::greater<>());
    double css = 0.0;
    double theta = 0.0;
    int support = 0;
    for (int j = 0; j < n; ++j) {
        css += u[j];
        const double cand = (css - 1.0) / (j + 1);
        if (u[j] - cand > 0.0) {
            theta = cand;
            support = j + 1;
        }
    }
    if (support == 0) theta = (css - 1.0) / n;
    for (double& x : v) x = std::max(0.0, x - theta);
    return v;
}

OptimizerResult maximize_trace_functional(const CqChannel& ch, double beta,
                                          const OptimizerConfig& cfg) {
    const PoweredChannel pc(ch, beta);
    auto full = [&pc](std::span<const double> w) {
        auto vg = pc.value_and_grad(w);
        return Eval{vg.value, std::move(vg.pairings)};
    };
    auto cheap = [&pc](std::span<const double> w) { return pc.value(w); };
    OptimizerResult res = ascend_simplex(ch.alphabet_size(), full, cheap, cfg);
    res.value = trace_functional(ch, res.pi_star, beta);
    return res;
}

KktReport kkt_check(const CqChannel& ch, const Prior& pi, double beta) {
    if (pi.size() != ch.alphabet_size())
        throw ValidationError("kkt_check: prior length does not match alphabet");
    const PoweredChannel pc(ch, beta);
    const auto vg = pc.value_and_grad(pi.probs());
    KktReport rep;
    rep.objective = vg.value;
    rep.slacks.resize(pi.size());
    double resid = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < pi.size(); ++i) {
        const double gap = vg.pairings[i] - vg.value;
        rep.slacks[i] = -gap;
        resid = std::max(resid, gap);
        if (pi[i] > kSupportEps) resid = std::max(resid, std::abs(gap));
    }
    rep.residual = resid;
    return rep;
}

OptimizerResult min_e0_over_prior(const CqChannel& ch, double s, const OptimizerConfig& cfg) {
    if (!(s > -1.0) || s > 0.0) {
        std::ostringstream msg;
        msg << "min_e0_over_prior: s must lie in (-1, 0], got " << s;
        throw ValidationError(msg.str());
    }
    OptimizerResult res = maximize_trace_functional(ch, s + 1.0, cfg);
    res.value = -std::log(res.value);
    if (res.value == 0.0) res.value = 0.0; // normalize -0
    return res;
}

OptimizerResult capacity(const CqChannel& ch, const OptimizerConfig& cfg) {
    const int a = ch.alphabet_size();
    std::vector<double> h_state(a); // H(rho_i)
    for (int i = 0; i < a; ++i) h_state[i] = von_neumann_entropy(ch.state(i));

    auto avg = [&](std::span<const double> w) {
        HermitianMatrix m(ch.dim());
        for (int i = 0; i < a; ++i)
            if (w[i] != 0.0) m = m + ch.state(i).mat().scaled(w[i]);
        return m;
    };
    auto entropy_of = [](const std::vector<double>& eig) {
        double h = 0.0;
        for (double lam : eig)
            if (lam > 0.0) h -= lam * std::log(lam);
        return h;
    };

    auto full = [&](std::span<const double> w) {
        const HermitianMatrix rho_bar = avg(w);
        const SpectralDecomposition sd = eig_hermitian(rho_bar);
        const double h_bar = entropy_of(sd.eigenvalues);
        double h_cond = 0.0;
        for (int i = 0; i < a; ++i) h_cond += w[i] * h_state[i];

        // log of the average state on its support
        const double lam_max = sd.eigenvalues.back();
        const double floor = 1e-12 * std::max(1.0, lam_max);
        const HermitianMatrix log_bar =
            sd.apply([floor](double lam) { return lam > floor ? std::log(lam) : 0.0; });

        Eval e;
        e.value = h_bar - h_cond;
        e.grad.resize(a);
        for (int i = 0; i < a; ++i)
            e.grad[i] = -h_state[i] - trace_product(ch.state(i).mat(), log_bar);
        return e;
    };
    auto cheap = [&](std::span<const double> w) {
        const double h_bar = entropy_of(eigenvalues_of(avg(w)));
        double h_cond = 0.0;
        for (int i = 0; i < a; ++i) h_cond += w[i] * h_state[i];
        return h_bar - h_cond;
    };

    OptimizerResult res = ascend_simplex(a, full, cheap, cfg);
    res.value = mutual_info(ch, res.pi_star);
    return res;
}

namespace {

// Tensor extension of the channel over words of length n (lexicographic order,
// first letter most significant).
std::vector<DensityOperator> product_states(const CqChannel& ch, int n) {
    std::vector<DensityOperator> out;
    const int a = ch.alphabet_size();
    if (n == 1) {
        for (int i = 0; i < a; ++i) out.push_back(ch.state(i));
        return out;
    }
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < a; ++j)
            out.emplace_back(tensor(ch.state(i).mat(), ch.state(j).mat()));
    return out;
}

// Visits all compositions (k_1,...,k_m) of `steps` and reports the best
// objective over the induced simplex grid.
void best_on_grid(const PoweredChannel& pc, std::vector<double>& w, int idx, int remaining,
                  int steps, double& best_f, std::vector<double>& best_w) {
    const int m = static_cast<int>(w.size());
    if (idx == m - 1) {
        w[idx] = static_cast<double>(remaining) / steps;
        const double f = pc.value(w);
        if (f > best_f) {
            best_f = f;
            best_w = w;
        }
        return;
    }
    for (int k = 0; k <= remaining; ++k) {
        w[idx] = static_cast<double>(k) / steps;
        best_on_grid(pc, w, idx + 1, remaining - k, steps, best_f, best_w);
    }
}

double n_choose_k(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r *= static_cast<double>(n - k + i) / i;
    return r;
}

} // namespace

double multiletter_max_bruteforce(const CqChannel& ch, double beta, int n, int grid_steps) {
    if (n != 1 && n != 2)
        throw ValidationError("multiletter_max_bruteforce: only n in {1, 2} is supported");
    const int a = ch.alphabet_size();
    if (n == 2 && a > 3)
        throw ValidationError("multiletter_max_bruteforce: alphabet too large for the n=2 grid");
    if (grid_steps < 1) throw ValidationError("multiletter_max_bruteforce: grid_steps must be >= 1");

    const int m = n == 1 ? a : a * a;
    if (n_choose_k(grid_steps + m - 1, m - 1) > 2e7)
        throw ValidationError("multiletter_max_bruteforce: grid too large; lower grid_steps");

    const CqChannel ext = n == 1 ? ch : CqChannel(product_states(ch, 2));
    const PoweredChannel pc(ext, beta);

    std::vector<double> w(m, 0.0), best_w(m, 0.0);
    double best_f = -std::numeric_limits<double>::infinity();
    best_on_grid(pc, w, 0, grid_steps, grid_steps, best_f, best_w);

    // Coordinate polish: shift probability mass between letter pairs in units
    // of 1/2000 while it improves. f is concave, so this only sharpens the
    // grid optimum.
    const double delta = 1.0 / 2000.0;
    bool improved = true;
    int passes = 0;
    while (improved && passes < 20) {
        improved = false;
        ++passes;
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) {
                if (i == j) continue;
                while (best_w[i] >= delta) {
                    std::vector<double> trial = best_w;
                    trial[i] -= delta;
                    trial[j] += delta;
                    const double f = pc.value(trial);
                    if (f > best_f) {
                        best_f = f;
                        best_w = std::move(trial);
                        improved = true;
                    } else {
                        break;
                    }
                }
            }
        }
    }
    return best_f;
}

} // namespace cqsc
