// Acceptance suite: one test case per criterion, each printing a PASS/FAIL
// line with its runtime. Tolerances are pinned here, not configurable.
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdio>

#include "cqsc/bounds.hpp"
#include "cqsc/io.hpp"
#include "cqsc/verify.hpp"
#include "oracles.hpp"

using namespace cqsc;

namespace {

const std::string kData = CQSC_DATA_DIR;

struct Stopwatch {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

void report(int id, const char* name, bool pass, double secs) {
    std::printf("ACCEPTANCE %d [%s]: %s (%.2fs)\n", id, name, pass ? "PASS" : "FAIL", secs);
    std::fflush(stdout);
}

CqChannel zero_plus_channel() {
    std::vector<DensityOperator> states;
    states.emplace_back(HermitianMatrix::diagonal({1.0, 0.0}));
    states.emplace_back(HermitianMatrix::from_entries(
        2, {Complex(0.5), Complex(0.5), Complex(0.5), Complex(0.5)}));
    return CqChannel(std::move(states));
}

} // namespace

TEST_CASE("1: classical reduction, quantitative") {
    Stopwatch sw;
    bool pass = true;

    Rng rng(101);
    for (int trial = 0; trial < 20; ++trial) {
        const int a = 2 + rng.uniform_int(3);
        const int d = 2 + rng.uniform_int(3);
        const CqChannel ch = random_diagonal_channel(a, d, rng);
        const Prior pi = random_interior_prior(a, rng);
        const auto cond = oracles::diagonal_cond(ch);
        for (int k = 1; k <= 9; ++k) {
            const double s = -0.1 * k;
            const double quantum = e0(ch, pi, s).value;
            const double classical = oracles::classical_e0(cond, pi.probs(), s);
            if (std::abs(quantum - classical) > 1e-9) pass = false;
            CHECK(std::abs(quantum - classical) <= 1e-9);
        }
    }

    const ChannelFile bsc = load_channel(kData + "/channels/bsc-embedding.json");
    const double c = capacity(bsc.channel).value;
    const double c_oracle = std::log(2.0) - oracles::binary_entropy(0.1);
    if (std::abs(c - c_oracle) > 1e-5) pass = false;
    CHECK(std::abs(c - c_oracle) <= 1e-5);

    const double secs = sw.seconds();
    CHECK(secs < 10.0);
    report(1, "classical reduction", pass && secs < 10.0, secs);
}

TEST_CASE("2: codebook bound soundness, 200 random trials") {
    Stopwatch sw;
    PsdEnsembleConfig cfg;
    cfg.dim = 3;
    cfg.count = 200;
    cfg.seed = 202;
    const VerdictReport rep = check_codebook_bound(cfg);
    CHECK(rep.trials == 200);
    CHECK(rep.worst_violation >= -1e-9);
    CHECK(rep.passed);

    const double secs = sw.seconds();
    CHECK(secs < 30.0);
    report(2, "codebook bound soundness", rep.passed && secs < 30.0, secs);
}

TEST_CASE("3: Helstrom cross-check, 100 two-word instances") {
    Stopwatch sw;
    bool pass = true;

    Rng rng(303);
    const double betas[] = {0.2, 0.5, 0.8, 1.0};
    const auto s_grid = default_s_grid();
    for (int trial = 0; trial < 100; ++trial) {
        const int d = 2 + rng.uniform_int(2);
        const int n = 1 + rng.uniform_int(2);
        const CqChannel ch = random_channel(2, d, rng);
        const Codebook cb = random_codebook(2, n, 2, rng);
        const double pe_opt = helstrom_min_error(codeword_state(ch, cb.word(0)),
                                                 codeword_state(ch, cb.word(1)))
                                  .error_prob;
        for (double beta : betas) {
            if (pe_opt < codebook_error_bound(ch, cb, beta).value - 1e-9) pass = false;
            CHECK(pe_opt >= codebook_error_bound(ch, cb, beta).value - 1e-9);
        }
        const ExponentSolver solver(ch);
        const double rate = std::log(2.0) / n;
        for (double s : s_grid) {
            if (pe_opt < solver.rate_bound(n, rate, s).value - 1e-9) pass = false;
            CHECK(pe_opt >= solver.rate_bound(n, rate, s).value - 1e-9);
        }
    }

    const double secs = sw.seconds();
    CHECK(secs < 20.0);
    report(3, "Helstrom cross-check", pass && secs < 20.0, secs);
}

TEST_CASE("4: E0 graph properties over 50 random channels") {
    Stopwatch sw;
    bool pass = true;

    Rng rng(404);
    const auto grid = default_s_grid();
    for (int trial = 0; trial < 50; ++trial) {
        const int a = 2 + rng.uniform_int(3);
        const int d = 2 + rng.uniform_int(3);
        const CqChannel ch = random_channel(a, d, rng);
        const Prior pi = random_interior_prior(a, rng);

        std::vector<double> vals;
        for (double s : grid) vals.push_back(e0(ch, pi, s).value);

        if (std::abs(vals.back()) > 1e-12) pass = false;
        CHECK(std::abs(vals.back()) <= 1e-12);
        for (double v : vals) {
            if (v > 1e-12) pass = false;
            CHECK(v <= 1e-12);
        }
        for (std::size_t j = 0; j + 1 < vals.size(); ++j) {
            if (vals[j] > vals[j + 1] + 1e-10) pass = false;
            CHECK(vals[j] <= vals[j + 1] + 1e-10);
        }
        const double h = 1e-4;
        const double slope = (e0(ch, pi, 0.0).value - e0(ch, pi, -2 * h).value) / (2 * h);
        if (std::abs(slope - mutual_info(ch, pi)) > 1e-3) pass = false;
        CHECK(std::abs(slope - mutual_info(ch, pi)) <= 1e-3);
    }

    const double secs = sw.seconds();
    CHECK(secs < 60.0);
    report(4, "E0 graph properties", pass && secs < 60.0, secs);
}

TEST_CASE("5: single-letterization, n = 2 brute force") {
    Stopwatch sw;
    bool pass = true;

    Rng rng(505);
    for (int trial = 0; trial < 10; ++trial) {
        const CqChannel ch = random_channel(2, 2, rng);
        for (double beta : {0.3, 0.5, 0.8}) {
            const OptimizerResult res = maximize_trace_functional(ch, beta);
            const double joint = multiletter_max_bruteforce(ch, beta, 2, 100);
            if (std::abs(joint - res.value * res.value) > 1e-3) pass = false;
            CHECK(std::abs(joint - res.value * res.value) <= 1e-3);

            const KktReport kkt = kkt_check(ch, res.pi_star, beta);
            if (kkt.residual > 1e-6) pass = false;
            CHECK(kkt.residual <= 1e-6);
        }
    }

    const double secs = sw.seconds();
    CHECK(secs < 120.0);
    report(5, "single-letterization", pass && secs < 120.0, secs);
}

TEST_CASE("6: operator-inequality suites, 500 trials each") {
    Stopwatch sw;

    const VerdictReport pm = run_verify_suite("power-mean", 606, 500);
    const VerdictReport tr = run_verify_suite("transformer", 607, 500);
    const VerdictReport oc = run_verify_suite("operator-concavity", 608, 500);
    const VerdictReport om = run_verify_suite("operator-monotone", 609, 500);

    for (const VerdictReport* rep : {&pm, &tr, &oc, &om}) {
        CHECK(rep->worst_violation >= -1e-9);
        CHECK(rep->passed);
    }

    const bool pass = pm.passed && tr.passed && oc.passed && om.passed;
    const double secs = sw.seconds();
    CHECK(secs < 60.0);
    report(6, "operator inequalities", pass && secs < 60.0, secs);
}

TEST_CASE("7: trace-derivative lemma, 100 random paths") {
    Stopwatch sw;
    PsdEnsembleConfig cfg;
    cfg.count = 100;
    cfg.seed = 707;
    const VerdictReport rep = check_trace_derivative(cfg);
    CHECK(rep.worst_violation <= 1e-5);
    CHECK(rep.passed);

    const double secs = sw.seconds();
    CHECK(secs < 10.0);
    report(7, "trace derivative", rep.passed && secs < 10.0, secs);
}

TEST_CASE("8: strong-converse positivity at 1.2 x capacity") {
    Stopwatch sw;
    bool pass = true;

    std::vector<CqChannel> channels;
    channels.push_back(zero_plus_channel());
    Rng rng(808);
    while (channels.size() < 5) {
        const int a = 2 + rng.uniform_int(2);
        const int d = 2 + rng.uniform_int(2);
        const CqChannel ch = random_channel(a, d, rng);
        if (capacity(ch).value > 0.02) channels.push_back(ch);
    }

    const auto grid = default_s_grid();
    for (const CqChannel& ch : channels) {
        const double c = capacity(ch).value;
        const ExponentSolver solver(ch);
        const ScExponent sc = solver.converse_exponent(1.2 * c, grid);
        if (sc.exponent <= 1e-4) pass = false;
        CHECK(sc.exponent > 1e-4);

        // block length making the bound exceed 0.99, checked in pure arithmetic
        const int n = static_cast<int>(std::ceil(10.0 * std::log(100.0) / sc.exponent));
        const BoundValue bound = solver.rate_bound(n, 1.2 * c, sc.s_star);
        if (bound.value <= 0.99) pass = false;
        CHECK(bound.value > 0.99);
    }

    const double secs = sw.seconds();
    CHECK(secs < 60.0);
    report(8, "strong-converse positivity", pass && secs < 60.0, secs);
}

TEST_CASE("9: gradient certification on 50 interior priors") {
    Stopwatch sw;
    bool pass = true;

    Rng rng(909);
    const double h = 1e-5;
    const double betas[] = {0.5, 0.7, 1.0};
    for (int trial = 0; trial < 50; ++trial) {
        const int a = 2 + rng.uniform_int(3);
        const int d = 2 + rng.uniform_int(3);
        const double beta = betas[rng.uniform_int(3)];
        const CqChannel ch = random_channel_floored(a, d, 0.5, rng);
        const Prior pi = random_interior_prior(a, rng);
        const auto grad = trace_functional_grad(ch, pi, beta);
        for (int i = 0; i < a; ++i) {
            std::vector<double> wp = pi.probs(), wm = pi.probs();
            wp[i] += h;
            wm[i] -= h;
            const double fd = (trace_functional_weights(ch, wp, beta) -
                               trace_functional_weights(ch, wm, beta)) /
                              (2.0 * h);
            const double err = std::abs(grad[i] - fd) / std::max(1.0, std::abs(grad[i]));
            if (err > 1e-5) pass = false;
            CHECK(err <= 1e-5);
        }
    }

    const double secs = sw.seconds();
    CHECK(secs < 10.0);
    report(9, "gradient certification", pass && secs < 10.0, secs);
}
