#include <doctest.h>

#include <cmath>

#include "cqsc/bounds.hpp"
#include "cqsc/rng.hpp"
#include "cqsc/verify.hpp"
#include "oracles.hpp"

using namespace cqsc;

namespace {

CqChannel diagonal_channel(const std::vector<std::vector<double>>& rows) {
    std::vector<DensityOperator> states;
    for (const auto& r : rows) states.emplace_back(HermitianMatrix::diagonal(r));
    return CqChannel(std::move(states));
}

CqChannel zero_plus_channel() {
    std::vector<DensityOperator> states;
    states.emplace_back(HermitianMatrix::diagonal({1.0, 0.0}));
    states.emplace_back(HermitianMatrix::from_entries(
        2, {Complex(0.5), Complex(0.5), Complex(0.5), Complex(0.5)}));
    return CqChannel(std::move(states));
}

CqChannel single_state_channel() {
    std::vector<DensityOperator> states;
    states.emplace_back(HermitianMatrix::diagonal({0.7, 0.3}));
    return CqChannel(std::move(states));
}

} // namespace

TEST_CASE("codebook_error_bound: beta = 1, orthogonal words, identical pure pair") {
    Rng rng(51);
    const CqChannel ch = random_channel(2, 2, rng);
    const Codebook cb = random_codebook(2, 2, 3, rng);
    const BoundValue b1 = codebook_error_bound(ch, cb, 1.0);
    CHECK(b1.value == doctest::Approx(0.0).epsilon(1e-12)); // 1 - M/M

    // orthogonal pure codewords: the powered sum is a rank-M projector
    const CqChannel ortho = diagonal_channel({{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}});
    const Codebook two(1, {{1}, {2}});
    for (double beta : {0.2, 0.5, 0.9})
        CHECK(codebook_error_bound(ortho, two, beta).value ==
              doctest::Approx(0.0).epsilon(1e-12));

    // two identical pure codewords at beta = 1/2: frozen 1 - sqrt(2)/2
    const Codebook twin(1, {{1}, {1}});
    const BoundValue tb = codebook_error_bound(zero_plus_channel(), twin, 0.5);
    CHECK(tb.value == doctest::Approx(0.29289321881345248).epsilon(1e-12));
    CHECK_FALSE(tb.vacuous);

    CHECK_THROWS_AS(codebook_error_bound(ch, cb, 1.5), ValidationError);
}

TEST_CASE("codebook bound soundness against random decoders and Helstrom") {
    Rng rng(53);
    const double betas[] = {0.2, 0.5, 0.8, 1.0};
    for (int trial = 0; trial < 40; ++trial) {
        const int d = 2 + rng.uniform_int(2);
        const int n = 1 + rng.uniform_int(2);
        const int m = 1 + rng.uniform_int(4);
        const CqChannel ch = random_channel(2, d, rng);
        const Codebook cb = random_codebook(2, n, m, rng);
        int pdim = 1;
        for (int i = 0; i < n; ++i) pdim *= d;
        const Povm povm = random_povm(pdim, m, rng.next_u64());
        const double pe = average_error(ch, cb, povm);
        for (double beta : betas)
            CHECK(pe >= codebook_error_bound(ch, cb, beta).value - 1e-9);
    }
    // optimal two-word decoders
    for (int trial = 0; trial < 20; ++trial) {
        const CqChannel ch = random_channel(2, 2, rng);
        const Codebook cb = random_codebook(2, 1, 2, rng);
        const double pe_opt = helstrom_min_error(codeword_state(ch, cb.word(0)),
                                                 codeword_state(ch, cb.word(1)))
                                  .error_prob;
        for (double beta : betas)
            CHECK(pe_opt >= codebook_error_bound(ch, cb, beta).value - 1e-9);
    }
}

TEST_CASE("rate_bound: boundary s, single-state arithmetic, growth in n") {
    const CqChannel single = single_state_channel();
    const ExponentSolver solver(single);

    CHECK(solver.rate_bound(4, 0.7, 0.0).value == doctest::Approx(0.0)); // s = 0 is vacuous

    // single-state channel: bound = 1 - M^s at rate log(M)/n
    for (int m : {2, 4}) {
        for (double s : {-0.8, -0.3}) {
            const int n = 2;
            const double rate = std::log(static_cast<double>(m)) / n;
            CHECK(solver.rate_bound(n, rate, s).value ==
                  doctest::Approx(1.0 - std::pow(m, s)).epsilon(1e-10));
        }
        // cross-check: M identical codewords admit Pe = 1 - 1/M >= 1 - M^s
        for (double s : {-0.8, -0.3})
            CHECK(1.0 - 1.0 / m >= 1.0 - std::pow(m, s));
    }

    // positive exponent: bound increases to 1 with n
    const ExponentSolver zp(zero_plus_channel());
    const double rate = 0.7; // above C = 0.4165
    double prev = -1.0;
    for (int n : {1, 5, 10, 20, 40}) {
        const double v = zp.rate_bound(n, rate, -0.5).value;
        CHECK(v > prev);
        prev = v;
    }
    CHECK(prev > 0.9);

    CHECK_THROWS_AS(zp.rate_bound(0, 0.5, -0.5), ValidationError);
    CHECK_THROWS_AS(zp.rate_bound(2, -0.5, -0.5), ValidationError);
    CHECK_THROWS_AS(zp.rate_bound(2, 0.5, -1.0), ValidationError);
}

TEST_CASE("rate bound never exceeds the optimal two-word error") {
    Rng rng(57);
    const auto grid = default_s_grid();
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 1 + rng.uniform_int(2);
        const CqChannel ch = random_channel(2, 2, rng);
        const Codebook cb = random_codebook(2, n, 2, rng);
        const double pe_opt = helstrom_min_error(codeword_state(ch, cb.word(0)),
                                                 codeword_state(ch, cb.word(1)))
                                  .error_prob;
        const ExponentSolver solver(ch);
        const double rate = std::log(2.0) / n;
        for (double s : grid)
            CHECK(pe_opt >= solver.rate_bound(n, rate, s).value - 1e-9);
    }
}

TEST_CASE("converse_exponent: zero rate, single-state boundary, above-capacity positivity") {
    const auto grid = default_s_grid();

    Rng rng(59);
    const CqChannel ch = random_channel(2, 2, rng);
    const ScExponent at0 = sc_exponent(ch, 0.0, grid);
    CHECK(at0.exponent == doctest::Approx(0.0).epsilon(1e-12));

    // single-state channel: sup of -sR over the grid hull is at s = -0.95
    const ScExponent ss = sc_exponent(single_state_channel(), 1.0, grid);
    CHECK(ss.exponent == doctest::Approx(0.95).epsilon(1e-9));
    CHECK(ss.s_star == doctest::Approx(-0.95).epsilon(1e-9));

    const CqChannel zp = zero_plus_channel();
    const double c = 0.41649553069968745;
    const ScExponent above = sc_exponent(zp, 1.2 * c, grid);
    CHECK(above.exponent > 1e-4);
    CHECK(above.s_star < 0.0);

    CHECK_THROWS_AS(sc_exponent(zp, 0.5, {}), ValidationError);
}

TEST_CASE("exponent_curve: invariants and the BSC crossing") {
    const auto grid = default_s_grid();
    const CqChannel zp = zero_plus_channel();

    const ExponentCurve single = exponent_curve(zp, {0.0}, grid);
    CHECK(single.exponents.size() == 1);
    CHECK(single.exponents[0] == doctest::Approx(0.0).epsilon(1e-12));

    std::vector<double> rates;
    for (int k = 0; k <= 10; ++k) rates.push_back(0.08 * k);
    const ExponentCurve curve = exponent_curve(zp, rates, grid);
    for (std::size_t j = 0; j + 1 < curve.exponents.size(); ++j)
        CHECK(curve.exponents[j] <= curve.exponents[j + 1] + 1e-12);
    for (double e : curve.exponents) CHECK(e >= 0.0);

    // classical BSC(0.1), capacity ln 2 - h2(0.1) from the scalar oracle
    const CqChannel bsc = diagonal_channel({{0.9, 0.1}, {0.1, 0.9}});
    const double c = std::log(2.0) - oracles::binary_entropy(0.1);
    CHECK(c == doctest::Approx(0.36806420716849707).epsilon(1e-15));
    const ExponentCurve cross = exponent_curve(bsc, {0.9 * c, 1.25 * c}, grid);
    CHECK(cross.exponents[0] <= 1e-9);  // below capacity the family tops out at s = 0
    CHECK(cross.exponents[1] > 1e-3);   // above capacity it is strictly positive
}

TEST_CASE("min_e0 memoization is consistent") {
    const CqChannel zp = zero_plus_channel();
    const ExponentSolver solver(zp);
    const double first = solver.min_e0(-0.4);
    const double second = solver.min_e0(-0.4);
    CHECK(first == second);
    CHECK(first == doctest::Approx(min_e0_over_prior(zp, -0.4).value));
}
