#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "cqsc/channel.hpp"
#include "cqsc/rng.hpp"
#include "cqsc/verify.hpp"

using namespace cqsc;

namespace {

CqChannel diagonal_channel(const std::vector<std::vector<double>>& rows) {
    std::vector<DensityOperator> states;
    for (const auto& r : rows) states.emplace_back(HermitianMatrix::diagonal(r));
    return CqChannel(std::move(states));
}

} // namespace

TEST_CASE("DensityOperator validates trace and positivity") {
    CHECK_THROWS_AS(DensityOperator(HermitianMatrix::diagonal({0.7, 0.7})), ValidationError);
    CHECK_THROWS_AS(DensityOperator(HermitianMatrix::diagonal({1.5, -0.5})), ValidationError);
    const DensityOperator rho(HermitianMatrix::diagonal({0.5, 0.5}));
    CHECK_FALSE(rho.is_pure());
    CHECK(DensityOperator(HermitianMatrix::diagonal({1.0, 0.0})).is_pure());
}

TEST_CASE("Prior renormalizes and rejects negatives") {
    const Prior p(std::vector<double>{2.0, 6.0});
    CHECK(p[0] == doctest::Approx(0.25));
    CHECK(p[1] == doctest::Approx(0.75));
    CHECK_THROWS_AS(Prior(std::vector<double>{0.5, -0.1}), ValidationError);
    CHECK_THROWS_AS(Prior(std::vector<double>{}), ValidationError);
    const Prior pm = Prior::point_mass(3, 2);
    CHECK(pm[1] == 1.0);
    CHECK(pm[0] == 0.0);
}

TEST_CASE("CqChannel and Codebook validation") {
    CHECK_THROWS_AS(CqChannel({}), ValidationError);
    CHECK_THROWS_AS(Codebook(2, {{1, 2}, {1}}), ValidationError);
    CHECK_THROWS_AS(Codebook(1, {{0}}), ValidationError);
    const Codebook cb(2, {{1, 2}, {2, 2}});
    CHECK(cb.size() == 2);
    CHECK(cb.rate() == doctest::Approx(std::log(2.0) / 2.0));
}

TEST_CASE("Povm validation: PSD and resolution of identity") {
    const HermitianMatrix half = HermitianMatrix::identity(2).scaled(0.5);
    CHECK_NOTHROW(Povm({half, half}));
    CHECK_THROWS_AS(Povm({half}), ValidationError); // does not sum to I
    CHECK_THROWS_AS(Povm({HermitianMatrix::diagonal({1.5, 1.0}),
                          HermitianMatrix::diagonal({-0.5, 0.0})}),
                    ValidationError); // not PSD
}

TEST_CASE("codeword_state: single letters, products, traces") {
    Rng rng(5);
    const CqChannel ch = random_channel(2, 2, rng);

    // n = 1 is the identity extension
    const DensityOperator s1 = codeword_state(ch, {2});
    CHECK((s1.mat() - ch.state(1).mat()).max_abs_entry() == 0.0);

    // commuting diagonal states: entries are products of per-letter entries
    const CqChannel diag = diagonal_channel({{0.9, 0.1}, {0.2, 0.8}});
    const DensityOperator s2 = codeword_state(diag, {1, 2});
    CHECK(s2.mat().at(0, 0).real() == doctest::Approx(0.9 * 0.2));
    CHECK(s2.mat().at(3, 3).real() == doctest::Approx(0.1 * 0.8));

    // unit trace for random words
    for (int t = 0; t < 5; ++t) {
        const Codebook cb = random_codebook(2, 2, 1, rng);
        CHECK(codeword_state(ch, cb.word(0)).mat().trace() == doctest::Approx(1.0).epsilon(1e-12));
    }

    // concatenation = tensor of the parts
    const DensityOperator whole = codeword_state(ch, {1, 2});
    const HermitianMatrix parts =
        tensor(codeword_state(ch, {1}).mat(), codeword_state(ch, {2}).mat());
    CHECK((whole.mat() - parts).max_abs_entry() == 0.0);

    CHECK_THROWS_AS(codeword_state(ch, {3}), ValidationError);
}

TEST_CASE("average_state: point mass, symmetry, trace") {
    Rng rng(6);
    const CqChannel ch = random_channel(3, 2, rng);
    const DensityOperator s = average_state(ch, Prior::point_mass(3, 1));
    CHECK((s.mat() - ch.state(0).mat()).max_abs_entry() == 0.0);

    const CqChannel pair = diagonal_channel({{1.0, 0.0}, {0.0, 1.0}});
    const DensityOperator mix = average_state(pair, Prior::uniform(2));
    CHECK(mix.mat().at(0, 0).real() == doctest::Approx(0.5));
    CHECK(mix.mat().at(1, 1).real() == doctest::Approx(0.5));

    CHECK(average_state(ch, random_interior_prior(3, rng)).mat().trace() ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(average_state(ch, Prior::uniform(2)), ValidationError);
}

TEST_CASE("average_error: trivial decoders") {
    Rng rng(9);
    const CqChannel ch = random_channel(2, 2, rng);

    // M = 1 with X_1 = I never errs
    const Codebook one(1, {{1}});
    const Povm accept_all({HermitianMatrix(2), HermitianMatrix::identity(2)});
    CHECK(average_error(ch, one, accept_all) == doctest::Approx(0.0));

    // orthogonal pure codewords with the matching projective decoder
    const CqChannel pair = diagonal_channel({{1.0, 0.0}, {0.0, 1.0}});
    const Codebook two(1, {{1}, {2}});
    const Povm projective({HermitianMatrix(2), HermitianMatrix::diagonal({1.0, 0.0}),
                           HermitianMatrix::diagonal({0.0, 1.0})});
    CHECK(average_error(pair, two, projective) == doctest::Approx(0.0));

    // X_k = I/(M+1) for every outcome: Pe = 1 - 1/(M+1)
    const int m = 3;
    const Codebook three(1, {{1}, {2}, {1}});
    std::vector<HermitianMatrix> uniform(m + 1, HermitianMatrix::identity(2).scaled(1.0 / (m + 1)));
    CHECK(average_error(ch, three, Povm(uniform)) == doctest::Approx(1.0 - 1.0 / (m + 1)));

    CHECK_THROWS_AS(average_error(ch, three, projective), ValidationError); // wrong count
}

TEST_CASE("average_error stays in [0,1] and is permutation invariant") {
    Rng rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        const int d = 2 + rng.uniform_int(2);
        const int m = 1 + rng.uniform_int(3);
        const CqChannel ch = random_channel(2, d, rng);
        const Codebook cb = random_codebook(2, 1, m, rng);
        const Povm povm = random_povm(d, m, rng.next_u64());
        const double pe = average_error(ch, cb, povm);
        CHECK(pe >= -1e-12);
        CHECK(pe <= 1.0 + 1e-12);

        // permute codewords together with their POVM elements
        std::vector<int> perm(m);
        for (int i = 0; i < m; ++i) perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), std::mt19937_64(rng.next_u64()));
        std::vector<std::vector<int>> words(m);
        std::vector<HermitianMatrix> elements{povm.element(0)};
        for (int i = 0; i < m; ++i) {
            words[i] = cb.word(perm[i]);
            elements.push_back(povm.element(perm[i] + 1));
        }
        const double pe2 = average_error(ch, Codebook(1, words), Povm(elements));
        CHECK(pe2 == doctest::Approx(pe).epsilon(1e-12));
    }
}
