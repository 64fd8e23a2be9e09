#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "support.hpp"

using namespace lossycomp;
using ref::code_of;

namespace {

AuxChannel lifted_optimum(double D) {
    const ProblemSpec s = card_game_spec();
    const RDPoint pt = solve_at_distortion(s, D, SolverConfig{});
    return lift_to_multihyperedge(s, pt.channel, pt.decoder);
}

}  // namespace

TEST(Simulate, CardGameWithinThreeSigma) {
    const ProblemSpec s = card_game_spec();
    const auto rep = simulate_scheme(s, lifted_optimum(1.0 / 12), 1000000, kDefaultSeed);
    ASSERT_TRUE(rep.std_error.has_value());
    EXPECT_LE(std::abs(rep.empirical_distortion - 1.0 / 12), 3.0 * *rep.std_error);
    EXPECT_NEAR(rep.target_distortion, 1.0 / 12, 1e-9);
    for (std::size_t u = 0; u < rep.atom_marginal.size(); ++u)
        EXPECT_NEAR(rep.per_atom_frequency[u], rep.atom_marginal[u], 5e-3);
}

TEST(Simulate, GammaChannelIsExact) {
    const ProblemSpec s = card_game_spec();
    const RDPoint pt = solve_lagrangian(s, SolverConfig{}, GammaDAlphabet{});
    for (std::uint64_t n : {1ull, 1000ull, 200000ull}) EXPECT_EQ(simulate_scheme(s, pt.channel, n, 9).empirical_distortion, 0.0);
}

TEST(Simulate, SingleSample) {
    const ProblemSpec s = card_game_spec();
    const auto rep = simulate_scheme(s, lifted_optimum(1.0 / 12), 1, 3);
    EXPECT_FALSE(rep.std_error.has_value());
    EXPECT_TRUE(rep.empirical_distortion == 0.0 || rep.empirical_distortion == 1.0);
    EXPECT_EQ(rep.n, 1u);
}

TEST(Simulate, DeterministicAcrossThreads) {
    const ProblemSpec s = card_game_spec();
    const AuxChannel ch = lifted_optimum(0.05);
    const auto a = simulate_scheme(s, ch, 300000, 77, 1);
    const auto b = simulate_scheme(s, ch, 300000, 77, 1);
    const auto c = simulate_scheme(s, ch, 300000, 77, 4);
    EXPECT_EQ(a.empirical_distortion, b.empirical_distortion);
    EXPECT_EQ(a.empirical_distortion, c.empirical_distortion);
    EXPECT_EQ(a.per_atom_count, c.per_atom_count);
    EXPECT_EQ(*a.std_error, *c.std_error);
    const auto d = simulate_scheme(s, ch, 300000, 78, 1);
    EXPECT_NE(a.empirical_distortion, d.empirical_distortion);
}

TEST(Simulate, Unbiased) {
    const ProblemSpec s = card_game_spec();
    const AuxChannel ch = lifted_optimum(0.1);
    const double truth = expected_distortion(s, ch, DecoderMap::from_recoveries(ch));
    double sum = 0.0, se = 0.0;
    const int seeds = 30;
    for (int i = 0; i < seeds; ++i) {
        const auto rep = simulate_scheme(s, ch, 100000, 1000 + i);
        sum += rep.empirical_distortion;
        se += *rep.std_error;
    }
    // the mean of 30 runs has standard error about se_single / sqrt(30)
    EXPECT_LE(std::abs(sum / seeds - truth), 4.0 * (se / seeds) / std::sqrt(double(seeds)));
}

TEST(Simulate, Trace) {
    const ProblemSpec s = card_game_spec();
    std::ostringstream os;
    simulate_scheme(s, lifted_optimum(0.05), 50, 5, 4, &os);
    std::istringstream in(os.str());
    int lines = 0;
    for (std::string line; std::getline(in, line);) {
        ++lines;
        EXPECT_EQ(std::count(line.begin(), line.end(), ','), 4);
    }
    EXPECT_EQ(lines, 50);
}

TEST(Simulate, Errors) {
    const ProblemSpec s = card_game_spec();
    const AuxChannel bare = ref::card_game_family(0.5, 0.5, 0.5);
    EXPECT_EQ(code_of([&] { simulate_scheme(s, bare, 10); }), Errc::UnannotatedChannel);
    EXPECT_EQ(code_of([&] { simulate_scheme(s, lifted_optimum(0.05), 0); }), Errc::DomainError);

    // atom 0 claims subset {1} but is used for x = 2
    Matrix<double> c(2, 3, 0.0);
    c(0, 0) = c(0, 1) = 1.0;
    c(1, 2) = 1.0;
    const AuxChannel bad(c, {AtomLabel{Hyperedge{0}, CandidateRecovery{{1, 0, 0}}},
                             AtomLabel{Hyperedge{2}, CandidateRecovery{{1, 1, 0}}}});
    EXPECT_EQ(code_of([&] { simulate_scheme(s, bad, 1000); }), Errc::MembershipViolation);
}
