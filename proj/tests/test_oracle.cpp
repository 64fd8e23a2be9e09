#include <gtest/gtest.h>

#include "support.hpp"

using namespace lossycomp;
using ref::code_of;

namespace {

OracleConfig quick() {
    OracleConfig c;
    c.random_restarts = 64;
    return c;
}

}  // namespace

TEST(Oracle, CardGame) {
    const ProblemSpec s = card_game_spec();
    EXPECT_NEAR(brute_force_rd(s, 1.0 / 12, quick()), 0.095437, 1e-3);
    EXPECT_NEAR(brute_force_rd(s, 1.0 / 12, quick()), ref::card_game(1.0 / 12), 1e-6);
    EXPECT_NEAR(brute_force_rd(s, 0.0, quick()), 0.540852, 1e-3);
}

TEST(Oracle, ZeroAboveThreshold) {
    Rng rng(47);
    for (int i = 0; i < 10; ++i) {
        const ProblemSpec s = ref::random_spec(rng);
        EXPECT_EQ(brute_force_rd(s, zero_rate_distortion(s), quick()), 0.0);
        EXPECT_EQ(brute_force_rd(s, zero_rate_distortion(s) + 1.0, quick()), 0.0);
    }
}

TEST(Oracle, Shannon) {
    EXPECT_NEAR(brute_force_rd(shannon_binary_spec(), 0.1, quick()), ref::shannon_binary(0.1), 1e-6);
}

TEST(Oracle, Caps) {
    EXPECT_EQ(code_of([] {
                  OracleConfig c;
                  c.max_alphabet_product = 16;
                  brute_force_rd(card_game_spec(), 0.05, c);
              }),
              Errc::InstanceTooLarge);
    EXPECT_EQ(code_of([] {
                  OracleConfig c;
                  c.random_restarts = 0;
                  brute_force_rd(card_game_spec(), 0.05, c);
              }),
              Errc::InvalidConfig);
    EXPECT_EQ(code_of([] { brute_force_rd(card_game_spec(), -1.0); }), Errc::DomainError);
}

TEST(Oracle, BelowFloor) {
    RawSpec raw = shannon_binary_spec().to_raw();
    raw.d = {{0.1, 1.0}, {1.0, 0.2}};
    const ProblemSpec s = validate_spec(raw);
    EXPECT_EQ(code_of([&] { brute_force_rd(s, 0.1, quick()); }), Errc::Infeasible);
    EXPECT_NEAR(brute_force_rd(s, 0.15, quick()), 1.0, 1e-6);
}

TEST(Verify, SolverPointPasses) {
    const ProblemSpec s = card_game_spec();
    const RDPoint pt = solve_at_distortion(s, 1.0 / 24, SolverConfig{});
    const VerificationReport rep = verify_point(s, pt, quick());
    EXPECT_TRUE(rep.pass);
    EXPECT_LT(std::abs(rep.gap), 1e-3);
    EXPECT_LT(rep.rate_residual, 1e-12);
}

TEST(Verify, RateZeroPasses) {
    const ProblemSpec s = card_game_spec();
    const VerificationReport rep = verify_point(s, solve_at_distortion(s, 1.0 / 6, SolverConfig{}), quick());
    EXPECT_TRUE(rep.pass);
    EXPECT_EQ(rep.oracle_rate, 0.0);
}

TEST(Verify, PerturbedChannelFails) {
    const ProblemSpec s = card_game_spec();
    RDPoint pt = solve_at_distortion(s, 1.0 / 24, SolverConfig{});
    Matrix<double> c = pt.channel.cond();
    Rng rng(53);
    for (std::size_t x = 0; x < c.cols(); ++x) {
        double z = 0.0;
        for (std::size_t u = 0; u < c.rows(); ++u) z += (c(u, x) += 0.1 * rng.uniform());
        for (std::size_t u = 0; u < c.rows(); ++u) c(u, x) /= z;
    }
    pt.channel = AuxChannel(c, pt.channel.labels());
    const VerificationReport rep = verify_point(s, pt, quick());
    EXPECT_FALSE(rep.pass);
    EXPECT_GT(rep.gap, 1e-3);
}

TEST(Oracle, AgreesWithSolverOnRandomSpecs) {
    Rng rng(59);
    for (int i = 0; i < 10; ++i) {
        const ProblemSpec s = ref::random_spec(rng);
        const double D = zero_rate_distortion(s) * (0.1 + 0.8 * rng.uniform());
        EXPECT_NEAR(solve_at_distortion(s, D, SolverConfig{}).rate, brute_force_rd(s, D, quick()), 1e-4) << i;
    }
}
