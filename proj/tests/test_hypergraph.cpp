#include <gtest/gtest.h>

#include "support.hpp"

using namespace lossycomp;
using ref::code_of;

namespace {

Hyperedge edge(std::initializer_list<std::size_t> xs) {
    std::uint64_t m = 0;
    for (auto x : xs) m |= std::uint64_t{1} << x;
    return Hyperedge(m);
}

}  // namespace

TEST(Hyperedge, Basics) {
    EXPECT_EQ(code_of([] { Hyperedge(std::uint64_t{0}); }), Errc::DomainError);
    const Hyperedge w = edge({0, 2});
    EXPECT_EQ(w.size(), 2u);
    EXPECT_TRUE(w.contains(2));
    EXPECT_FALSE(w.contains(1));
    EXPECT_TRUE(edge({0}).is_strict_subset_of(w));
    EXPECT_TRUE(w.is_subset_of(w));
    EXPECT_FALSE(w.is_strict_subset_of(w));
    EXPECT_EQ(Hyperedge::all(3).members(), (std::vector<std::size_t>{0, 1, 2}));
    EXPECT_LT(edge({2}), edge({0, 1}));  // size first
    EXPECT_LT(edge({0, 2}), edge({1, 2}));
    EXPECT_EQ(format_hyperedge(card_game_spec().x_alphabet(), edge({0, 1})), "{1, 2}");
}

TEST(Ball, Hamming) {
    const ProblemSpec s = shannon_binary_spec();
    EXPECT_EQ(distortion_ball(s, 1, 0.0), (std::vector<std::size_t>{1}));
    EXPECT_EQ(distortion_ball(s, 1, 1.0), (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(distortion_ball(card_game_spec(), 0, 0.0), (std::vector<std::size_t>{0}));
    EXPECT_EQ(code_of([&] { distortion_ball(s, 2, 0.0); }), Errc::IndexOutOfRange);
    EXPECT_EQ(code_of([&] { distortion_ball(s, 0, -1.0); }), Errc::DomainError);
}

TEST(InducedValues, CardGame) {
    const ProblemSpec s = card_game_spec();
    EXPECT_EQ(induced_values(s, edge({1, 2}), 0), (std::vector<std::size_t>{1}));
    EXPECT_EQ(induced_values(s, edge({0, 2}), 1), (std::vector<std::size_t>{0, 1}));
    EXPECT_TRUE(induced_values(s, edge({0}), 0).empty());
}

TEST(GammaD, CardGame) {
    const ProblemSpec s = card_game_spec();
    const auto fam = enumerate_gamma_d(s);
    const std::set<std::vector<std::size_t>> expected{{0}, {1}, {2}, {0, 1}, {1, 2}};
    EXPECT_EQ(ref::as_sets(fam), expected);
    EXPECT_EQ(ref::gamma_d(s), expected);
    EXPECT_FALSE(in_gamma_d(s, Hyperedge::all(3)));
    EXPECT_FALSE(in_gamma_d(s, edge({0, 2})));
}

TEST(GammaD, MatchesDefinitionOnRandomSpecs) {
    Rng rng(5);
    for (int i = 0; i < 300; ++i) {
        const ProblemSpec s = ref::random_spec(rng, 6, 3, 3);
        const auto fam = enumerate_gamma_d(s);
        EXPECT_EQ(ref::as_sets(fam), ref::gamma_d(s));
        for (std::size_t x = 0; x < s.nx(); ++x) EXPECT_TRUE(fam.contains(edge({x})));
        // downward closed
        for (const auto& w : fam)
            for (std::size_t x : w.members()) {
                if (w.size() == 1) continue;
                EXPECT_TRUE(fam.contains(Hyperedge(w.mask() & ~(std::uint64_t{1} << x))));
            }
    }
}

TEST(GammaD, Cap) {
    RawSpec raw;
    raw.x_alphabet = Alphabet::numbered(5).labels();
    raw.y_alphabet = {"y"};
    raw.z_alphabet = raw.zhat_alphabet = {"0"};
    raw.p_xy.assign(5, {0.2});
    raw.f.assign(5, {0});
    raw.d = {{0.0}};
    const ProblemSpec s = validate_spec(raw);
    EXPECT_EQ(enumerate_gamma_d(s).size(), 31u);
    EXPECT_EQ(code_of([&] { enumerate_gamma_d(s, EnumerationLimits{4, 4096}); }), Errc::AlphabetTooLarge);
}

TEST(Epsilon, Threshold) {
    const ProblemSpec s = card_game_spec();
    EXPECT_EQ(epsilon_distortion(s, 0.0), s.dist());
    EXPECT_EQ(epsilon_distortion(s, 1.0), Matrix<double>(2, 2, 0.0));

    RawSpec raw = shannon_binary_spec().to_raw();
    raw.d = {{0.0, 0.3}, {0.7, 0.0}};
    const Matrix<double> e = epsilon_distortion(validate_spec(raw), 0.5);
    EXPECT_EQ(e(0, 0), 0.0);
    EXPECT_EQ(e(0, 1), 0.0);
    EXPECT_EQ(e(1, 0), 1.0);
    EXPECT_EQ(e(1, 1), 0.0);
    EXPECT_EQ(code_of([&] { epsilon_distortion(s, -1.0); }), Errc::DomainError);
}

TEST(Epsilon, LargeEpsilonAdmitsEverySubset) {
    const ProblemSpec s = card_game_spec();
    EXPECT_EQ(enumerate_gamma_d(with_distortion(s, epsilon_distortion(s, 5.0))).size(), 7u);
}

TEST(Recoveries, Enumeration) {
    const auto r = enumerate_candidate_recoveries(card_game_spec());
    ASSERT_EQ(r.size(), 8u);
    EXPECT_EQ(r.front().per_y, (std::vector<std::size_t>{0, 0, 0}));
    EXPECT_EQ(r[1].per_y, (std::vector<std::size_t>{0, 0, 1}));
    EXPECT_EQ(r.back().per_y, (std::vector<std::size_t>{1, 1, 1}));
    EXPECT_TRUE(std::is_sorted(r.begin(), r.end()));

    RawSpec raw = card_game_spec().to_raw();
    raw.zhat_alphabet = {"0"};
    raw.d = {{0.0}, {1.0}};
    EXPECT_EQ(enumerate_candidate_recoveries(validate_spec(raw)).size(), 1u);

    raw = shannon_binary_spec().to_raw();
    raw.zhat_alphabet = {"0", "1", "e"};
    raw.d = {{0.0, 1.0, 0.5}, {1.0, 0.0, 0.5}};
    EXPECT_EQ(enumerate_candidate_recoveries(validate_spec(raw)).size(), 3u);
}

TEST(Recoveries, Cap) {
    EXPECT_EQ(code_of([] { enumerate_candidate_recoveries(card_game_spec(), EnumerationLimits{20, 7}); }),
              Errc::RecoverySpaceTooLarge);
    EXPECT_NO_THROW(enumerate_candidate_recoveries(card_game_spec(), EnumerationLimits{20, 8}));
}

TEST(Maximal, Members) {
    const auto fam = enumerate_gamma_d(card_game_spec());
    EXPECT_EQ(ref::as_sets(maximal_members(fam)), (std::set<std::vector<std::size_t>>{{0, 1}, {1, 2}}));
    const HyperedgeFamily singles{edge({0}), edge({1}), edge({2})};
    EXPECT_EQ(maximal_members(singles), singles);
    EXPECT_EQ(maximal_members(HyperedgeFamily{edge({0}), edge({0, 1})}), HyperedgeFamily{edge({0, 1})});
}

TEST(ZeroRecovery, CardGame) {
    const ProblemSpec s = card_game_spec();
    EXPECT_EQ(zero_distortion_recovery(s, edge({1, 2})).per_y, (std::vector<std::size_t>{1, 1, 0}));
    EXPECT_EQ(zero_distortion_recovery(s, edge({0, 1})).per_y, (std::vector<std::size_t>{1, 0, 0}));
    EXPECT_EQ(code_of([&] { zero_distortion_recovery(s, edge({0, 2})); }), Errc::NotInGammaD);
}
