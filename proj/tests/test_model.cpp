#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

using namespace lossycomp;
using ref::code_of;

namespace {

RawSpec card_raw() { return card_game_spec().to_raw(); }

}  // namespace

TEST(Spec, CardGameIsValid) {
    const ProblemSpec s = card_game_spec();
    EXPECT_EQ(s.nx(), 3u);
    EXPECT_EQ(s.ny(), 3u);
    EXPECT_EQ(s.nz(), 2u);
    EXPECT_EQ(s.nzhat(), 2u);
}

TEST(Spec, CardGameEntries) {
    const ProblemSpec s = card_game_spec();
    EXPECT_EQ(s.p(0, 0), 0.0);
    EXPECT_DOUBLE_EQ(s.p(0, 1), 1.0 / 6.0);
    EXPECT_EQ(s.f(2, 0), 1u);  // 3 > 1
    EXPECT_EQ(s.f(0, 2), 0u);
    for (std::size_t x = 0; x < 3; ++x) EXPECT_DOUBLE_EQ(s.px(x), 1.0 / 3.0);
    for (std::size_t y = 0; y < 3; ++y) EXPECT_DOUBLE_EQ(s.py(y), 1.0 / 3.0);
}

TEST(Spec, ZeroRow) {
    RawSpec raw = card_raw();
    raw.p_xy[0] = {0.0, 0.0, 0.0};
    raw.p_xy[1][0] += 1.0 / 3.0;
    EXPECT_EQ(code_of([&] { validate_spec(raw); }), Errc::ZeroMarginalRow);
}

TEST(Spec, HalvedPmf) {
    RawSpec raw = card_raw();
    for (auto& r : raw.p_xy)
        for (auto& v : r) v *= 0.5;
    EXPECT_EQ(code_of([&] { validate_spec(raw); }), Errc::PMFNotNormalized);
}

TEST(Spec, NegativeAndNonFinite) {
    RawSpec raw = card_raw();
    raw.p_xy[0][1] = -0.1;
    raw.p_xy[0][2] += 0.1 + 1.0 / 6.0;
    EXPECT_EQ(code_of([&] { validate_spec(raw); }), Errc::NegativeProbability);
    raw = card_raw();
    raw.p_xy[0][1] = std::nan("");
    EXPECT_EQ(code_of([&] { validate_spec(raw); }), Errc::NegativeProbability);
}

TEST(Spec, ShapeErrors) {
    RawSpec raw = card_raw();
    raw.p_xy.pop_back();
    EXPECT_EQ(code_of([&] { validate_spec(raw); }), Errc::DimensionMismatch);
    raw = card_raw();
    raw.f[1].push_back(0);
    EXPECT_EQ(code_of([&] { validate_spec(raw); }), Errc::DimensionMismatch);
    raw = card_raw();
    raw.d[0].pop_back();
    EXPECT_EQ(code_of([&] { validate_spec(raw); }), Errc::DimensionMismatch);
}

TEST(Spec, FunctionIndex) {
    RawSpec raw = card_raw();
    raw.f[0][1] = 2;
    EXPECT_EQ(code_of([&] { validate_spec(raw); }), Errc::IndexOutOfRange);
    raw.f[0][1] = -1;
    EXPECT_EQ(code_of([&] { validate_spec(raw); }), Errc::IndexOutOfRange);
}

TEST(Spec, Distortion) {
    RawSpec raw = card_raw();
    raw.d[0][1] = -1.0;
    EXPECT_EQ(code_of([&] { validate_spec(raw); }), Errc::InvalidDistortion);
    raw.d[0][1] = INFINITY;
    EXPECT_EQ(code_of([&] { validate_spec(raw); }), Errc::InvalidDistortion);
}

TEST(Spec, Alphabets) {
    RawSpec raw = card_raw();
    raw.x_alphabet = {"1", "1", "3"};
    EXPECT_EQ(code_of([&] { validate_spec(raw); }), Errc::InvalidAlphabet);
    raw = card_raw();
    raw.y_alphabet = {};
    EXPECT_EQ(code_of([&] { validate_spec(raw); }), Errc::InvalidAlphabet);
    raw = card_raw();
    raw.z_alphabet = {"0", ""};
    EXPECT_EQ(code_of([&] { validate_spec(raw); }), Errc::InvalidAlphabet);
}

TEST(Spec, ZeroRateDistortion) {
    EXPECT_NEAR(zero_rate_distortion(card_game_spec()), 1.0 / 6.0, 1e-15);
    EXPECT_NEAR(zero_rate_distortion(shannon_binary_spec()), 0.5, 1e-15);
    EXPECT_NEAR(zero_rate_distortion(wyner_ziv_identity_spec(0.25)), 0.25, 1e-15);

    RawSpec raw = card_raw();
    raw.d = {{0.0, 0.0}, {0.0, 0.0}};
    EXPECT_EQ(zero_rate_distortion(validate_spec(raw)), 0.0);
}

TEST(Spec, BestConstantRecovery) {
    // y=1: x in {2,3} gives f=1; y=3: f=0; y=2 is a tie broken toward 0
    EXPECT_EQ(best_constant_recovery(card_game_spec()), (std::vector<std::size_t>{1, 0, 0}));
    EXPECT_EQ(best_constant_recovery(wyner_ziv_identity_spec()), (std::vector<std::size_t>{0, 1}));
}

TEST(Spec, Builtins) {
    for (const auto& n : builtin_names()) EXPECT_NO_THROW(builtin_spec(n));
    EXPECT_EQ(code_of([] { builtin_spec("nope"); }), Errc::UnknownBuiltin);
    EXPECT_EQ(shannon_binary_spec(0.3).p(1, 0), 0.3);
}

TEST(Spec, WithDistortion) {
    const ProblemSpec s = card_game_spec();
    Matrix<double> d(2, 2, 0.0);
    const ProblemSpec t = with_distortion(s, d);
    EXPECT_EQ(t.pmf(), s.pmf());
    EXPECT_EQ(t.max_distortion(), 0.0);
    EXPECT_EQ(code_of([&] { with_distortion(s, Matrix<double>(3, 2, 0.0)); }), Errc::DimensionMismatch);
}

TEST(SpecIo, RoundTrip) {
    for (const auto& n : builtin_names()) {
        const ProblemSpec s = builtin_spec(n);
        EXPECT_EQ(parse_spec(serialize_spec(s)), s) << n;
    }
}

TEST(SpecIo, ParseErrors) {
    EXPECT_EQ(code_of([] { parse_spec("{"); }), Errc::ParseError);
    EXPECT_EQ(code_of([] { parse_spec("[]"); }), Errc::ParseError);
    EXPECT_EQ(code_of([] { parse_spec(R"({"x_alphabet": ["a"]})"); }), Errc::ParseError);
    EXPECT_EQ(code_of([] {
                  parse_spec(R"({"x_alphabet":["a"],"y_alphabet":["b"],"z_alphabet":["0"],"zhat_alphabet":["0"],
                                 "p_xy":[["x"]],"f":[[0]],"d":[[0]]})");
              }),
              Errc::ParseError);
    EXPECT_EQ(code_of([] { load_spec("/nonexistent/spec.json"); }), Errc::ParseError);
}

TEST(SpecIo, ValidationThroughParse) {
    const auto text = R"({"x_alphabet":["a"],"y_alphabet":["b"],"z_alphabet":["0"],"zhat_alphabet":["0"],
                          "p_xy":[[0.5]],"f":[[0]],"d":[[0]]})";
    EXPECT_EQ(code_of([&] { parse_spec(text); }), Errc::PMFNotNormalized);
}

TEST(Errors, ExitCodes) {
    EXPECT_EQ(exit_code_for(Errc::PMFNotNormalized), 2);
    EXPECT_EQ(exit_code_for(Errc::ParseError), 2);
    EXPECT_EQ(exit_code_for(Errc::NotConverged), 3);
    EXPECT_EQ(exit_code_for(Errc::NumericalUnderflow), 3);
    EXPECT_EQ(exit_code_for(Errc::CheckFailed), 4);
    const Error e(Errc::Infeasible, "x");
    EXPECT_EQ(e.code(), Errc::Infeasible);
    EXPECT_NE(std::string(e.what()).find("Infeasible"), std::string::npos);
}

TEST(Alphabet, IndexOf) {
    const Alphabet a({"x", "y"});
    EXPECT_EQ(a.index_of("y"), 1u);
    EXPECT_EQ(code_of([&] { a.index_of("z"); }), Errc::IndexOutOfRange);
    EXPECT_EQ(Alphabet::numbered(3, 1).labels(), (std::vector<std::string>{"1", "2", "3"}));
}
